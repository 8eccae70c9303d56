#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "frobtoric/errors.hpp"
#include "frobtoric/lattice.hpp"
#include "frobtoric/witt2.hpp"

namespace frobtoric {

// An element of F_p carrying its prime, so that semigroup-ring code can be
// written once for F_p and W2(F_p) coefficients.
class FpCoeff {
 public:
  FpCoeff() = default;
  FpCoeff(std::uint32_t p, std::int64_t v) : p_(p), v_(PrimeField(p).reduce(v)) {}

  static FpCoeff zero(std::uint32_t p) { return {p, 0}; }
  static FpCoeff one(std::uint32_t p) { return {p, 1}; }

  std::uint32_t prime() const { return p_; }
  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend FpCoeff operator+(const FpCoeff& a, const FpCoeff& b) { return {a.p_, std::int64_t{a.v_} + b.v_}; }
  friend FpCoeff operator-(const FpCoeff& a, const FpCoeff& b) { return {a.p_, std::int64_t{a.v_} - b.v_}; }
  friend FpCoeff operator*(const FpCoeff& a, const FpCoeff& b) {
    return {a.p_, static_cast<std::int64_t>(std::uint64_t{a.v_} * b.v_ % a.p_)};
  }
  friend bool operator==(const FpCoeff&, const FpCoeff&) = default;

 private:
  std::uint32_t p_ = 2;
  std::uint32_t v_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FpCoeff& a);

// The domain of a semigroup-ring element: k[S_sigma] for a cone sigma in N,
// or the Laurent ring of the torus when no cone is given.
class Chart {
 public:
  Chart() = default;
  explicit Chart(Cone sigma) : cone_(std::move(sigma)) {}
  static Chart torus() { return Chart(); }

  bool is_torus() const { return !cone_.has_value(); }
  const Cone& cone() const { return *cone_; }
  // u in S_sigma, i.e. <u, v> >= 0 for every generator v of sigma.
  bool admits(const LatticePoint& u) const;

  friend bool operator==(const Chart& a, const Chart& b);
  std::string str() const;

 private:
  std::optional<Cone> cone_;
};

// sum_u c_u x^u, finitely supported, with every u in the chart semigroup.
template <class Coeff>
class MonomialElement {
 public:
  using Terms = std::map<LatticePoint, Coeff>;

  MonomialElement(Chart chart, std::size_t rank, std::uint32_t p) : chart_(std::move(chart)), rank_(rank), p_(p) {}

  static MonomialElement monomial(Chart chart, std::size_t rank, const Coeff& c, const LatticePoint& u) {
    MonomialElement e(std::move(chart), rank, c.prime());
    e.add_term(u, c);
    return e;
  }

  const Chart& chart() const { return chart_; }
  std::size_t rank() const { return rank_; }
  std::uint32_t prime() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds c x^u, enforcing chart membership.
  void add_term(const LatticePoint& u, const Coeff& c) {
    if (u.rank() != rank_) throw InputError("exponent rank mismatch");
    if (!chart_.admits(u)) throw ChartMembershipError("x^" + u.str() + " is not in the semigroup ring of " + chart_.str());
    if (c.prime() != p_) throw PrimeMismatch("coefficient over a different prime");
    auto it = terms_.find(u);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(u, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  MonomialElement operator+(const MonomialElement& o) const {
    check_compatible(o);
    MonomialElement r = *this;
    for (const auto& [u, c] : o.terms_) r.add_term(u, c);
    return r;
  }

  MonomialElement operator-(const MonomialElement& o) const {
    check_compatible(o);
    MonomialElement r = *this;
    for (const auto& [u, c] : o.terms_) r.add_term(u, Coeff::zero(p_) - c);
    return r;
  }

  MonomialElement operator*(const MonomialElement& o) const {
    check_compatible(o);
    MonomialElement r(chart_, rank_, p_);
    for (const auto& [u, a] : terms_)
      for (const auto& [v, b] : o.terms_) r.add_term(u + v, a * b);
    return r;
  }

  MonomialElement scaled(const Coeff& c) const {
    MonomialElement r(chart_, rank_, p_);
    for (const auto& [u, a] : terms_) r.add_term(u, c * a);
    return r;
  }

  MonomialElement pow(std::uint64_t e) const {
    MonomialElement r = monomial(chart_, rank_, Coeff::one(p_), LatticePoint(rank_));
    MonomialElement b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Same terms, declared on another chart (membership re-checked).
  MonomialElement on_chart(Chart other) const {
    MonomialElement r(std::move(other), rank_, p_);
    for (const auto& [u, c] : terms_) r.add_term(u, c);
    return r;
  }

  friend bool operator==(const MonomialElement& a, const MonomialElement& b) {
    return a.chart_ == b.chart_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const MonomialElement& o) const {
    if (!(chart_ == o.chart_)) throw ChartMismatch("elements on " + chart_.str() + " and " + o.chart_.str());
    if (rank_ != o.rank_ || p_ != o.p_) throw PrimeMismatch("elements over different rings");
  }

  Chart chart_;
  std::size_t rank_;
  std::uint32_t p_;
  Terms terms_;
};

using FpElement = MonomialElement<FpCoeff>;
using W2Element = MonomialElement<WittPair>;

std::string to_string(const FpElement& e);
std::string to_string(const W2Element& e);

// sigma -> tau for a face tau of sigma, with u in S_sigma cutting out tau.
struct ChartTransition {
  Cone source;
  Cone target;
  LatticePoint separator;
};

// Builds the transition and checks tau = sigma ∩ u^perp.  Throws InputError
// when tau is not a face of sigma.
ChartTransition make_transition(const Cone& sigma, const Cone& tau);

// Inclusion k[S_sigma] -> k[S_tau] = k[S_sigma]_u.
template <class Coeff>
MonomialElement<Coeff> face_localize(const MonomialElement<Coeff>& e, const ChartTransition& t) {
  if (e.chart().is_torus() || !(e.chart().cone() == t.source))
    throw ChartMismatch("transition source does not match the element's chart");
  return e.on_chart(Chart(t.target));
}

// sum c_u x^u -> sum F(c_u) x^{p u}.
W2Element frobenius_lift_chart(const W2Element& e);

// Coefficientwise reduction W2 -> F_p.
FpElement reduce_mod_p(const W2Element& e);

// Lift of an F_p element with coefficients (c, 0).
W2Element teichmuller_lift(const FpElement& e);

// The unique phi(b) with F(b) = b^p + p * phi(b).
FpElement phi(const W2Element& b);

// Random element with at most `terms` monomials drawn from sums of the
// given semigroup generators.
W2Element random_w2_element(const Chart& chart, std::size_t rank, std::uint32_t p,
                            const std::vector<LatticePoint>& generators, std::size_t terms, std::mt19937_64& rng);
FpElement random_fp_element(const Chart& chart, std::size_t rank, std::uint32_t p,
                            const std::vector<LatticePoint>& generators, std::size_t terms, std::mt19937_64& rng);

struct GlueCheck {
  RaySet sigma;
  RaySet tau;
  std::size_t generators_checked = 0;
  std::size_t random_checked = 0;
  bool localization_ok = false;  // every Hilbert basis element of S_tau is s - k u with s in S_sigma
  bool commutes = false;         // F∘incl = incl∘F on everything checked
  bool reduces_to_frobenius = false;
  bool passed() const { return localization_ok && commutes && reduces_to_frobenius; }
};

struct GlueReport {
  std::uint32_t p = 0;
  std::vector<GlueCheck> checks;
  bool passed() const;
};

GlueReport verify_glue_compat(const Fan& f, std::uint32_t p, std::uint64_t seed = 0x5eed,
                              std::size_t random_samples = 4);

}  // namespace frobtoric
