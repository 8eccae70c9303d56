#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "frobtoric/fp_linalg.hpp"
#include "frobtoric/lattice.hpp"

namespace frobtoric {

// Element of Λ^p(F_p^n) in the basis dlog_I; key is the bitmask of I.
using Multivector = std::map<std::uint32_t, std::uint32_t>;

namespace mv {

// Sign of dlog_I ∧ dlog_J relative to dlog_{I∪J}; 0 when I ∩ J ≠ ∅.
int wedge_sign(std::uint32_t i, std::uint32_t j);

Multivector wedge(const Multivector& a, const Multivector& b, const PrimeField& f);
void axpy(Multivector& acc, std::uint32_t scale, const Multivector& x, const PrimeField& f);

// Interior product with a functional lambda (given on the standard basis).
Multivector contract(const std::vector<std::uint32_t>& lambda, const Multivector& a, const PrimeField& f);

// The 1-form sum_i u_i dlog_i with coefficients mod p.
Multivector dlog_of(const LatticePoint& u, const PrimeField& f);

// All masks of popcount `degree` below 2^rank, ascending.
std::vector<std::uint32_t> basis_masks(std::size_t rank, int degree);

}  // namespace mv

// An M-graded differential form of fixed degree on the dense torus:
// sum_u x^u ω_u with ω_u ∈ Λ^degree(M ⊗ F_p) written in the dlog frame.
class TorusForm {
 public:
  TorusForm(std::size_t rank, int degree, std::uint32_t p);

  std::size_t rank() const { return rank_; }
  int degree() const { return degree_; }
  const PrimeField& field() const { return field_; }
  std::uint32_t prime() const { return field_.p(); }
  const std::map<LatticePoint, Multivector>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const LatticePoint& u, std::uint32_t mask, std::int64_t c);
  void add_term(const LatticePoint& u, const Multivector& w);

  TorusForm operator+(const TorusForm& o) const;
  TorusForm operator-(const TorusForm& o) const;
  TorusForm scaled(std::int64_t c) const;

  friend bool operator==(const TorusForm& a, const TorusForm& b) {
    return a.rank_ == b.rank_ && a.degree_ == b.degree_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  void check_compatible(const TorusForm& o) const;

  std::size_t rank_;
  int degree_;
  PrimeField field_;
  std::map<LatticePoint, Multivector> terms_;
};

// Grade-preserving de Rham differential: x^u ω ↦ x^u u♭ ∧ ω.
TorusForm d(const TorusForm& w);
TorusForm wedge(const TorusForm& a, const TorusForm& b);

// A chart of Ω̃^p ⊗ O(D): the rays of a cone γ and the divisor coefficients
// a_ρ on them (all zero for D = 0).
struct ChartData {
  std::vector<LatticePoint> rays;
  std::vector<std::int64_t> offsets;

  static ChartData of(const Fan& f, const RaySet& cone, const std::vector<std::int64_t>& divisor = {});
  std::size_t rank() const;
};

// Basis of Λ^degree(W_u), W_u = {e : <e, v_ρ> ≡ 0 mod p for every ray with
// <u, v_ρ> = -a_ρ}, as rows in the coordinates of mv::basis_masks; nullopt
// when some ray has <u, v_ρ> < -a_ρ.
std::optional<FpMatrix> membership_basis(const ChartData& chart, const LatticePoint& u, int degree,
                                         const PrimeField& f);

bool chart_membership(const TorusForm& w, const ChartData& chart);

// Cartier operator in the dlog frame: x^{pu} ω ↦ x^u ω, other grades ↦ 0.
TorusForm cartier(const TorusForm& w);

// The splitting induced by the monomial Frobenius lift: x^u ω ↦ x^{pu} ω.
TorusForm sigma_split(const TorusForm& w);

// ω ↦ s(ω) with z ∧ s(ω) = C(σ(z) ∧ ω) for every z of complementary degree,
// solved grade by grade through the wedge pairing.
TorusForm duality_split(const TorusForm& w);

struct ZBSubspaces {
  FpMatrix member;  // basis of the chart-membership subspace at the grade
  FpMatrix cocycles;
  FpMatrix coboundaries;
  std::size_t cohomology_dim() const { return cocycles.rows() - coboundaries.rows(); }
};

ZBSubspaces zb_subspaces(const ChartData& chart, const LatticePoint& u, int degree, const PrimeField& f);

// dim Λ^degree(W_{u/p}) if u ∈ pM (and u/p is a chart grade), else 0.
std::size_t cartier_target_dim(const ChartData& chart, const LatticePoint& u, int degree, const PrimeField& f);

// Random form in the chart with `terms` grades drawn from [-radius, radius]^n.
TorusForm random_chart_form(const ChartData& chart, int degree, const PrimeField& f, std::int64_t radius,
                            std::size_t terms, std::mt19937_64& rng);

}  // namespace frobtoric
