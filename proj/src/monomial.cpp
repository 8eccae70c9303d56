#include "frobtoric/monomial.hpp"

#include <algorithm>
#include <sstream>

namespace frobtoric {

std::ostream& operator<<(std::ostream& os, const FpCoeff& a) { return os << a.value(); }

bool Chart::admits(const LatticePoint& u) const {
  if (!cone_) return true;
  return std::all_of(cone_->generators().begin(), cone_->generators().end(),
                     [&](const LatticePoint& v) { return dot(u, v) >= 0; });
}

bool operator==(const Chart& a, const Chart& b) {
  if (a.is_torus() || b.is_torus()) return a.is_torus() == b.is_torus();
  return a.cone() == b.cone();
}

std::string Chart::str() const { return cone_ ? cone_->str() : std::string("torus"); }

namespace {

template <class E>
std::string render(const E& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [u, c] : e.terms()) {
    os << (first ? "" : " + ") << c << "*x^" << u;
    first = false;
  }
  return os.str();
}

}  // namespace

std::string to_string(const FpElement& e) { return render(e); }
std::string to_string(const W2Element& e) { return render(e); }

ChartTransition make_transition(const Cone& sigma, const Cone& tau) {
  if (sigma.lattice() != LatticeKind::N || tau.lattice() != LatticeKind::N || sigma.rank() != tau.rank())
    throw InputError("chart transition needs two cones in N of equal rank");
  LatticePoint u(sigma.rank());
  for (const auto& f : sigma.inequalities())
    if (std::all_of(tau.generators().begin(), tau.generators().end(),
                    [&](const LatticePoint& v) { return dot(f, v) == 0; }))
      u += f;
  std::vector<LatticePoint> cut;
  for (const auto& v : sigma.generators())
    if (dot(u, v) == 0) cut.push_back(v);
  if (!(Cone::from_generators(LatticeKind::N, sigma.rank(), cut) == tau))
    throw InputError(tau.str() + " is not a face of " + sigma.str());
  return {sigma, tau, u};
}

W2Element frobenius_lift_chart(const W2Element& e) {
  const auto p = static_cast<std::int64_t>(e.prime());
  W2Element r(e.chart(), e.rank(), e.prime());
  for (const auto& [u, c] : e.terms()) r.add_term(p * u, w2_frobenius(c));
  return r;
}

FpElement reduce_mod_p(const W2Element& e) {
  FpElement r(e.chart(), e.rank(), e.prime());
  for (const auto& [u, c] : e.terms()) r.add_term(u, FpCoeff(e.prime(), w2_reduce(c)));
  return r;
}

W2Element teichmuller_lift(const FpElement& e) {
  W2Element r(e.chart(), e.rank(), e.prime());
  for (const auto& [u, c] : e.terms()) r.add_term(u, WittPair(e.prime(), c.value(), 0));
  return r;
}

FpElement phi(const W2Element& b) {
  const auto diff = frobenius_lift_chart(b) - b.pow(b.prime());
  FpElement r(b.chart(), b.rank(), b.prime());
  for (const auto& [u, c] : diff.terms()) r.add_term(u, FpCoeff(b.prime(), p_divide(c)));
  return r;
}

namespace {

LatticePoint random_semigroup_point(std::size_t rank, const std::vector<LatticePoint>& gens, std::mt19937_64& rng) {
  LatticePoint u(rank);
  if (gens.empty()) return u;
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> count(0, 3);
  const int k = count(rng);
  for (int i = 0; i < k; ++i) u += gens[pick(rng)];
  return u;
}

}  // namespace

W2Element random_w2_element(const Chart& chart, std::size_t rank, std::uint32_t p,
                            const std::vector<LatticePoint>& generators, std::size_t terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> digit(0, p - 1);
  W2Element e(chart, rank, p);
  for (std::size_t i = 0; i < terms; ++i)
    e.add_term(random_semigroup_point(rank, generators, rng), WittPair(p, digit(rng), digit(rng)));
  return e;
}

FpElement random_fp_element(const Chart& chart, std::size_t rank, std::uint32_t p,
                            const std::vector<LatticePoint>& generators, std::size_t terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> digit(0, p - 1);
  FpElement e(chart, rank, p);
  for (std::size_t i = 0; i < terms; ++i) e.add_term(random_semigroup_point(rank, generators, rng), FpCoeff(p, digit(rng)));
  return e;
}

bool GlueReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const GlueCheck& c) { return c.passed(); });
}

GlueReport verify_glue_compat(const Fan& f, std::uint32_t p, std::uint64_t seed, std::size_t random_samples) {
  GlueReport report;
  report.p = p;
  std::mt19937_64 rng(seed);
  const auto n = f.rank();
  auto ray_set_of = [&](const Cone& c) {
    RaySet r;
    for (const auto& g : c.generators())
      r.push_back(static_cast<int>(std::find(f.rays().begin(), f.rays().end(), g) - f.rays().begin()));
    std::sort(r.begin(), r.end());
    return r;
  };
  for (const auto& sigma_rays : f.cones()) {
    const auto sigma = f.cone(sigma_rays);
    const Chart on_sigma(sigma);
    const auto gens_sigma = hilbert_basis(dual_cone(sigma));
    for (const auto& tau : faces(sigma)) {
      if (tau == sigma) continue;
      GlueCheck check;
      check.sigma = sigma_rays;
      check.tau = ray_set_of(tau);
      const auto t = make_transition(sigma, tau);

      const auto gens_tau = hilbert_basis(dual_cone(tau));
      check.localization_ok = std::all_of(gens_tau.begin(), gens_tau.end(), [&](const LatticePoint& h) {
        for (std::int64_t k = 0; k <= 64; ++k)
          if (on_sigma.admits(h + k * t.separator)) return true;
        return false;
      }) && Chart(tau).admits(-t.separator);

      bool commutes = true, reduces = true;
      auto check_element = [&](const W2Element& e) {
        const auto lhs = frobenius_lift_chart(face_localize(e, t));
        const auto rhs = face_localize(frobenius_lift_chart(e), t);
        commutes = commutes && lhs == rhs;
        reduces = reduces && reduce_mod_p(frobenius_lift_chart(e)) == reduce_mod_p(e).pow(p);
      };
      for (const auto& h : gens_sigma) {
        check_element(W2Element::monomial(on_sigma, n, WittPair::one(p), h));
        ++check.generators_checked;
      }
      for (std::size_t s = 0; s < random_samples; ++s) {
        check_element(random_w2_element(on_sigma, n, p, gens_sigma, 3, rng));
        ++check.random_checked;
      }
      check.commutes = commutes;
      check.reduces_to_frobenius = reduces;
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

}  // namespace frobtoric
