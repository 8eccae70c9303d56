#include <random>

#include "doctest.h"
#include "frobtoric/errors.hpp"
#include "frobtoric/forms.hpp"
#include "frobtoric/monomial.hpp"
#include "support.hpp"

using namespace frobtoric;

namespace {

TorusForm random_torus_form(std::size_t n, int degree, std::uint32_t p, std::mt19937_64& rng) {
  TorusForm w(n, degree, p);
  std::uniform_int_distribution<std::int64_t> coord(-4, 4);
  std::uniform_int_distribution<std::int64_t> coeff(0, p - 1);
  const auto masks = mv::basis_masks(n, degree);
  for (int t = 0; t < 4; ++t) {
    LatticePoint u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = coord(rng);
    for (auto m : masks) w.add_term(u, m, coeff(rng));
  }
  return w;
}

TorusForm as_function(const FpElement& a) {
  TorusForm w(a.rank(), 0, a.prime());
  for (const auto& [u, c] : a.terms()) w.add_term(u, 0u, c.value());
  return w;
}

ChartData orthant_chart(std::size_t n, std::vector<std::int64_t> offsets = {}) {
  ChartData c;
  for (std::size_t i = 0; i < n; ++i) c.rays.push_back(LatticePoint::unit(n, i));
  c.offsets = offsets.empty() ? std::vector<std::int64_t>(n, 0) : std::move(offsets);
  return c;
}

TorusForm monomial_form(std::size_t n, int degree, std::uint32_t p, const LatticePoint& u, std::uint32_t mask) {
  TorusForm w(n, degree, p);
  w.add_term(u, mask, 1);
  return w;
}

}  // namespace

TEST_CASE("wedge signs") {
  CHECK(mv::wedge_sign(0b01, 0b10) == 1);
  CHECK(mv::wedge_sign(0b10, 0b01) == -1);
  CHECK(mv::wedge_sign(0b11, 0b01) == 0);
  CHECK(mv::wedge_sign(0b101, 0b010) == -1);
  CHECK(mv::basis_masks(3, 2) == std::vector<std::uint32_t>{0b011, 0b101, 0b110});
}

TEST_CASE("exterior derivative examples") {
  // d(x^(1,1) dlog x1) = x^(1,1) (dlog x1 + dlog x2) ∧ dlog x1 = -x^(1,1) dlog x1 ∧ dlog x2.
  const auto w = monomial_form(2, 1, 5, {1, 1}, 0b01);
  TorusForm want(2, 2, 5);
  want.add_term({1, 1}, 0b11, -1);
  CHECK(d(w) == want);
  // Grades in pM are closed.
  CHECK(d(monomial_form(2, 0, 3, {3, -6}, 0)).is_zero());
  CHECK(d(monomial_form(2, 1, 3, {3, 1}, 0b10)).is_zero());
}

TEST_CASE("d squares to zero and is an antiderivation") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 4; ++n)
      for (int k = 0; k <= static_cast<int>(n); ++k) {
        const auto a = random_torus_form(n, k, p, rng);
        CHECK(d(d(a)).is_zero());
        const int l = static_cast<int>(n) - k;
        const auto b = random_torus_form(n, l > 0 ? l - 1 : 0, p, rng);
        const auto lhs = d(wedge(a, b));
        const auto rhs = wedge(d(a), b) + wedge(a, d(b)).scaled(k % 2 ? -1 : 1);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("chart membership examples") {
  const PrimeField f3(3);
  // A^1: x^0 dlog x has a pole, dx = x dlog x does not.
  const auto a1 = orthant_chart(1);
  CHECK_FALSE(chart_membership(monomial_form(1, 1, 3, {0}, 1), a1));
  CHECK(chart_membership(monomial_form(1, 1, 3, {1}, 1), a1));
  CHECK(chart_membership(monomial_form(1, 0, 3, {0}, 0), a1));
  CHECK_FALSE(chart_membership(monomial_form(1, 0, 3, {-1}, 0), a1));
  // P^1 at infinity with D = 2 D_inf: grades u <= 2, and u = 2 is tight.
  const auto p1 = fixtures::projective_space(1);
  const auto inf = ChartData::of(p1, {1}, {0, 2});
  CHECK(chart_membership(monomial_form(1, 0, 3, {2}, 0), inf));
  CHECK_FALSE(chart_membership(monomial_form(1, 1, 3, {2}, 1), inf));
  CHECK(chart_membership(monomial_form(1, 1, 3, {1}, 1), inf));
  CHECK_FALSE(chart_membership(monomial_form(1, 0, 3, {3}, 0), inf));
  CHECK_FALSE(membership_basis(inf, {3}, 0, f3).has_value());
  // A ray that vanishes mod p imposes no condition on the form part.
  ChartData steep;
  steep.rays = {{1, 0}, {1, 2}};
  steep.offsets = {0, 0};
  const PrimeField f2(2);
  CHECK(membership_basis(steep, {0, 0}, 1, f2)->rows() == 1);
  CHECK(membership_basis(steep, {0, 0}, 1, f3)->rows() == 0);
}

TEST_CASE("membership on a smooth chart matches the twisted free module") {
  // On A^n with O(sum a_i D_i), Ω^k is free on x^{-a} dx_J, so x^u dlog_J
  // lies in it iff u_j + a_j >= 1 for j in J and >= 0 otherwise.
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::int64_t> off(-1, 2);
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<std::int64_t> a(n);
      for (auto& x : a) x = off(rng);
      const auto chart = orthant_chart(n, a);
      for (int k = 0; k <= static_cast<int>(n); ++k)
        for (auto mask : mv::basis_masks(n, k)) {
          LatticePoint u(n);
          for (int trial = 0; trial < 30; ++trial) {
            for (std::size_t i = 0; i < n; ++i) u[i] = std::uniform_int_distribution<std::int64_t>(-3, 3)(rng);
            bool free_rule = true;
            for (std::size_t i = 0; i < n; ++i) free_rule = free_rule && u[i] + a[i] >= ((mask >> i & 1) ? 1 : 0);
            CHECK(chart_membership(monomial_form(n, k, p, u, mask), chart) == free_rule);
          }
        }
    }
}

TEST_CASE("Cartier operator and the monomial splitting") {
  std::mt19937_64 rng(29);
  CHECK(cartier(monomial_form(2, 1, 3, {1, 0}, 1)).is_zero());
  CHECK(cartier(monomial_form(2, 1, 3, {3, -3}, 1)) == monomial_form(2, 1, 3, {1, -1}, 1));
  CHECK(sigma_split(monomial_form(2, 1, 2, {1, -1}, 2)) == monomial_form(2, 1, 2, {2, -2}, 2));
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 3; ++n)
      for (int k = 0; k <= static_cast<int>(n); ++k) {
        const auto a = random_torus_form(n, k, p, rng);
        const auto b = random_torus_form(n, static_cast<int>(n) - k, p, rng);
        CHECK(cartier(sigma_split(a)) == a);
        CHECK(sigma_split(wedge(a, b)) == wedge(sigma_split(a), sigma_split(b)));
        if (k > 0) CHECK(cartier(d(random_torus_form(n, k - 1, p, rng))).is_zero());
        // C(f^p ω) = f C(ω) for a function f.
        const auto g = random_torus_form(n, 0, p, rng);
        CHECK(cartier(wedge(sigma_split(g), a)) == wedge(g, cartier(a)));
      }
}

TEST_CASE("duality splitting") {
  std::mt19937_64 rng(31);
  // Degree zero: s(x^{pu}) = x^u and s kills other grades.
  CHECK(duality_split(monomial_form(2, 0, 3, {3, 6}, 0)) == monomial_form(2, 0, 3, {1, 2}, 0));
  CHECK(duality_split(monomial_form(2, 0, 3, {1, 6}, 0)).is_zero());
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 3; ++n)
      for (int k = 0; k <= static_cast<int>(n); ++k) {
        const auto w = random_torus_form(n, k, p, rng);
        CHECK(duality_split(sigma_split(w)) == w);
        if (k > 0) {
          const auto beta = random_torus_form(n, k - 1, p, rng);
          CHECK(duality_split(sigma_split(w) + d(beta)) == w);
        }
      }
}

TEST_CASE("Z and B subspaces at single grades") {
  const PrimeField f3(3);
  const auto a1 = orthant_chart(1);
  auto z = zb_subspaces(a1, {1}, 1, f3);
  CHECK(z.member.rows() == 1);
  CHECK(z.cocycles.rows() == 1);
  CHECK(z.coboundaries.rows() == 1);
  CHECK(z.cohomology_dim() == 0);
  z = zb_subspaces(a1, {0}, 1, f3);
  CHECK(z.member.rows() == 0);
  z = zb_subspaces(a1, {0}, 0, f3);
  CHECK(z.cohomology_dim() == 1);
  CHECK(cartier_target_dim(a1, {0}, 0, f3) == 1);

  const auto a2 = orthant_chart(2);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    const LatticePoint u{static_cast<std::int64_t>(p), 0};
    CHECK(zb_subspaces(a2, u, 0, f).cohomology_dim() == 1);
    CHECK(zb_subspaces(a2, u, 1, f).cohomology_dim() == 1);
    CHECK(zb_subspaces(a2, u, 2, f).cohomology_dim() == 0);
    CHECK(cartier_target_dim(a2, u, 1, f) == 1);
    CHECK(cartier_target_dim(a2, {1, 0}, 1, f) == 0);
  }
}

TEST_CASE("graded Cartier isomorphism on charts of the test fans") {
  struct Case {
    Fan fan;
    std::vector<std::int64_t> divisor;
  };
  const std::vector<Case> cases = {{fixtures::projective_space(2), {}},
                                   {fixtures::f1(), {}},
                                   {fixtures::p112(), {}},
                                   {fixtures::projective_space(3), {}}};
  for (const auto& c : cases)
    for (std::uint32_t p : {2u, 3u}) {
      const PrimeField f(p);
      const auto n = c.fan.rank();
      for (std::size_t s = 0; s < c.fan.maximal_cones().size(); ++s) {
        const auto chart = ChartData::of(c.fan, c.fan.maximal_cones()[s], c.divisor);
        const std::int64_t r = 4;
        LatticePoint u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = -r;
        while (true) {
          for (int k = 0; k <= static_cast<int>(n); ++k)
            CHECK(zb_subspaces(chart, u, k, f).cohomology_dim() == cartier_target_dim(chart, u, k, f));
          std::size_t i = 0;
          while (i < n && u[i] == r) u[i++] = -r;
          if (i == n) break;
          ++u[i];
        }
      }
    }
}

TEST_CASE("the splitting of da agrees with the Frobenius-lift route") {
  // From F(ã) = ã^p + p φ(ã): σ(da) = a^{p-1} da + dφ(ã).
  std::mt19937_64 rng(37);
  const auto cone = Cone::from_generators(LatticeKind::N, 2, {{1, 0}, {1, 2}});
  const Chart chart(cone);
  const std::vector<LatticePoint> gens = {{0, 1}, {1, 0}, {2, -1}};
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int trial = 0; trial < 25; ++trial) {
      const auto a = random_fp_element(chart, 2, p, gens, 3, rng);
      const auto lifted = teichmuller_lift(a);
      const auto da = d(as_function(a));
      const auto route = wedge(as_function(a.pow(p - 1)), da) + d(as_function(phi(lifted)));
      CHECK(route == sigma_split(da));
    }
}

TEST_CASE("random chart forms are members") {
  std::mt19937_64 rng(41);
  const auto f = fixtures::f1();
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField field(p);
    for (const auto& cone : f.maximal_cones()) {
      const auto chart = ChartData::of(f, cone);
      for (int k = 0; k <= 2; ++k) {
        const auto w = random_chart_form(chart, k, field, 3, 3, rng);
        CHECK_FALSE(w.is_zero());
        CHECK(chart_membership(w, chart));
        CHECK(chart_membership(sigma_split(w), chart));
      }
    }
  }
}

TEST_CASE("form arithmetic checks") {
  CHECK_THROWS(monomial_form(2, 1, 3, {0, 0}, 1) + monomial_form(2, 1, 5, {0, 0}, 1));
  CHECK_THROWS(monomial_form(2, 1, 3, {0, 0}, 1) + monomial_form(2, 2, 3, {0, 0}, 3));
  CHECK((monomial_form(2, 1, 3, {0, 0}, 1).scaled(3)).is_zero());
}
