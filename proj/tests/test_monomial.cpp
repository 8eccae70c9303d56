#include <random>

#include "doctest.h"
#include "frobtoric/errors.hpp"
#include "frobtoric/monomial.hpp"
#include "support.hpp"

using namespace frobtoric;

namespace {

Cone orthant2() { return Cone::from_generators(LatticeKind::N, 2, {{1, 0}, {0, 1}}); }

W2Element teich_poly(const Chart& c, std::uint32_t p, const std::vector<LatticePoint>& exps) {
  W2Element e(c, 2, p);
  for (const auto& u : exps) e.add_term(u, WittPair::one(p));
  return e;
}

}  // namespace

TEST_CASE("ring operations on the orthant chart") {
  const Chart c(orthant2());
  const auto x = FpElement::monomial(c, 2, FpCoeff::one(3), {1, 0});
  const auto y = FpElement::monomial(c, 2, FpCoeff::one(3), {0, 1});
  const auto s = (x + y).pow(3);
  CHECK(s == x.pow(3) + y.pow(3));
  CHECK((x * y).terms().begin()->first == LatticePoint{1, 1});
  CHECK((x - x).is_zero());
  CHECK((x + y).scaled(FpCoeff(3, 2)).terms().size() == 2);
}

TEST_CASE("chart membership is enforced") {
  const Chart c(orthant2());
  CHECK_THROWS_AS(FpElement::monomial(c, 2, FpCoeff::one(2), {-1, 0}), ChartMembershipError);
  const auto torus = FpElement::monomial(Chart::torus(), 2, FpCoeff::one(2), {-1, 0});
  CHECK(torus.terms().size() == 1);
  const auto x = FpElement::monomial(c, 2, FpCoeff::one(2), {1, 0});
  CHECK_THROWS_AS(x + torus, ChartMismatch);
  const auto x3 = FpElement::monomial(c, 2, FpCoeff::one(3), {1, 0});
  CHECK_THROWS_AS(x + x3, PrimeMismatch);
}

TEST_CASE("face localization") {
  const auto sigma = orthant2();
  const auto tau = Cone::from_generators(LatticeKind::N, 2, {{1, 0}});
  const auto t = make_transition(sigma, tau);
  CHECK(t.separator == LatticePoint{0, 1});
  const auto e = W2Element::monomial(Chart(sigma), 2, WittPair(2, 1, 1), {2, 3});
  const auto loc = face_localize(e, t);
  CHECK(loc.chart() == Chart(tau));
  CHECK(loc.terms() == e.terms());
  const auto other = Cone::from_generators(LatticeKind::N, 2, {{1, 1}});
  CHECK_THROWS_AS(make_transition(sigma, other), InputError);
}

TEST_CASE("Frobenius lift on charts") {
  const Chart c(orthant2());
  const auto e = W2Element::monomial(c, 2, WittPair(3, 2, 1), {1, 2});
  const auto f = frobenius_lift_chart(e);
  CHECK(f.terms().begin()->first == LatticePoint{3, 6});
  CHECK(f.terms().begin()->second == w2_frobenius(WittPair(3, 2, 1)));
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int k = 0; k < 20; ++k) {
      const auto a = random_w2_element(c, 2, p, {{1, 0}, {0, 1}}, 3, rng);
      const auto b = random_w2_element(c, 2, p, {{1, 0}, {0, 1}}, 3, rng);
      CHECK(frobenius_lift_chart(a * b) == frobenius_lift_chart(a) * frobenius_lift_chart(b));
      CHECK(frobenius_lift_chart(a + b) == frobenius_lift_chart(a) + frobenius_lift_chart(b));
      CHECK(reduce_mod_p(frobenius_lift_chart(a)) == reduce_mod_p(a).pow(p));
    }
}

TEST_CASE("phi of monomials and of x + y") {
  const Chart c(orthant2());
  for (std::uint32_t p : {2u, 3u, 5u})
    CHECK(phi(teich_poly(c, p, {{2, 1}})).is_zero());
  // F(x+y) - (x+y)^2 = -2xy, so phi = xy at p = 2.
  const auto phi2 = phi(teich_poly(c, 2, {{1, 0}, {0, 1}}));
  CHECK(phi2 == FpElement::monomial(c, 2, FpCoeff::one(2), {1, 1}));
  // At p = 3: -3x^2y - 3xy^2, so phi = 2x^2y + 2xy^2.
  auto want = FpElement::monomial(c, 2, FpCoeff(3, 2), {2, 1});
  want.add_term({1, 2}, FpCoeff(3, 2));
  CHECK(phi(teich_poly(c, 3, {{1, 0}, {0, 1}})) == want);
}

TEST_CASE("phi satisfies F(b) = b^p + p phi(b) on random elements") {
  const Chart c(orthant2());
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int k = 0; k < 20; ++k) {
      const auto b = random_w2_element(c, 2, p, {{1, 0}, {0, 1}}, 3, rng);
      const auto ph = phi(b);
      W2Element rhs = b.pow(p);
      for (const auto& [u, v] : ph.terms()) rhs.add_term(u, p_multiply(p, v.value()));
      CHECK(frobenius_lift_chart(b) == rhs);
    }
}

TEST_CASE("gluing compatibility of the Frobenius lift") {
  const std::vector<Fan> fans = {fixtures::projective_space(2), fixtures::p1xp1(), fixtures::f1(), fixtures::p112()};
  for (const auto& f : fans)
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const auto rep = verify_glue_compat(f, p);
      CHECK(rep.passed());
      CHECK(rep.checks.size() > 0);
      for (const auto& ch : rep.checks) CHECK(ch.generators_checked > 0);
    }
}
