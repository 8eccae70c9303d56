#include <algorithm>
#include <random>

#include "doctest.h"
#include "frobtoric/bott_oracles.hpp"
#include "frobtoric/cech.hpp"
#include "frobtoric/errors.hpp"
#include "support.hpp"

using namespace frobtoric;

namespace {

std::vector<std::int64_t> exact_h(const CohomologyResult& r) {
  std::vector<std::int64_t> out;
  for (const auto& v : r.h) {
    CHECK(v.exact());
    out.push_back(v.lo);
  }
  return out;
}

std::vector<std::int64_t> h_of(const Fan& f, int p_form, const ToricDivisor& d, std::uint32_t p = 2) {
  EngineOptions o;
  o.p = p;
  const auto r = cohomology_dims(f, p_form, d, default_box(f, d), o);
  CHECK(r.sound);
  return exact_h(r);
}

ToricDivisor p1xp1_twist(std::int64_t a, std::int64_t b) { return {"O(a,b)", {0, 0, a, b}, {}}; }

}  // namespace

TEST_CASE("ampleness examples") {
  const auto p2 = fixtures::projective_space(2);
  const auto cert = ample_check(p2, fixtures::pn_twist(2, 1));
  CHECK(cert.ample);
  CHECK(cert.m_sigma.size() == 3);
  CHECK_FALSE(cert.failing_wall);

  const auto fiber = ample_check(fixtures::p1xp1(), {"fiber", {1, 0, 0, 0}, {}});
  CHECK_FALSE(fiber.ample);
  REQUIRE(fiber.failing_wall);
  CHECK(fiber.failing_wall->value == -fiber.failing_wall->bound);

  CHECK_FALSE(ample_check(p2, ToricDivisor::zero(p2)).ample);
  CHECK_FALSE(ample_check(p2, fixtures::pn_twist(2, -1)).ample);
  CHECK(ample_check(fixtures::p1xp1(), fixtures::p1xp1_ample()).ample);
  CHECK(ample_check(fixtures::f1(), fixtures::f1_ample()).ample);
  CHECK_FALSE(ample_check(fixtures::f1(), {"fiber", {0, 0, 1, 0}, {}}).ample);
  CHECK(ample_check(fixtures::p112(), fixtures::p112_ample()).ample);
  CHECK_THROWS_AS(ample_check(fixtures::p112(), {"D", {0, 0, 1}, {}}), NotCartier);
  CHECK_THROWS_AS(ample_check(validate_fan({{1, 0}, {0, 1}}, {{0, 1}}), {"D", {1, 1}, {}}), InputError);
}

TEST_CASE("degree boxes") {
  const auto p1 = fixtures::projective_space(1);
  const ToricDivisor m2{"O(-2)", {0, -2}, {}};
  const auto ab = arrangement_box(p1, m2);
  CHECK(ab.lo == LatticePoint{-2});
  CHECK(ab.hi == LatticePoint{0});
  const auto box = default_box(p1, m2);
  CHECK(box.lo == LatticePoint{-4});
  CHECK(box.hi == LatticePoint{2});
  CHECK(box.size() == 7);
  CHECK(box.on_shell({-4}));
  CHECK_FALSE(box.on_shell({0}));
  CHECK(box.contains(ab));
  std::vector<LatticePoint> seen;
  DegreeBox{{0, 0}, {1, 1}}.for_each([&](const LatticePoint& u) { seen.push_back(u); });
  CHECK(seen == std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("cohomology of small examples") {
  const auto p1 = fixtures::projective_space(1);
  CHECK(h_of(p1, 0, {"O(-2)", {0, -2}, {}}) == std::vector<std::int64_t>{0, 1});
  CHECK(h_of(p1, 0, {"O(3)", {0, 3}, {}}) == std::vector<std::int64_t>{4, 0});
  CHECK(h_of(p1, 1, ToricDivisor::zero(p1)) == std::vector<std::int64_t>{0, 1});
  const auto p2 = fixtures::projective_space(2);
  CHECK(h_of(p2, 1, ToricDivisor::zero(p2)) == std::vector<std::int64_t>{0, 1, 0});
  CHECK(h_of(p2, 1, fixtures::pn_twist(2, 1)) == std::vector<std::int64_t>{0, 0, 0});
  CHECK(h_of(p2, 2, fixtures::pn_twist(2, 0)) == std::vector<std::int64_t>{0, 0, 1});
  CHECK(h_of(fixtures::f1(), 1, ToricDivisor::zero(fixtures::f1())) == std::vector<std::int64_t>{0, 2, 0});
  CHECK(h_of(fixtures::p1xp1(), 1, ToricDivisor::zero(fixtures::p1xp1())) == std::vector<std::int64_t>{0, 2, 0});
}

TEST_CASE("engine agrees with the projective space formula") {
  for (int n = 1; n <= 2; ++n)
    for (std::uint32_t p : {2u, 3u})
      for (int pf = 0; pf <= n; ++pf)
        for (int k = -3; k <= 3; ++k) {
          const auto h = h_of(fixtures::projective_space(n), pf, fixtures::pn_twist(n, k), p);
          for (int q = 0; q <= n; ++q) CHECK(h[static_cast<std::size_t>(q)] == bott_pn(n, pf, k, q));
        }
}

TEST_CASE("engine agrees with the Kunneth formula on P1 x P1") {
  const auto f = fixtures::p1xp1();
  for (int pf = 0; pf <= 2; ++pf)
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        const auto h = h_of(f, pf, p1xp1_twist(a, b), 3);
        for (int q = 0; q <= 2; ++q) CHECK(h[static_cast<std::size_t>(q)] == bott_pn_pn(1, pf, a, b, q));
      }
}

TEST_CASE("Čech differentials square to zero") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::int64_t> coord(-3, 3);
  const std::vector<Fan> fans = {fixtures::projective_space(2), fixtures::f1(), fixtures::p112()};
  for (const auto& f : fans)
    for (std::uint32_t p : {2u, 3u}) {
      EngineOptions o;
      o.p = p;
      const CechEngine eng(f, o);
      for (int trial = 0; trial < 10; ++trial) {
        const LatticePoint u{coord(rng), coord(rng)};
        std::vector<CechComplex> cs;
        for (int pf = 0; pf <= 2; ++pf) cs.push_back(eng.complex(pf, ToricDivisor::zero(f), u));
        cs.push_back(eng.total_complex(u));
        for (const auto& c : cs)
          for (std::size_t k = 0; k < c.basis.size(); ++k)
            for (const auto& x : c.basis[k]) CHECK(c.differential(c.differential(x)).empty());
      }
    }
}

TEST_CASE("Euler characteristic of each graded complex") {
  const auto f = fixtures::f1();
  EngineOptions o;
  o.p = 3;
  const CechEngine eng(f, o);
  const auto d = fixtures::f1_ample();
  DegreeBox{{-3, -3}, {3, 3}}.for_each([&](const LatticePoint& u) {
    for (int pf = 0; pf <= 2; ++pf) {
      const auto c = eng.complex(pf, d, u);
      const auto dims = c.level_dims();
      const auto h = c.cohomology();
      std::int64_t chi_c = 0, chi_h = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) chi_c += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(dims[k]);
      for (std::size_t k = 0; k < h.size(); ++k) chi_h += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(h[k]);
      CHECK(chi_c == chi_h);
    }
  });
}

TEST_CASE("result does not depend on the order of the cover") {
  const auto f = fixtures::p1xp1();
  const auto d = p1xp1_twist(-2, 1);
  EngineOptions lex;
  lex.p = 3;
  EngineOptions rev = lex;
  rev.cone_order = {3, 1, 0, 2};
  for (int pf = 0; pf <= 2; ++pf) {
    const auto a = cohomology_dims(f, pf, d, default_box(f, d), lex);
    const auto b = cohomology_dims(f, pf, d, default_box(f, d), rev);
    CHECK(a.h == b.h);
  }
  rev.cone_order = {0, 0, 1, 2};
  CHECK_THROWS_AS(CechEngine(f, rev), InputError);
}

TEST_CASE("grade cache is keyed by ray status") {
  const auto f = fixtures::projective_space(2);
  EngineOptions o;
  o.p = 2;
  CechEngine eng(f, o);
  const auto d = ToricDivisor::zero(f);
  CHECK(eng.grade_dims(1, d, {0, 0}) == std::vector<std::size_t>{0, 1, 0});
  const auto before = eng.distinct_complexes();
  // Same signs against every ray, same parity: served from the cache.
  CHECK(eng.grade_dims(1, d, {0, 0}) == std::vector<std::size_t>{0, 1, 0});
  CHECK(eng.distinct_complexes() == before);
  CHECK(eng.grade_dims(1, d, {1, 0}) == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("undersized boxes are flagged") {
  const auto p1 = fixtures::projective_space(1);
  const ToricDivisor m2{"O(-2)", {0, -2}, {}};
  EngineOptions o;
  const auto tight = cohomology_dims(p1, 0, m2, default_box(p1, m2, 0), o);
  CHECK(tight.sound);
  const auto missing = cohomology_dims(p1, 0, m2, DegreeBox{{-1}, {0}}, o);
  CHECK_FALSE(missing.sound);
  CHECK_FALSE(missing.warnings.empty());
  CHECK(missing.h[1] == DimValue{1, 1});
  // h^1(O(-3)) lives at u = -1, -2; this box has u = -2 on its boundary.
  const ToricDivisor m3{"O(-3)", {0, -3}, {}};
  const auto shell = cohomology_dims(p1, 0, m3, DegreeBox{{-2}, {0}}, o);
  CHECK_FALSE(shell.sound);
  o.max_grades = 10;
  CHECK_THROWS_AS(cohomology_dims(fixtures::projective_space(2), 0, fixtures::pn_twist(2, 1),
                                  DegreeBox{{-5, -5}, {5, 5}}, o),
                  CapacityError);
  CHECK_THROWS_AS(cohomology_dims(validate_fan({{1, 0}, {0, 1}}, {{0, 1}}), 0, {"0", {0, 0}, {}},
                                  DegreeBox{{0, 0}, {1, 1}}, EngineOptions{}),
                  InputError);
}

TEST_CASE("support lists the contributing grades") {
  const auto p2 = fixtures::projective_space(2);
  const auto r = cohomology_dims(p2, 1, ToricDivisor::zero(p2), default_box(p2, ToricDivisor::zero(p2)), {});
  REQUIRE(r.support.size() == 1);
  CHECK(r.support[0].u == LatticePoint{0, 0});
  const auto t = r.table();
  CHECK(t.entries.at(DimKey{1, 1, r.twist}) == DimValue{1, 1});
}

TEST_CASE("dimension tables merge by summing") {
  DimTable a, b;
  a.entries[{0, 0, "D"}] = {1, 1};
  a.entries[{1, 0, "D"}] = {0, 2};
  b.entries[{1, 0, "D"}] = {3, 3};
  b.entries[{2, 1, "D"}] = {1, 1};
  a.merge(b);
  CHECK(a.entries.size() == 3);
  CHECK(a.entries.at({1, 0, "D"}) == DimValue{3, 5});
  CHECK(a.entries.at({2, 1, "D"}) == DimValue{1, 1});
}

TEST_CASE("Bott vanishing on the test fans") {
  struct Case {
    Fan fan;
    ToricDivisor d;
  };
  const std::vector<Case> cases = {{fixtures::projective_space(2), fixtures::pn_twist(2, 1)},
                                   {fixtures::p1xp1(), fixtures::p1xp1_ample()},
                                   {fixtures::f1(), fixtures::f1_ample()},
                                   {fixtures::p112(), fixtures::p112_ample()}};
  for (const auto& c : cases)
    for (std::uint32_t p : {2u, 3u}) {
      EngineOptions o;
      o.p = p;
      const auto rep = bott_verify(c.fan, c.d, default_box(c.fan, c.d), o);
      CHECK(rep.passed());
      CHECK(rep.results.size() == c.fan.rank() + 1);
      CHECK(rep.results[0].h[0].lo > 0);
    }
  CHECK_THROWS_AS(bott_verify(fixtures::projective_space(2), fixtures::pn_twist(2, 0),
                              default_box(fixtures::projective_space(2), fixtures::pn_twist(2, 0)), {}),
                  InputError);
}

TEST_CASE("h0 of twisted 1-forms on P(1,1,2) depends on p") {
  // The ray (-1,-2) reduces to (1,0) mod 2, which changes the tight subspace.
  const auto f = fixtures::p112();
  const auto d = fixtures::p112_ample();
  for (std::uint32_t p : {2u, 3u}) {
    const auto h = h_of(f, 1, d, p);
    CHECK(h[0] == (p == 2 ? 2 : 1));
    CHECK(h[1] == 0);
    CHECK(h[2] == 0);
  }
}

TEST_CASE("Hodge to de Rham degeneration") {
  const std::vector<Fan> fans = {fixtures::projective_space(1), fixtures::projective_space(2), fixtures::p1xp1(),
                                 fixtures::f1()};
  for (const auto& f : fans)
    for (std::uint32_t p : {2u, 3u}) {
      EngineOptions o;
      o.p = p;
      const auto d0 = ToricDivisor::zero(f);
      const auto rep = degeneration_check(f, default_box(f, d0), o);
      CHECK(rep.passed());
      REQUIRE(rep.betti);
      CHECK(*rep.betti == rep.hyper);
    }
  EngineOptions o;
  const auto p2 = fixtures::projective_space(2);
  const auto rep = degeneration_check(p2, default_box(p2, ToricDivisor::zero(p2)), o);
  CHECK(rep.hyper == std::vector<std::int64_t>{1, 0, 1, 0, 1});
  CHECK(rep.e1[1] == std::vector<std::int64_t>{0, 1, 0});
}
