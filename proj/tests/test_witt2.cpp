#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "frobtoric/errors.hpp"
#include "frobtoric/witt2.hpp"

using namespace frobtoric;
using boost::multiprecision::cpp_int;

namespace {

// Independent route to the sum: expand ((a0+b0)^p - a0^p - b0^p) / p over
// the integers instead of summing reduced binomial coefficients.
WittPair sum_by_expansion(std::uint32_t p, const WittPair& a, const WittPair& b) {
  cpp_int x = a.a0(), y = b.a0();
  cpp_int carry = (boost::multiprecision::pow(x + y, p) - boost::multiprecision::pow(x, p) -
                   boost::multiprecision::pow(y, p)) /
                  p;
  const auto c = static_cast<std::int64_t>(carry % p);
  return {p, static_cast<std::int64_t>(a.a0() + b.a0()), static_cast<std::int64_t>(a.a1() + b.a1()) + c};
}

}  // namespace

TEST_CASE("addition examples") {
  CHECK(WittPair(2, 1, 0) + WittPair(2, 1, 0) == WittPair(2, 0, 1));
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::uint32_t a0 = 0; a0 < p; ++a0) CHECK(WittPair::zero(p) + WittPair(p, a0, 1) == WittPair(p, a0, 1));
  // The carry 3^{-1}C(3,1)*1*4 + 3^{-1}C(3,2)*1*2 = 6 vanishes mod 3.
  CHECK(WittPair(3, 1, 0) + WittPair(3, 2, 0) == WittPair(3, 0, 0));
  CHECK(WittPair(3, 1, 0) + WittPair(3, 1, 0) == WittPair(3, 2, 2));
}

TEST_CASE("multiplication examples") {
  for (std::uint32_t a0 = 0; a0 < 3; ++a0)
    for (std::uint32_t a1 = 0; a1 < 3; ++a1) CHECK(WittPair::one(3) * WittPair(3, a0, a1) == WittPair(3, a0, a1));
  CHECK(WittPair(2, 0, 1) * WittPair(2, 0, 1) == WittPair(2, 0, 0));
  CHECK(WittPair(3, 2, 0) * WittPair(3, 2, 0) == WittPair(3, 1, 0));
}

TEST_CASE("addition matches integer expansion of the carry") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 97u})
    for (std::uint32_t a0 = 0; a0 < p; a0 += (p > 11 ? 7 : 1))
      for (std::uint32_t b0 = 0; b0 < p; b0 += (p > 11 ? 5 : 1)) {
        const WittPair a(p, a0, 1), b(p, b0, p - 1);
        CHECK(a + b == sum_by_expansion(p, a, b));
      }
}

TEST_CASE("carry coefficients") {
  CHECK(witt_carry_coefficients(2) == std::vector<std::uint32_t>{1});
  CHECK(witt_carry_coefficients(3) == std::vector<std::uint32_t>{1, 1});
  CHECK(witt_carry_coefficients(5) == std::vector<std::uint32_t>{1, 2, 2, 1});
  CHECK(witt_carry_coefficients(97).size() == 96);
}

TEST_CASE("Frobenius") {
  CHECK(w2_frobenius(WittPair(3, 2, 1)) == WittPair(3, 2, 1));
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::uint32_t a0 = 0; a0 < p; ++a0)
      for (std::uint32_t a1 = 0; a1 < p; ++a1) CHECK(w2_reduce(w2_frobenius(WittPair(p, a0, a1))) == a0);
}

TEST_CASE("isomorphism with Z/p^2") {
  CHECK(w2_to_zp2(WittPair(2, 0, 1)) == 2);
  CHECK(w2_to_zp2(WittPair(3, 1, 0)) == 1);
  CHECK(w2_to_zp2(WittPair(3, 2, 0)) == 8);
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t x = 0; x < p * p; ++x) CHECK(w2_to_zp2(w2_from_zp2(p, x)) == x);
}

TEST_CASE("multiplication by p") {
  CHECK(w2_to_zp2(p_multiply(3, 2)) == 6);
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t x = 0; x < p; ++x) {
      CHECK(w2_to_zp2(p_multiply(p, x)) == p * x);
      CHECK(p_divide(p_multiply(p, x)) == x);
      CHECK(w2_reduce(p_multiply(p, x)) == 0);
    }
  CHECK_THROWS_AS(p_divide(WittPair(3, 1, 0)), InternalError);
}

TEST_CASE("ring axioms") {
  for (std::uint32_t p : {2u, 3u}) {
    const auto rep = verify_witt_axioms(p, 1);
    CHECK(rep.exhaustive);
    CHECK(rep.passed());
    CHECK(rep.pairs == std::uint64_t{p} * p * p * p);
  }
  for (std::uint32_t p : {5u, 7u, 13u}) {
    const auto rep = verify_witt_axioms(p, 99, 10000);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.triples == 10000);
    INFO(rep.first_failure);
    CHECK(rep.passed());
  }
}

TEST_CASE("input checks") {
  CHECK_THROWS_AS(WittPair(4, 0, 0), InputError);
  CHECK_THROWS_AS(WittPair(101, 0, 0), InputError);
  CHECK_THROWS_AS(WittPair(2, 1, 0) + WittPair(3, 1, 0), PrimeMismatch);
  CHECK_THROWS_AS(WittPair(2, 1, 0) * WittPair(3, 1, 0), PrimeMismatch);
  CHECK(WittPair(5, -1, 7) == WittPair(5, 4, 2));
}
