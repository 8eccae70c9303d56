#include "frobtoric/witt2.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <mutex>
#include <random>
#include <string>

#include "frobtoric/errors.hpp"

namespace frobtoric {

namespace {

std::uint32_t residue(std::int64_t x, std::uint32_t p) {
  const auto r = x % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

void check_prime(std::uint32_t p) {
  if (p > kMaxWittPrime || !is_prime(p))
    throw InputError("Witt prime must be a prime <= " + std::to_string(kMaxWittPrime) + ", got " + std::to_string(p));
}

void check_same(const WittPair& a, const WittPair& b) {
  if (a.prime() != b.prime())
    throw PrimeMismatch("Witt vectors over p=" + std::to_string(a.prime()) + " and p=" + std::to_string(b.prime()));
}

std::uint32_t powmod(std::uint32_t a, std::uint32_t e, std::uint32_t m) {
  std::uint64_t r = 1 % m, b = a % m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

WittPair::WittPair(std::uint32_t p, std::int64_t a0, std::int64_t a1) : p_(p) {
  check_prime(p);
  a0_ = residue(a0, p);
  a1_ = residue(a1, p);
}

std::ostream& operator<<(std::ostream& os, const WittPair& a) { return os << '(' << a.a0() << ',' << a.a1() << ')'; }

const std::vector<std::uint32_t>& witt_carry_coefficients(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  check_prime(p);
  using boost::multiprecision::cpp_int;
  std::vector<std::uint32_t> c;
  cpp_int binom = 1;
  for (std::uint32_t j = 1; j < p; ++j) {
    binom = binom * (p - j + 1) / j;
    if (binom % p != 0) throw InternalError("C(p,j) not divisible by p");
    c.push_back(static_cast<std::uint32_t>((binom / p) % p));
  }
  return cache.emplace(p, std::move(c)).first->second;
}

WittPair w2_add(const WittPair& a, const WittPair& b) {
  check_same(a, b);
  const auto p = a.prime();
  const auto& carry = witt_carry_coefficients(p);
  std::uint64_t s = 0;
  for (std::uint32_t j = 1; j < p; ++j)
    s = (s + static_cast<std::uint64_t>(carry[j - 1]) * powmod(a.a0(), j, p) % p * powmod(b.a0(), p - j, p)) % p;
  return {p, static_cast<std::int64_t>(a.a0()) + b.a0(),
          static_cast<std::int64_t>(a.a1()) + b.a1() + static_cast<std::int64_t>(s)};
}

WittPair w2_mul(const WittPair& a, const WittPair& b) {
  check_same(a, b);
  const auto p = a.prime();
  const std::uint64_t t = static_cast<std::uint64_t>(powmod(a.a0(), p, p)) * b.a1() +
                          static_cast<std::uint64_t>(powmod(b.a0(), p, p)) * a.a1();
  return {p, static_cast<std::int64_t>(static_cast<std::uint64_t>(a.a0()) * b.a0() % p),
          static_cast<std::int64_t>(t % p)};
}

WittPair w2_neg(const WittPair& a) {
  // Solve a + x = 0 componentwise: x0 = -a0, then x1 from the carry.
  const auto p = a.prime();
  const WittPair guess(p, -static_cast<std::int64_t>(a.a0()), 0);
  const auto s = w2_add(a, guess);
  return {p, guess.a0(), -static_cast<std::int64_t>(s.a1())};
}

WittPair w2_sub(const WittPair& a, const WittPair& b) { return w2_add(a, w2_neg(b)); }

WittPair w2_frobenius(const WittPair& a) {
  const auto p = a.prime();
  return {p, powmod(a.a0(), p, p), powmod(a.a1(), p, p)};
}

std::uint32_t w2_to_zp2(const WittPair& a) {
  const auto p = a.prime(), q = p * p;
  const auto teich = powmod(a.a0(), p, q);
  return (teich + q - p * a.a1()) % q;
}

WittPair w2_from_zp2(std::uint32_t p, std::int64_t x) {
  check_prime(p);
  const auto q = static_cast<std::int64_t>(p) * p;
  const auto r = static_cast<std::uint32_t>(((x % q) + q) % q);
  const auto a0 = r % p;
  const auto teich = powmod(a0, p, static_cast<std::uint32_t>(q));
  // r = teich - p a1  (mod p^2)
  const auto diff = (static_cast<std::int64_t>(teich) - r + q) % q;
  return {p, a0, diff / p};
}

WittPair p_multiply(std::uint32_t p, std::uint32_t x) { return {p, 0, -static_cast<std::int64_t>(x % p)}; }

std::uint32_t p_divide(const WittPair& a) {
  if (a.a0() != 0) throw InternalError("element " + std::to_string(a.a0()) + "," + std::to_string(a.a1()) + " is not divisible by p");
  return (a.prime() - a.a1()) % a.prime();
}

}  // namespace frobtoric

namespace frobtoric {

WittAxiomReport verify_witt_axioms(std::uint32_t p, std::uint64_t seed, std::uint64_t random_triples,
                                   std::uint64_t exhaustive_limit) {
  check_prime(p);
  WittAxiomReport rep;
  rep.p = p;
  const std::uint64_t q = std::uint64_t{p} * p;
  auto fail = [&](const std::string& what) {
    if (rep.failures++ == 0) rep.first_failure = what;
  };
  auto elem = [&](std::uint64_t i) { return WittPair(p, static_cast<std::int64_t>(i % p), static_cast<std::int64_t>(i / p)); };
  auto show = [](const WittPair& a) {
    return "(" + std::to_string(a.a0()) + "," + std::to_string(a.a1()) + ")";
  };
  const auto zero = WittPair::zero(p), one = WittPair::one(p);
  auto check_triple = [&](const WittPair& a, const WittPair& b, const WittPair& c) {
    ++rep.triples;
    const auto at = show(a) + " " + show(b) + " " + show(c);
    if ((a + b) + c != a + (b + c)) fail("addition not associative at " + at);
    if ((a * b) * c != a * (b * c)) fail("multiplication not associative at " + at);
    if (a * (b + c) != a * b + a * c) fail("not distributive at " + at);
    if (a + b != b + a || a * b != b * a) fail("not commutative at " + at);
    if (a + zero != a || a * one != a) fail("identity fails at " + show(a));
    if (a + w2_neg(a) != zero) fail("negation fails at " + show(a));
    if (w2_frobenius(a + b) != w2_frobenius(a) + w2_frobenius(b) || w2_frobenius(a * b) != w2_frobenius(a) * w2_frobenius(b))
      fail("Frobenius not a ring map at " + at);
  };
  if (q * q * q <= exhaustive_limit) {
    rep.exhaustive = true;
    for (std::uint64_t i = 0; i < q; ++i)
      for (std::uint64_t j = 0; j < q; ++j)
        for (std::uint64_t k = 0; k < q; ++k) check_triple(elem(i), elem(j), elem(k));
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
    for (std::uint64_t t = 0; t < random_triples; ++t) {
      const auto a = elem(pick(rng)), b = elem(pick(rng)), c = elem(pick(rng));
      check_triple(a, b, c);
    }
  }
  if (q * q <= std::max<std::uint64_t>(exhaustive_limit, 2401)) {
    std::vector<bool> seen(q, false);
    for (std::uint64_t i = 0; i < q; ++i) {
      const auto a = elem(i);
      const auto x = w2_to_zp2(a);
      if (seen[x]) fail("isomorphism not injective at " + show(a));
      seen[x] = true;
      if (w2_from_zp2(p, x) != a) fail("inverse isomorphism fails at " + show(a));
      for (std::uint64_t j = 0; j < q; ++j) {
        const auto b = elem(j);
        ++rep.pairs;
        const auto y = w2_to_zp2(b);
        if (w2_to_zp2(a + b) != (x + y) % q) fail("isomorphism not additive at " + show(a) + " " + show(b));
        if (w2_to_zp2(a * b) != static_cast<std::uint64_t>(x) * y % q)
          fail("isomorphism not multiplicative at " + show(a) + " " + show(b));
      }
    }
    if (w2_to_zp2(one) != 1) fail("isomorphism does not preserve 1");
  }
  return rep;
}

}  // namespace frobtoric
