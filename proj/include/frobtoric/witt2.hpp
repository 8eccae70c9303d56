#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "frobtoric/fp_linalg.hpp"

namespace frobtoric {

inline constexpr std::uint32_t kMaxWittPrime = 97;

// Length-two Witt vector (a0, a1) over F_p, components in 0..p-1.
//
//   (a0, a1) * (b0, b1) = (a0 b0, a0^p b1 + b0^p a1)
//   (a0, a1) + (b0, b1) = (a0 + b0, a1 + b1 + sum_{j=1}^{p-1} (C(p,j)/p) a0^j b0^{p-j})
class WittPair {
 public:
  WittPair() = default;
  WittPair(std::uint32_t p, std::int64_t a0, std::int64_t a1);

  static WittPair zero(std::uint32_t p) { return {p, 0, 0}; }
  static WittPair one(std::uint32_t p) { return {p, 1, 0}; }

  std::uint32_t prime() const { return p_; }
  std::uint32_t a0() const { return a0_; }
  std::uint32_t a1() const { return a1_; }
  bool is_zero() const { return a0_ == 0 && a1_ == 0; }

  friend bool operator==(const WittPair&, const WittPair&) = default;
  friend auto operator<=>(const WittPair&, const WittPair&) = default;

 private:
  std::uint32_t p_ = 2;
  std::uint32_t a0_ = 0;
  std::uint32_t a1_ = 0;
};

std::ostream& operator<<(std::ostream& os, const WittPair& a);

// The carry coefficients C(p,j)/p mod p for j = 1..p-1 (index j-1).  The
// binomials are formed in arbitrary precision before reduction.
const std::vector<std::uint32_t>& witt_carry_coefficients(std::uint32_t p);

WittPair w2_add(const WittPair& a, const WittPair& b);
WittPair w2_mul(const WittPair& a, const WittPair& b);
WittPair w2_neg(const WittPair& a);
WittPair w2_sub(const WittPair& a, const WittPair& b);
WittPair w2_frobenius(const WittPair& a);

inline WittPair operator+(const WittPair& a, const WittPair& b) { return w2_add(a, b); }
inline WittPair operator-(const WittPair& a, const WittPair& b) { return w2_sub(a, b); }
inline WittPair operator*(const WittPair& a, const WittPair& b) { return w2_mul(a, b); }

// Reduction W2(F_p) -> F_p, (a0, a1) -> a0.
inline std::uint32_t w2_reduce(const WittPair& a) { return a.a0(); }

// Ring isomorphism W2(F_p) -> Z/p^2, (a0, a1) -> a0^p - p a1 (a0, a1 taken
// as residues 0..p-1), and its inverse.
std::uint32_t w2_to_zp2(const WittPair& a);
WittPair w2_from_zp2(std::uint32_t p, std::int64_t x);

// Multiplication by p, F_p -> p W2(F_p): x -> p * [x], which is (0, -x) in
// the coordinates above.
WittPair p_multiply(std::uint32_t p, std::uint32_t x);

// Inverse of p_multiply on its image; throws InternalError off the image.
std::uint32_t p_divide(const WittPair& a);

struct WittAxiomReport {
  std::uint32_t p = 0;
  bool exhaustive = false;
  std::uint64_t triples = 0;  // (a, b, c) checked against every ring axiom
  std::uint64_t pairs = 0;    // (a, b) checked against the Z/p^2 isomorphism
  std::uint64_t failures = 0;
  std::string first_failure;
  bool passed() const { return failures == 0; }
};

// Ring axioms, Frobenius multiplicativity and additivity, and the Z/p^2
// isomorphism.  Triples are exhaustive when p^6 <= exhaustive_limit,
// otherwise `random_triples` are drawn from the seed; isomorphism pairs are
// exhaustive when p^4 <= exhaustive_limit.
WittAxiomReport verify_witt_axioms(std::uint32_t p, std::uint64_t seed, std::uint64_t random_triples = 10000,
                                   std::uint64_t exhaustive_limit = 1000);

}  // namespace frobtoric
