#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobtoric/lattice.hpp"

namespace frobtoric {

// D = sum_ρ a_ρ D_ρ, one coefficient per ray of a fan.
struct ToricDivisor {
  std::string name;
  std::vector<std::int64_t> coeffs;
  // Filled in by ample_check: m_σ per maximal cone, <m_σ, v_ρ> = -a_ρ on σ.
  std::optional<std::vector<LatticePoint>> linearization;

  static ToricDivisor zero(const Fan& f) { return {"0", std::vector<std::int64_t>(f.rays().size(), 0), {}}; }
  bool is_zero() const;
  std::string label() const;  // name, or the coefficient list
};

// The inequality <m, v_ρ> >= -a_ρ that fails to be strict across a wall.
struct WallFailure {
  std::size_t cone = 0;  // index into maximal_cones()
  int ray = 0;
  std::int64_t value = 0;  // <m_σ, v_ρ>
  std::int64_t bound = 0;  // -a_ρ
};

struct AmpleCertificate {
  bool ample = false;
  std::vector<LatticePoint> m_sigma;
  std::optional<WallFailure> failing_wall;
};

// Strict convexity of the support function of D.  Throws NotCartier when
// some maximal cone has no integral linearization and InputError when the
// fan is not complete.
AmpleCertificate ample_check(const Fan& f, const ToricDivisor& d);

// Divisor checks shared by the cohomology engines.
void check_divisor(const Fan& f, const ToricDivisor& d);

// Rational vertices of the arrangement <m, v_ρ> = -a_ρ, as (numerators,
// denominator).  Capacity-checked on the number of ray subsets.
std::vector<std::pair<LatticePoint, std::int64_t>> arrangement_vertices(const Fan& f, const ToricDivisor& d,
                                                                       const GeometryLimits& limits = {});

}  // namespace frobtoric
