#pragma once

#include <string>
#include <vector>

#include "frobtoric/divisor.hpp"
#include "frobtoric/lattice.hpp"

namespace fixtures {

using frobtoric::Fan;
using frobtoric::LatticePoint;
using frobtoric::RaySet;

inline Fan projective_space(int n) {
  std::vector<LatticePoint> rays;
  for (int i = 0; i < n; ++i) rays.push_back(LatticePoint::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
  LatticePoint last(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) last[static_cast<std::size_t>(i)] = -1;
  rays.push_back(last);
  std::vector<RaySet> cones;
  for (int skip = 0; skip <= n; ++skip) {
    RaySet c;
    for (int i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return frobtoric::validate_fan(rays, cones);
}

inline Fan p1xp1() { return frobtoric::validate_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
inline Fan f1() { return frobtoric::validate_fan({{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
inline Fan p112() { return frobtoric::validate_fan({{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}}); }

// O(k) on P^n, k times the divisor of the last ray.
inline frobtoric::ToricDivisor pn_twist(int n, std::int64_t k) {
  std::vector<std::int64_t> a(static_cast<std::size_t>(n) + 1, 0);
  a.back() = k;
  return {"O(" + std::to_string(k) + ")", a, {}};
}

// Certified ample divisors used throughout.
inline frobtoric::ToricDivisor p1xp1_ample() { return {"H", {0, 0, 1, 1}, {}}; }
inline frobtoric::ToricDivisor f1_ample() { return {"H", {0, 0, 1, 2}, {}}; }
inline frobtoric::ToricDivisor p112_ample() { return {"H", {0, 1, 0}, {}}; }

inline std::string fixture(const std::string& name) { return std::string(FROBTORIC_FIXTURES) + "/" + name; }

}  // namespace fixtures
