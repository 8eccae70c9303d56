#include "frobtoric/divisor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "frobtoric/errors.hpp"

namespace frobtoric {

bool ToricDivisor::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t a) { return a == 0; });
}

std::string ToricDivisor::label() const {
  if (!name.empty()) return name;
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
  return os.str();
}

void check_divisor(const Fan& f, const ToricDivisor& d) {
  if (d.coeffs.size() != f.rays().size())
    throw InputError("divisor has " + std::to_string(d.coeffs.size()) + " coefficients but the fan has " +
                     std::to_string(f.rays().size()) + " rays");
}

AmpleCertificate ample_check(const Fan& f, const ToricDivisor& d) {
  check_divisor(f, d);
  if (!is_complete(f)) throw InputError("ampleness is only decided on complete fans");
  AmpleCertificate cert;
  cert.ample = true;
  const auto& maxes = f.maximal_cones();
  for (std::size_t s = 0; s < maxes.size(); ++s) {
    ilin::Rows rows;
    std::vector<std::int64_t> rhs;
    for (int r : maxes[s]) {
      rows.push_back(f.rays()[static_cast<std::size_t>(r)]);
      rhs.push_back(-d.coeffs[static_cast<std::size_t>(r)]);
    }
    auto m = ilin::solve_integral(rows, rhs, f.rank());
    if (!m) throw NotCartier("divisor " + d.label() + " has no integral linearization on maximal cone " + std::to_string(s));
    cert.m_sigma.push_back(*m);
  }
  for (std::size_t s = 0; s < maxes.size() && cert.ample; ++s)
    for (std::size_t r = 0; r < f.rays().size(); ++r) {
      if (std::binary_search(maxes[s].begin(), maxes[s].end(), static_cast<int>(r))) continue;
      const auto value = dot(cert.m_sigma[s], f.rays()[r]);
      const auto bound = -d.coeffs[r];
      if (value <= bound) {
        cert.ample = false;
        cert.failing_wall = WallFailure{s, static_cast<int>(r), value, bound};
        break;
      }
    }
  return cert;
}

std::vector<std::pair<LatticePoint, std::int64_t>> arrangement_vertices(const Fan& f, const ToricDivisor& d,
                                                                       const GeometryLimits& limits) {
  check_divisor(f, d);
  const std::size_t n = f.rank(), m = f.rays().size();
  std::vector<std::pair<LatticePoint, std::int64_t>> out;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (n > m) return out;
  std::size_t tried = 0;
  while (true) {
    if (++tried > limits.max_ray_subsets) throw CapacityError("too many ray subsets when bounding the degree box");
    ilin::Rows rows;
    std::vector<std::int64_t> rhs;
    for (auto i : idx) {
      rows.push_back(f.rays()[i]);
      rhs.push_back(-d.coeffs[i]);
    }
    if (auto sol = ilin::solve_rational(rows, rhs)) out.push_back(*sol);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace frobtoric
