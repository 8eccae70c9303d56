#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobtoric/cech.hpp"
#include "frobtoric/forms.hpp"

namespace frobtoric {

struct ChartSplitCheck {
  RaySet cone;
  std::size_t forms = 0;
  std::size_t cartier_ok = 0;     // C(σ(ω)) = ω
  std::size_t duality_ok = 0;     // s(σ(ω)) = ω
  std::size_t boundary_ok = 0;    // s(σ(ω) + dβ) = ω
  std::size_t membership_ok = 0;  // σ(ω) stays in the chart
  bool passed() const { return cartier_ok == forms && duality_ok == forms && boundary_ok == forms && membership_ok == forms; }
};

struct SplitReport {
  std::uint32_t p = 0;
  std::vector<ChartSplitCheck> charts;
  DegreeBox box;
  std::uint64_t cartier_grades_checked = 0;  // (chart, grade, degree) triples
  std::vector<std::string> cartier_failures;
  bool passed() const;
};

// Splitting identities on random forms of every maximal chart, plus the
// graded Cartier identity dim Z - dim B = cartier_target_dim over the box.
SplitReport verify_splitting(const Fan& f, std::uint32_t p, std::uint64_t seed, std::size_t forms_per_chart,
                             const DegreeBox& box);

}  // namespace frobtoric
