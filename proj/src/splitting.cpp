#include "frobtoric/splitting.hpp"

#include <algorithm>
#include <random>

namespace frobtoric {

bool SplitReport::passed() const {
  return cartier_failures.empty() &&
         std::all_of(charts.begin(), charts.end(), [](const ChartSplitCheck& c) { return c.passed(); });
}

SplitReport verify_splitting(const Fan& f, std::uint32_t p, std::uint64_t seed, std::size_t forms_per_chart,
                             const DegreeBox& box) {
  const PrimeField field(p);
  const auto n = static_cast<int>(f.rank());
  std::mt19937_64 rng(seed);
  SplitReport rep;
  rep.p = p;
  rep.box = box;
  for (const auto& cone : f.maximal_cones()) {
    const auto chart = ChartData::of(f, cone);
    ChartSplitCheck check;
    check.cone = cone;
    for (std::size_t k = 0; k < forms_per_chart; ++k) {
      const int deg = static_cast<int>(k % static_cast<std::size_t>(n + 1));
      const auto w = random_chart_form(chart, deg, field, 3, 3, rng);
      const auto s = sigma_split(w);
      ++check.forms;
      if (cartier(s) == w) ++check.cartier_ok;
      if (duality_split(s) == w) ++check.duality_ok;
      if (chart_membership(s, chart)) ++check.membership_ok;
      if (deg == 0) {
        ++check.boundary_ok;
        continue;
      }
      const auto beta = random_chart_form(chart, deg - 1, field, 3, 3, rng);
      if (duality_split(s + d(beta)) == w) ++check.boundary_ok;
    }
    rep.charts.push_back(std::move(check));

    box.for_each([&](const LatticePoint& u) {
      for (int i = 0; i <= n; ++i) {
        ++rep.cartier_grades_checked;
        const auto zb = zb_subspaces(chart, u, i, field);
        const auto want = cartier_target_dim(chart, u, i, field);
        if (zb.cohomology_dim() != want && rep.cartier_failures.size() < 20)
          rep.cartier_failures.push_back("grade " + u.str() + " degree " + std::to_string(i) + ": dim Z - dim B = " +
                                         std::to_string(zb.cohomology_dim()) + ", expected " + std::to_string(want));
      }
    });
  }
  return rep;
}

}  // namespace frobtoric
