#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "frobtoric/divisor.hpp"
#include "frobtoric/fp_linalg.hpp"
#include "frobtoric/lattice.hpp"

namespace frobtoric {

// A product of integer intervals [lo_i, hi_i] in M.
struct DegreeBox {
  LatticePoint lo;
  LatticePoint hi;

  std::size_t rank() const { return lo.rank(); }
  std::uint64_t size() const;
  bool contains(const LatticePoint& u) const;
  bool on_shell(const LatticePoint& u) const;
  bool contains(const DegreeBox& o) const;
  // Calls f(u) for every lattice point, last coordinate fastest.
  template <class F>
  void for_each(F&& f) const;
  std::string str() const;
};

// Smallest integer box holding every vertex of the arrangement
// <m, v_ρ> = -a_ρ (no margin).
DegreeBox arrangement_box(const Fan& f, const ToricDivisor& d);
// arrangement_box widened by `margin` in every coordinate; margin < 0
// means rank + 1.
DegreeBox default_box(const Fan& f, const ToricDivisor& d, int margin = -1);

struct DimValue {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool exact() const { return lo == hi; }
  friend bool operator==(const DimValue&, const DimValue&) = default;
};

// (cohomological degree q, form degree p, twist label) -> dimension.
struct DimKey {
  int q = 0;
  int p_form = 0;
  std::string twist;
  friend auto operator<=>(const DimKey&, const DimKey&) = default;
};

struct DimTable {
  std::map<DimKey, DimValue> entries;
  // Sums matching entries (partial tables from disjoint grade sets).
  void merge(const DimTable& o);
};

struct EngineOptions {
  std::uint32_t p = 2;
  std::size_t dense_limit = 4096;
  std::uint64_t max_grades = 2000000;
  // Permutation of maximal cones giving the Čech order; empty = lex order.
  std::vector<std::size_t> cone_order;
};

// Cochains of one grade.  Coordinates are keys (S << n) | I with S the
// subset of Čech positions and I the dlog index set.
struct CechComplex {
  std::size_t rank = 0;
  std::size_t cones = 0;
  // basis[k] spans level k (for the total complex, total degree k).
  std::vector<std::vector<SparseVec>> basis;
  std::uint32_t p = 2;
  LatticePoint u;  // used only by the total complex
  bool total = false;

  SparseVec differential(const SparseVec& x) const;
  // h^k for k = 0..levels-1.
  std::vector<std::size_t> cohomology(std::size_t dense_limit = 4096) const;
  std::vector<std::size_t> level_dims() const;
};

class CechEngine {
 public:
  CechEngine(const Fan& f, EngineOptions options);

  const Fan& fan() const { return fan_; }
  const EngineOptions& options() const { return opt_; }

  // Čech complex of Ω̃^p_form ⊗ O(D) at grade u.
  CechComplex complex(int p_form, const ToricDivisor& d, const LatticePoint& u) const;
  // Total Čech-de Rham complex of Ω̃^• at grade u (levels 0..2n).
  CechComplex total_complex(const LatticePoint& u) const;

  // Cached by the status of u against every ray.
  std::vector<std::size_t> grade_dims(int p_form, const ToricDivisor& d, const LatticePoint& u);
  std::vector<std::size_t> hyper_grade_dims(const LatticePoint& u);

  std::size_t distinct_complexes() const { return cache_.size() + hyper_cache_.size(); }

 private:
  std::string status_key(const ToricDivisor& d, const LatticePoint& u) const;

  Fan fan_;
  EngineOptions opt_;
  std::vector<RaySet> subset_rays_;  // indexed by Čech subset mask
  std::unordered_map<std::string, std::vector<std::size_t>> cache_;
  std::unordered_map<std::string, std::vector<std::size_t>> hyper_cache_;
};

struct GradeContribution {
  LatticePoint u;
  std::vector<std::size_t> h;
};

struct CohomologyResult {
  int p_form = 0;
  std::string twist;
  DegreeBox box;
  std::vector<DimValue> h;  // q = 0..n
  bool sound = true;        // box verified to capture all cohomology
  std::vector<std::string> warnings;
  std::uint64_t grades = 0;
  std::size_t distinct_complexes = 0;
  std::vector<GradeContribution> support;  // grades with nonzero cohomology

  DimTable table() const;
};

// Sum of graded Čech cohomology over the box.  Requires a complete fan.
// When the box misses part of the arrangement or some shell grade carries
// cohomology the result is flagged unsound and every entry becomes the
// interval [computed, computed].
CohomologyResult cohomology_dims(const Fan& f, int p_form, const ToricDivisor& d, const DegreeBox& box,
                                 const EngineOptions& options);

struct BottReport {
  std::uint32_t p = 0;
  AmpleCertificate certificate;
  std::vector<CohomologyResult> results;  // p_form = 0..n
  std::vector<std::string> violations;
  bool sound = true;
  bool passed() const { return sound && violations.empty(); }
};

// Sweeps every form degree and asserts h^q = 0 for q > 0.  Throws InputError
// when D is not ample.
BottReport bott_verify(const Fan& f, const ToricDivisor& d, const DegreeBox& box, const EngineOptions& options);

struct DegenerationReport {
  std::uint32_t p = 0;
  DegreeBox box;
  std::vector<std::vector<std::int64_t>> e1;  // e1[p_form][q]
  std::vector<std::int64_t> e1_sums;          // N = 0..2n
  std::vector<std::int64_t> hyper;            // N = 0..2n
  std::optional<std::vector<std::int64_t>> betti;  // per N, smooth complete fans only
  bool sound = true;
  std::vector<std::string> violations;
  bool sums_match() const { return e1_sums == hyper; }
  bool betti_match() const { return !betti || *betti == hyper; }
  bool passed() const { return sound && violations.empty() && sums_match() && betti_match(); }
};

DegenerationReport degeneration_check(const Fan& f, const DegreeBox& box, const EngineOptions& options);

template <class F>
void DegreeBox::for_each(F&& f) const {
  const std::size_t n = rank();
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return;
  LatticePoint u = lo;
  while (true) {
    f(static_cast<const LatticePoint&>(u));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (u[i] < hi[i]) {
        ++u[i];
        for (std::size_t j = i + 1; j < n; ++j) u[j] = lo[j];
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace frobtoric
