#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobtoric/cech.hpp"

namespace frobtoric {

// h^q(P^n, Ω^p_form(k)) by Bott's formula.
std::int64_t bott_pn(int n, int p_form, std::int64_t k, int q);

// h^q(P^n × P^n, Ω^p_form(a, b)) by Künneth.
std::int64_t bott_pn_pn(int n, int p_form, std::int64_t a, std::int64_t b, int q);

// Cohomology dimensions h^0..h^N of one sheaf; known slots are exact.
struct SheafDimSpec {
  std::string label;
  std::vector<DimValue> h;

  static SheafDimSpec exact(std::string label, const std::vector<std::int64_t>& dims);
  static SheafDimSpec unknown(std::string label, std::size_t range);
  bool is_exact() const;
  std::int64_t euler() const;  // exact specs only
};

// 0 -> A -> B -> C -> 0; `unknown` names the slot to solve (0, 1, 2), or
// -1 when every slot is known and only consistency is checked.
struct ShortExactSequence {
  SheafDimSpec a, b, c;
  int unknown = 2;
  std::string str() const;
};

struct ChaseResult {
  SheafDimSpec solved;
  std::vector<std::string> trace;
  bool exact() const { return solved.is_exact(); }
};

// Dimension chase through the long exact sequence.  Every connecting rank
// is an affine function of one free rank per unknown position; the
// positivity of all ranks bounds the free ranks independently, so the
// returned intervals are exactly the hull of the feasible values.  Throws
// InconsistentInput on negative, infeasible or non-additive known data.
ChaseResult les_chase(const ShortExactSequence& s);

struct ChaseStep {
  ShortExactSequence sequence;
  ChaseResult result;
};

struct NonvanishingResult {
  int n = 0;
  int degree = 0;  // cohomological degree of the target
  DimValue value;
  int dual_degree = 0;
  DimValue dual_value;
  std::vector<ChaseStep> chain;       // provenance of value
  std::vector<ChaseStep> dual_chain;  // provenance of dual_value
  bool exact() const { return value.exact() && dual_value.exact(); }
};

// h^{n-2}(Y, Ω^1_Y(3-n)) for a smooth quadric Y in P^n, n >= 4, with the
// Serre-dual h^1(Y, Ω^{n-2}_Y(n-3)).
NonvanishingResult quadric_nonvanishing(int n);

// h^{2n-2}(X, Ω^1_X(1-n, 1-n)) for the (1,1) incidence divisor X in
// P^n × P^n, n >= 2, with the Serre-dual h^1(X, Ω^{2n-2}_X(n-1, n-1)).
NonvanishingResult incidence_nonvanishing(int n);

}  // namespace frobtoric
