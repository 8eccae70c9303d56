#include "frobtoric/bott_oracles.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

#include "frobtoric/errors.hpp"

namespace frobtoric {

namespace {

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = ilin::checked_mul(r, n - k + i) / i;
  return r;
}

}  // namespace

std::int64_t bott_pn(int n, int p_form, std::int64_t k, int q) {
  if (n < 1 || p_form < 0 || p_form > n || q < 0 || q > n)
    throw InputError("bott_pn indices out of range: n=" + std::to_string(n) + " p=" + std::to_string(p_form) +
                     " q=" + std::to_string(q));
  if (k == 0) return q == p_form ? 1 : 0;
  if (q == 0 && k > p_form) return ilin::checked_mul(binom(k + n - p_form, k), binom(k - 1, p_form));
  if (q == n && k < p_form - n) return ilin::checked_mul(binom(-k + p_form, -k), binom(-k - 1, n - p_form));
  return 0;
}

std::int64_t bott_pn_pn(int n, int p_form, std::int64_t a, std::int64_t b, int q) {
  if (p_form < 0 || p_form > 2 * n || q < 0 || q > 2 * n) throw InputError("Künneth indices out of range");
  std::int64_t total = 0;
  for (int p1 = std::max(0, p_form - n); p1 <= std::min(n, p_form); ++p1)
    for (int q1 = std::max(0, q - n); q1 <= std::min(n, q); ++q1)
      total += bott_pn(n, p1, a, q1) * bott_pn(n, p_form - p1, b, q - q1);
  return total;
}

SheafDimSpec SheafDimSpec::exact(std::string label, const std::vector<std::int64_t>& dims) {
  SheafDimSpec s{std::move(label), {}};
  for (auto d : dims) s.h.push_back({d, d});
  return s;
}

SheafDimSpec SheafDimSpec::unknown(std::string label, std::size_t range) {
  return {std::move(label), std::vector<DimValue>(range, DimValue{0, std::numeric_limits<std::int64_t>::max()})};
}

bool SheafDimSpec::is_exact() const {
  return std::all_of(h.begin(), h.end(), [](const DimValue& v) { return v.exact(); });
}

std::int64_t SheafDimSpec::euler() const {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < h.size(); ++i) chi += (i % 2 ? -1 : 1) * h[i].lo;
  return chi;
}

std::string ShortExactSequence::str() const { return "0 -> " + a.label + " -> " + b.label + " -> " + c.label + " -> 0"; }

namespace {

// r = base + coef * x_var (var < 0: constant).
struct Affine {
  std::int64_t base = 0;
  int coef = 0;
  int var = -1;
};

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = std::numeric_limits<std::int64_t>::max();
};

std::string h_name(std::size_t i, const std::string& label) { return "h^" + std::to_string(i) + "(" + label + ")"; }

}  // namespace

ChaseResult les_chase(const ShortExactSequence& s) {
  const SheafDimSpec* slots[3] = {&s.a, &s.b, &s.c};
  const std::size_t range = s.b.h.size();
  if (s.a.h.size() != range || s.c.h.size() != range) throw InputError("exact sequence slots have different ranges");
  if (s.unknown < -1 || s.unknown > 2) throw InputError("unknown slot must be -1, 0, 1 or 2");
  for (int k = 0; k < 3; ++k) {
    if (k == s.unknown) continue;
    if (!slots[k]->is_exact()) throw InputError("known slot " + slots[k]->label + " is not numeric");
    for (std::size_t i = 0; i < range; ++i)
      if (slots[k]->h[i].lo < 0) throw InconsistentInput(h_name(i, slots[k]->label) + " is negative");
  }
  if (s.unknown < 0 && s.b.euler() != s.a.euler() + s.c.euler())
    throw InconsistentInput("Euler characteristics are not additive: chi(B)=" + std::to_string(s.b.euler()) +
                            ", chi(A)+chi(C)=" + std::to_string(s.a.euler() + s.c.euler()));

  ChaseResult out;
  const auto& target = s.unknown >= 0 ? *slots[s.unknown] : s.b;
  out.solved.label = target.label;

  // Positions j = 3i + slot; r_j is the rank of the map leaving position j.
  const std::size_t len = 3 * range;
  std::vector<Affine> rank(len);
  std::vector<Interval> vars;
  std::vector<std::string> var_name;
  std::vector<std::pair<std::size_t, int>> unknown_pos;  // (cohomological degree, var)
  Affine prev;  // rank entering position 0 is zero

  auto impose_nonneg = [&](const Affine& r, const std::string& why) {
    if (r.var < 0) {
      if (r.base < 0) throw InconsistentInput("exactness fails: " + why + " would need a negative rank");
      return;
    }
    auto& iv = vars[static_cast<std::size_t>(r.var)];
    if (r.coef > 0 && -r.base > iv.lo) {
      iv.lo = -r.base;
      out.trace.push_back(var_name[static_cast<std::size_t>(r.var)] + " >= " + std::to_string(iv.lo) + " since " + why);
    } else if (r.coef < 0 && r.base < iv.hi) {
      iv.hi = r.base;
      out.trace.push_back(var_name[static_cast<std::size_t>(r.var)] + " <= " + std::to_string(iv.hi) + " since " + why);
    }
  };

  for (std::size_t j = 0; j < len; ++j) {
    const std::size_t i = j / 3;
    const int slot = static_cast<int>(j % 3);
    const auto& spec = *slots[slot];
    const auto next = j + 1 < len ? h_name((j + 1) / 3, slots[(j + 1) % 3]->label) : std::string("0");
    const auto map_name = "rank(" + h_name(i, spec.label) + " -> " + next + ")";
    if (slot == s.unknown) {
      vars.push_back({});
      var_name.push_back(map_name);
      rank[j] = {0, 1, static_cast<int>(vars.size()) - 1};
      unknown_pos.emplace_back(i, rank[j].var);
    } else {
      const auto d = spec.h[i].lo;
      rank[j] = {d - prev.base, -prev.coef, prev.var};
      impose_nonneg(rank[j], h_name(i, spec.label) + " = " + std::to_string(d));
    }
    prev = rank[j];
  }
  // The last map goes to zero.
  const auto& last = rank[len - 1];
  impose_nonneg(last, "the sequence ends in 0");
  impose_nonneg({-last.base, -last.coef, last.var}, "the sequence ends in 0");

  for (std::size_t v = 0; v < vars.size(); ++v)
    if (vars[v].lo > vars[v].hi) throw InconsistentInput("no rank assignment realizes " + var_name[v]);

  if (s.unknown < 0) {
    out.solved = s.b;
    out.trace.push_back("all ranks forced; sequence consistent");
    return out;
  }

  auto eval = [&](const Affine& r, bool upper) {
    if (r.var < 0) return r.base;
    const auto& iv = vars[static_cast<std::size_t>(r.var)];
    const bool use_hi = (r.coef > 0) == upper;
    return r.base + r.coef * (use_hi ? iv.hi : iv.lo);
  };
  for (const auto& [i, var] : unknown_pos) {
    const std::size_t j = 3 * i + static_cast<std::size_t>(s.unknown);
    const Affine in = j ? rank[j - 1] : Affine{};
    const Affine own = rank[j];
    // dim V_j = r_{j-1} + r_j; the two ranks depend on different free variables.
    const DimValue v{eval(in, false) + eval(own, false), eval(in, true) + eval(own, true)};
    out.solved.h.push_back(v);
    (void)var;
    if (v.exact())
      out.trace.push_back(h_name(i, target.label) + " = " + std::to_string(v.lo));
    else
      out.trace.push_back(h_name(i, target.label) + " in [" + std::to_string(v.lo) + ", " + std::to_string(v.hi) + "]");
  }
  if (out.solved.is_exact()) {
    const auto chi_a = s.unknown == 0 ? out.solved.euler() : s.a.euler();
    const auto chi_b = s.unknown == 1 ? out.solved.euler() : s.b.euler();
    const auto chi_c = s.unknown == 2 ? out.solved.euler() : s.c.euler();
    if (chi_b != chi_a + chi_c) throw InternalError("solved dimensions violate Euler additivity");
  }
  return out;
}

namespace {

std::vector<std::int64_t> exact_values(const SheafDimSpec& s, const std::string& why) {
  std::vector<std::int64_t> v;
  for (const auto& x : s.h) {
    if (!x.exact()) throw InternalError("intermediate sheaf " + s.label + " not forced (" + why + ")");
    v.push_back(x.lo);
  }
  return v;
}

SheafDimSpec solve(std::vector<ChaseStep>& chain, ShortExactSequence seq) {
  auto r = les_chase(seq);
  auto solved = r.solved;
  chain.push_back({std::move(seq), std::move(r)});
  return solved;
}

std::string twist(std::int64_t k) { return k == 0 ? "" : "(" + std::to_string(k) + ")"; }
std::string twist2(std::int64_t a, std::int64_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

SheafDimSpec pn_spec(int n, int p_form, std::int64_t k) {
  std::vector<std::int64_t> h;
  for (int q = 0; q <= n; ++q) h.push_back(bott_pn(n, p_form, k, q));
  return SheafDimSpec::exact("Ω^" + std::to_string(p_form) + "_P" + twist(k), h);
}

SheafDimSpec pnpn_spec(int n, int p_form, std::int64_t a, std::int64_t b) {
  std::vector<std::int64_t> h;
  for (int q = 0; q <= 2 * n; ++q) h.push_back(bott_pn_pn(n, p_form, a, b, q));
  return SheafDimSpec::exact("Ω^" + std::to_string(p_form) + "_PxP" + twist2(a, b), h);
}

// Restriction of Ω^p_P(k) to the quadric: 0 -> Ω^p(k-2) -> Ω^p(k) -> Ω^p(k)|_Y -> 0.
SheafDimSpec quadric_restriction(std::vector<ChaseStep>& chain, int n, int p_form, std::int64_t k) {
  auto c = SheafDimSpec::unknown("Ω^" + std::to_string(p_form) + "_P" + twist(k) + "|_Y", static_cast<std::size_t>(n) + 1);
  auto s = solve(chain, {pn_spec(n, p_form, k - 2), pn_spec(n, p_form, k), c, 2});
  return SheafDimSpec::exact(s.label, exact_values(s, "restriction to the quadric"));
}

SheafDimSpec incidence_restriction(std::vector<ChaseStep>& chain, int n, int p_form, std::int64_t a, std::int64_t b) {
  auto c = SheafDimSpec::unknown("Ω^" + std::to_string(p_form) + "_PxP" + twist2(a, b) + "|_X",
                                 2 * static_cast<std::size_t>(n) + 1);
  auto s = solve(chain, {pnpn_spec(n, p_form, a - 1, b - 1), pnpn_spec(n, p_form, a, b), c, 2});
  return SheafDimSpec::exact(s.label, exact_values(s, "restriction to the incidence divisor"));
}

DimValue at(const SheafDimSpec& s, int i) { return s.h.at(static_cast<std::size_t>(i)); }

}  // namespace

NonvanishingResult quadric_nonvanishing(int n) {
  if (n < 4) throw InputError("quadric computation needs n >= 4");
  if (n > 40) throw CapacityError("quadric computation limited to n <= 40");
  NonvanishingResult r;
  r.n = n;
  r.degree = n - 2;
  r.dual_degree = 1;
  const std::int64_t m = 3 - n;
  {
    // Conormal sequence 0 -> O_Y(m-2) -> Ω^1_P(m)|_Y -> Ω^1_Y(m) -> 0.
    const auto a = quadric_restriction(r.chain, n, 0, m - 2);
    const auto b = quadric_restriction(r.chain, n, 1, m);
    auto c = SheafDimSpec::unknown("Ω^1_Y" + twist(m), static_cast<std::size_t>(n) + 1);
    r.value = at(solve(r.chain, {a, b, c, 2}), r.degree);
  }
  {
    // Top exterior power of the conormal sequence, twisted by n-1:
    // 0 -> Ω^{n-2}_Y(n-3) -> Ω^{n-1}_P(n-1)|_Y -> O_Y -> 0.
    const auto b = quadric_restriction(r.dual_chain, n, n - 1, n - 1);
    const auto c = quadric_restriction(r.dual_chain, n, 0, 0);
    auto a = SheafDimSpec::unknown("Ω^" + std::to_string(n - 2) + "_Y" + twist(n - 3), static_cast<std::size_t>(n) + 1);
    r.dual_value = at(solve(r.dual_chain, {a, b, SheafDimSpec::exact("O_Y", exact_values(c, "O_Y")), 0}), 1);
  }
  return r;
}

NonvanishingResult incidence_nonvanishing(int n) {
  if (n < 2) throw InputError("incidence computation needs n >= 2");
  if (n > 20) throw CapacityError("incidence computation limited to n <= 20");
  NonvanishingResult r;
  r.n = n;
  r.degree = 2 * n - 2;
  r.dual_degree = 1;
  const std::int64_t m = 1 - n;
  const auto range = 2 * static_cast<std::size_t>(n) + 1;
  {
    // 0 -> O_X(m-1, m-1) -> Ω^1_{PxP}(m, m)|_X -> Ω^1_X(m, m) -> 0.
    const auto a = incidence_restriction(r.chain, n, 0, m - 1, m - 1);
    const auto b = incidence_restriction(r.chain, n, 1, m, m);
    auto c = SheafDimSpec::unknown("Ω^1_X" + twist2(m, m), range);
    r.value = at(solve(r.chain, {a, b, c, 2}), r.degree);
  }
  {
    // 0 -> Ω^{2n-2}_X(n-1, n-1) -> Ω^{2n-1}_{PxP}(n, n)|_X -> O_X -> 0.
    const auto b = incidence_restriction(r.dual_chain, n, 2 * n - 1, n, n);
    const auto c = incidence_restriction(r.dual_chain, n, 0, 0, 0);
    auto a = SheafDimSpec::unknown("Ω^" + std::to_string(2 * n - 2) + "_X" + twist2(n - 1, n - 1), range);
    r.dual_value = at(solve(r.dual_chain, {a, b, SheafDimSpec::exact("O_X", exact_values(c, "O_X")), 0}), 1);
  }
  return r;
}

}  // namespace frobtoric
