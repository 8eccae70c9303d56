#include "frobtoric/cech.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "frobtoric/errors.hpp"
#include "frobtoric/forms.hpp"

namespace frobtoric {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

SparseVec to_sparse(const std::map<std::uint64_t, std::uint32_t>& acc) {
  SparseVec v;
  v.reserve(acc.size());
  for (const auto& [k, c] : acc)
    if (c) v.emplace_back(k, c);
  return v;
}

constexpr std::size_t kMaxCechCones = 16;

}  // namespace

std::uint64_t DegreeBox::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (hi[i] < lo[i]) return 0;
    const auto w = static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
    if (s > (std::uint64_t{1} << 62) / w) throw CapacityError("degree box size overflows");
    s *= w;
  }
  return s;
}

bool DegreeBox::contains(const LatticePoint& u) const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (u[i] < lo[i] || u[i] > hi[i]) return false;
  return true;
}

bool DegreeBox::on_shell(const LatticePoint& u) const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (u[i] == lo[i] || u[i] == hi[i]) return true;
  return false;
}

bool DegreeBox::contains(const DegreeBox& o) const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (o.lo[i] < lo[i] || o.hi[i] > hi[i]) return false;
  return true;
}

std::string DegreeBox::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rank(); ++i) os << (i ? "x" : "") << '[' << lo[i] << ',' << hi[i] << ']';
  return os.str();
}

DegreeBox arrangement_box(const Fan& f, const ToricDivisor& d) {
  const auto verts = arrangement_vertices(f, d);
  const std::size_t n = f.rank();
  DegreeBox b{LatticePoint(n), LatticePoint(n)};
  bool first = true;
  for (const auto& [num, den] : verts)
    for (std::size_t i = 0; i < n; ++i) {
      const auto lo = floor_div(num[i], den), hi = ceil_div(num[i], den);
      b.lo[i] = first ? lo : std::min(b.lo[i], lo);
      b.hi[i] = first ? hi : std::max(b.hi[i], hi);
      if (i + 1 == n) first = false;
    }
  return b;
}

DegreeBox default_box(const Fan& f, const ToricDivisor& d, int margin) {
  auto b = arrangement_box(f, d);
  const std::int64_t m = margin < 0 ? static_cast<std::int64_t>(f.rank()) + 1 : margin;
  for (std::size_t i = 0; i < f.rank(); ++i) {
    b.lo[i] -= m;
    b.hi[i] += m;
  }
  return b;
}

void DimTable::merge(const DimTable& o) {
  for (const auto& [k, v] : o.entries) {
    auto& slot = entries[k];
    slot.lo += v.lo;
    slot.hi += v.hi;
  }
}

SparseVec CechComplex::differential(const SparseVec& x) const {
  const PrimeField f(p);
  const std::uint64_t imask = (std::uint64_t{1} << rank) - 1;
  std::map<std::uint64_t, std::uint32_t> acc;
  auto add = [&](std::uint64_t key, int sign, std::uint32_t c) {
    auto& slot = acc[key];
    slot = sign > 0 ? f.add(slot, c) : f.sub(slot, c);
  };
  for (const auto& [key, c] : x) {
    const auto s = key >> rank;
    const auto i = static_cast<std::uint32_t>(key & imask);
    for (std::size_t j = 0; j < cones; ++j) {
      if (s >> j & 1) continue;
      const int sign = std::popcount(s & ((std::uint64_t{1} << j) - 1)) % 2 ? -1 : 1;
      add(((s | std::uint64_t{1} << j) << rank) | i, sign, c);
    }
    if (!total) continue;
    const int q = std::popcount(s) - 1;
    for (std::size_t k = 0; k < rank; ++k) {
      const auto uk = f.reduce(u[k]);
      if (!uk || (i >> k & 1)) continue;
      const int sign = mv::wedge_sign(1u << k, i) * (q % 2 ? -1 : 1);
      add((s << rank) | i | (1u << k), sign, f.mul(uk, c));
    }
  }
  return to_sparse(acc);
}

std::vector<std::size_t> CechComplex::level_dims() const {
  std::vector<std::size_t> out;
  for (const auto& b : basis) out.push_back(b.size());
  return out;
}

std::vector<std::size_t> CechComplex::cohomology(std::size_t dense_limit) const {
  const PrimeField f(p);
  std::vector<std::size_t> ranks(basis.size(), 0);
  for (std::size_t k = 0; k + 1 < basis.size(); ++k) {
    if (basis[k].empty()) continue;
    std::vector<SparseVec> images;
    images.reserve(basis[k].size());
    for (const auto& b : basis[k]) images.push_back(differential(b));
    ranks[k] = span_rank(images, f, dense_limit);
  }
  std::vector<std::size_t> h(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto below = k ? ranks[k - 1] : 0;
    if (ranks[k] + below > basis[k].size()) throw InternalError("Čech ranks exceed cochain dimension");
    h[k] = basis[k].size() - ranks[k] - below;
  }
  return h;
}

CechEngine::CechEngine(const Fan& f, EngineOptions options) : fan_(f), opt_(std::move(options)) {
  if (!is_prime(opt_.p)) throw InputError("not a prime: " + std::to_string(opt_.p));
  const auto& maxes = fan_.maximal_cones();
  const std::size_t m = maxes.size();
  if (m > kMaxCechCones) throw CapacityError("Čech cover limited to " + std::to_string(kMaxCechCones) + " maximal cones");
  if (fan_.rank() > 16) throw CapacityError("rank too large for the Čech engine");
  if (opt_.cone_order.empty()) {
    opt_.cone_order.resize(m);
    std::iota(opt_.cone_order.begin(), opt_.cone_order.end(), 0);
  }
  auto sorted = opt_.cone_order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted.size() != m || sorted[i] != i) throw InputError("cone order is not a permutation of the maximal cones");
  subset_rays_.assign(std::size_t{1} << m, {});
  for (std::size_t s = 1; s < subset_rays_.size(); ++s) {
    RaySet acc;
    bool first = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (!(s >> j & 1)) continue;
      const auto& c = maxes[opt_.cone_order[j]];
      if (first) {
        acc = c;
        first = false;
      } else {
        RaySet out;
        std::set_intersection(acc.begin(), acc.end(), c.begin(), c.end(), std::back_inserter(out));
        acc = std::move(out);
      }
    }
    subset_rays_[s] = std::move(acc);
  }
}

CechComplex CechEngine::complex(int p_form, const ToricDivisor& d, const LatticePoint& u) const {
  const std::size_t n = fan_.rank(), m = fan_.maximal_cones().size();
  if (p_form < 0 || static_cast<std::size_t>(p_form) > n) throw InputError("form degree out of range");
  check_divisor(fan_, d);
  const PrimeField f(opt_.p);
  CechComplex c;
  c.rank = n;
  c.cones = m;
  c.p = opt_.p;
  c.u = u;
  c.basis.resize(m);
  const auto masks = mv::basis_masks(n, p_form);
  for (std::size_t s = 1; s < subset_rays_.size(); ++s) {
    const auto chart = ChartData::of(fan_, subset_rays_[s], d.coeffs);
    const auto b = membership_basis(chart, u, p_form, f);
    if (!b) continue;
    auto& level = c.basis[static_cast<std::size_t>(std::popcount(s)) - 1];
    for (std::size_t r = 0; r < b->rows(); ++r) {
      SparseVec v;
      for (std::size_t j = 0; j < masks.size(); ++j)
        if ((*b)(r, j)) v.emplace_back((std::uint64_t{s} << n) | masks[j], (*b)(r, j));
      level.push_back(std::move(v));
    }
  }
  return c;
}

CechComplex CechEngine::total_complex(const LatticePoint& u) const {
  const std::size_t n = fan_.rank(), m = fan_.maximal_cones().size();
  const PrimeField f(opt_.p);
  CechComplex c;
  c.rank = n;
  c.cones = m;
  c.p = opt_.p;
  c.u = u;
  c.total = true;
  c.basis.resize(m + n);
  for (std::size_t s = 1; s < subset_rays_.size(); ++s) {
    const auto chart = ChartData::of(fan_, subset_rays_[s]);
    const auto q = static_cast<std::size_t>(std::popcount(s)) - 1;
    for (std::size_t pf = 0; pf <= n; ++pf) {
      const auto b = membership_basis(chart, u, static_cast<int>(pf), f);
      if (!b) break;
      const auto masks = mv::basis_masks(n, static_cast<int>(pf));
      for (std::size_t r = 0; r < b->rows(); ++r) {
        SparseVec v;
        for (std::size_t j = 0; j < masks.size(); ++j)
          if ((*b)(r, j)) v.emplace_back((std::uint64_t{s} << n) | masks[j], (*b)(r, j));
        c.basis[q + pf].push_back(std::move(v));
      }
    }
  }
  return c;
}

std::string CechEngine::status_key(const ToricDivisor& d, const LatticePoint& u) const {
  std::string key;
  key.reserve(fan_.rays().size());
  for (std::size_t r = 0; r < fan_.rays().size(); ++r) {
    const auto v = dot(u, fan_.rays()[r]) + d.coeffs[r];
    key.push_back(v < 0 ? '<' : v == 0 ? '=' : '>');
  }
  return key;
}

namespace {

std::vector<std::size_t> truncate_levels(std::vector<std::size_t> h, std::size_t top, const LatticePoint& u) {
  for (std::size_t k = top + 1; k < h.size(); ++k)
    if (h[k]) throw InternalError("cohomology above the dimension at grade " + u.str());
  h.resize(top + 1, 0);
  return h;
}

}  // namespace

std::vector<std::size_t> CechEngine::grade_dims(int p_form, const ToricDivisor& d, const LatticePoint& u) {
  check_divisor(fan_, d);
  std::string key = std::to_string(p_form) + '|';
  for (auto a : d.coeffs) key += std::to_string(a) + ',';
  key += status_key(d, u);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto h = truncate_levels(complex(p_form, d, u).cohomology(opt_.dense_limit), fan_.rank(), u);
  return cache_.emplace(key, std::move(h)).first->second;
}

std::vector<std::size_t> CechEngine::hyper_grade_dims(const LatticePoint& u) {
  const auto zero = ToricDivisor::zero(fan_);
  auto key = status_key(zero, u);
  const PrimeField f(opt_.p);
  for (std::size_t i = 0; i < u.rank(); ++i) key += ',' + std::to_string(f.reduce(u[i]));
  auto it = hyper_cache_.find(key);
  if (it != hyper_cache_.end()) return it->second;
  auto h = truncate_levels(total_complex(u).cohomology(opt_.dense_limit), 2 * fan_.rank(), u);
  return hyper_cache_.emplace(key, std::move(h)).first->second;
}

DimTable CohomologyResult::table() const {
  DimTable t;
  for (std::size_t q = 0; q < h.size(); ++q) t.entries[{static_cast<int>(q), p_form, twist}] = h[q];
  return t;
}

namespace {

void check_box(const Fan& f, const DegreeBox& box, const EngineOptions& options) {
  if (box.rank() != f.rank() || box.hi.rank() != f.rank()) throw InputError("degree box rank does not match the fan");
  if (box.size() > options.max_grades)
    throw CapacityError("degree box " + box.str() + " has " + std::to_string(box.size()) + " grades, limit " +
                        std::to_string(options.max_grades));
}

}  // namespace

CohomologyResult cohomology_dims(const Fan& f, int p_form, const ToricDivisor& d, const DegreeBox& box,
                                 const EngineOptions& options) {
  check_divisor(f, d);
  if (!is_complete(f)) throw InputError("Čech cohomology is only computed on complete fans");
  check_box(f, box, options);
  CechEngine engine(f, options);
  const std::size_t n = f.rank();
  CohomologyResult r;
  r.p_form = p_form;
  r.twist = d.label();
  r.box = box;
  std::vector<std::int64_t> sums(n + 1, 0);
  bool shell_hit = false;
  box.for_each([&](const LatticePoint& u) {
    ++r.grades;
    const auto h = engine.grade_dims(p_form, d, u);
    if (std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; })) return;
    if (box.on_shell(u)) shell_hit = true;
    for (std::size_t q = 0; q <= n; ++q) sums[q] += static_cast<std::int64_t>(h[q]);
    r.support.push_back({u, h});
  });
  r.distinct_complexes = engine.distinct_complexes();
  if (!box.contains(arrangement_box(f, d))) {
    r.sound = false;
    r.warnings.push_back("box " + box.str() + " does not contain every arrangement vertex; widen the box");
  }
  if (shell_hit) {
    r.sound = false;
    r.warnings.push_back("cohomology found on the boundary shell of " + box.str() + "; widen the box");
  }
  for (auto s : sums) r.h.push_back({s, s});
  return r;
}

BottReport bott_verify(const Fan& f, const ToricDivisor& d, const DegreeBox& box, const EngineOptions& options) {
  BottReport rep;
  rep.p = options.p;
  rep.certificate = ample_check(f, d);
  if (!rep.certificate.ample) {
    const auto& w = *rep.certificate.failing_wall;
    throw InputError("divisor " + d.label() + " is not ample: ray " + std::to_string(w.ray) + " against maximal cone " +
                     std::to_string(w.cone) + " gives " + std::to_string(w.value) + " <= " + std::to_string(w.bound));
  }
  for (int pf = 0; pf <= static_cast<int>(f.rank()); ++pf) {
    auto r = cohomology_dims(f, pf, d, box, options);
    rep.sound = rep.sound && r.sound;
    for (std::size_t q = 1; q < r.h.size(); ++q)
      if (r.h[q].hi != 0)
        rep.violations.push_back(std::string(r.sound ? "THEOREM-VIOLATION" : "nonzero (unsound box)") + ": h^" +
                                 std::to_string(q) + "(Ω̃^" + std::to_string(pf) + " ⊗ O(D)) = " +
                                 std::to_string(r.h[q].hi));
    rep.results.push_back(std::move(r));
  }
  return rep;
}

DegenerationReport degeneration_check(const Fan& f, const DegreeBox& box, const EngineOptions& options) {
  if (!is_complete(f)) throw InputError("degeneration is only checked on complete fans");
  check_box(f, box, options);
  const std::size_t n = f.rank();
  const auto zero = ToricDivisor::zero(f);
  DegenerationReport rep;
  rep.p = options.p;
  rep.box = box;
  rep.e1_sums.assign(2 * n + 1, 0);
  rep.hyper.assign(2 * n + 1, 0);
  for (std::size_t pf = 0; pf <= n; ++pf) {
    const auto r = cohomology_dims(f, static_cast<int>(pf), zero, box, options);
    rep.sound = rep.sound && r.sound;
    std::vector<std::int64_t> row;
    for (std::size_t q = 0; q <= n; ++q) {
      row.push_back(r.h[q].hi);
      rep.e1_sums[pf + q] += r.h[q].hi;
    }
    rep.e1.push_back(std::move(row));
  }
  CechEngine engine(f, options);
  box.for_each([&](const LatticePoint& u) {
    const auto h = engine.hyper_grade_dims(u);
    bool any = false;
    for (std::size_t k = 0; k < h.size(); ++k) {
      rep.hyper[k] += static_cast<std::int64_t>(h[k]);
      any = any || h[k];
    }
    if (any && box.on_shell(u)) rep.sound = false;
  });
  if (!rep.sums_match()) rep.violations.push_back("THEOREM-VIOLATION: E1 sums differ from hypercohomology dimensions");
  if (f.is_smooth()) {
    const auto b = betti_oracle(f);
    std::vector<std::int64_t> per(2 * n + 1, 0);
    for (std::size_t i = 0; i < b.size(); ++i) per[2 * i] = b[i];
    rep.betti = per;
    if (!rep.betti_match()) rep.violations.push_back("hypercohomology differs from the Betti numbers of the fan");
  }
  return rep;
}

}  // namespace frobtoric
