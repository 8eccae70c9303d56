#include "frobtoric/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "frobtoric/errors.hpp"

namespace frobtoric {

namespace {

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls f on every k-subset of {0..n-1} (as an index vector).
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool satisfies(const std::vector<LatticePoint>& ineqs, const LatticePoint& x) {
  return std::all_of(ineqs.begin(), ineqs.end(), [&](const LatticePoint& f) { return dot(f, x) >= 0; });
}

}  // namespace

std::vector<LatticePoint> dual_generators(const std::vector<LatticePoint>& gens, std::size_t rank,
                                          const GeometryLimits& limits) {
  if (rank == 0 || rank > limits.max_rank) throw CapacityError("lattice rank outside 1.." + std::to_string(limits.max_rank));
  std::vector<LatticePoint> out;
  const auto lineality = ilin::integer_kernel(gens, rank);
  for (const auto& l : lineality) {
    out.push_back(l);
    out.push_back(-l);
  }
  const std::size_t d = gens.empty() ? 0 : ilin::rank(gens, rank);
  if (d == 0) return out;

  const std::size_t s = gens.size();
  const auto tries = binom(static_cast<std::int64_t>(s), static_cast<std::int64_t>(d - 1));
  if (static_cast<std::size_t>(tries) > limits.max_ray_subsets)
    throw CapacityError("dual cone: " + std::to_string(tries) + " generator subsets exceed the configured bound");

  std::set<LatticePoint> rays;
  for_each_subset(s, d - 1, [&](const std::vector<std::size_t>& idx) {
    ilin::Rows rows = lineality;
    for (auto i : idx) rows.push_back(gens[i]);
    const auto ker = ilin::integer_kernel(rows, rank);
    if (ker.size() != 1) return;
    const auto y = primitive(ker[0]);
    bool pos = true, neg = true;
    for (const auto& g : gens) {
      const auto v = dot(y, g);
      if (v < 0) pos = false;
      if (v > 0) neg = false;
    }
    if (pos) rays.insert(y);
    else if (neg) rays.insert(-y);
  });
  out.insert(out.end(), rays.begin(), rays.end());
  return out;
}

Cone Cone::from_generators(LatticeKind kind, std::size_t rank, std::vector<LatticePoint> gens,
                           const GeometryLimits& limits) {
  if (rank == 0 || rank > limits.max_rank) throw CapacityError("lattice rank outside 1.." + std::to_string(limits.max_rank));
  std::set<LatticePoint> uniq;
  for (auto& g : gens) {
    if (g.rank() != rank) throw InputError("generator " + g.str() + " has wrong rank");
    if (!g.is_zero()) uniq.insert(primitive(g));
  }
  std::vector<LatticePoint> kept(uniq.begin(), uniq.end());
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<LatticePoint> others = kept;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    if (!others.empty() && satisfies(dual_generators(others, rank, limits), kept[i])) {
      kept = std::move(others);
    } else {
      ++i;
    }
  }
  Cone c;
  c.kind_ = kind;
  c.rank_ = rank;
  c.gens_ = std::move(kept);
  c.ineqs_ = dual_generators(c.gens_, rank, limits);
  return c;
}

Cone Cone::whole_space(LatticeKind kind, std::size_t rank) {
  std::vector<LatticePoint> g;
  for (std::size_t i = 0; i < rank; ++i) {
    g.push_back(LatticePoint::unit(rank, i));
    g.push_back(-LatticePoint::unit(rank, i));
  }
  return from_generators(kind, rank, std::move(g));
}

std::size_t Cone::dimension() const { return gens_.empty() ? 0 : ilin::rank(gens_, rank_); }

bool Cone::contains(const LatticePoint& x) const {
  if (x.rank() != rank_) throw InputError("point rank mismatch");
  return satisfies(ineqs_, x);
}

bool Cone::contains(const Cone& other) const {
  if (other.kind_ != kind_ || other.rank_ != rank_) return false;
  return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const LatticePoint& g) { return contains(g); });
}

bool operator==(const Cone& a, const Cone& b) { return a.contains(b) && b.contains(a); }

std::string Cone::str() const {
  std::ostringstream os;
  os << (kind_ == LatticeKind::N ? "N" : "M") << "-cone{";
  for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : "") << gens_[i];
  os << '}';
  return os.str();
}

Cone dual_cone(const Cone& c, const GeometryLimits& limits) {
  return Cone::from_generators(dual_kind(c.lattice()), c.rank(), c.inequalities(), limits);
}

Cone intersect(const Cone& a, const Cone& b, const GeometryLimits& limits) {
  if (a.lattice() != b.lattice() || a.rank() != b.rank()) throw InputError("intersecting cones of different lattices");
  auto ineqs = a.inequalities();
  ineqs.insert(ineqs.end(), b.inequalities().begin(), b.inequalities().end());
  return Cone::from_generators(a.lattice(), a.rank(), dual_generators(ineqs, a.rank(), limits), limits);
}

std::vector<Cone> faces(const Cone& c) {
  const auto& gens = c.generators();
  if (gens.size() > 63) throw CapacityError("too many generators for face enumeration");
  const std::uint64_t all = gens.empty() ? 0 : (~std::uint64_t{0} >> (64 - gens.size()));
  // Every face is an intersection of the zero sets of dual generators.
  std::set<std::uint64_t> masks{all};
  for (const auto& f : c.inequalities()) {
    std::uint64_t z = 0;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (dot(f, gens[i]) == 0) z |= std::uint64_t{1} << i;
    std::vector<std::uint64_t> add;
    for (auto m : masks) add.push_back(m & z);
    masks.insert(add.begin(), add.end());
  }
  std::vector<Cone> out;
  for (auto m : masks) {
    std::vector<LatticePoint> sub;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (m >> i & 1) sub.push_back(gens[i]);
    out.push_back(Cone::from_generators(c.lattice(), c.rank(), std::move(sub)));
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    return a.generators() < b.generators();
  });
  return out;
}

bool is_strongly_convex(const Cone& c) {
  return std::none_of(c.generators().begin(), c.generators().end(),
                      [&](const LatticePoint& g) { return c.contains(-g); });
}

bool is_simplicial(const Cone& c) { return c.dimension() == c.generators().size(); }

bool is_smooth(const Cone& c) {
  const auto& g = c.generators();
  if (!is_simplicial(c)) return false;
  if (g.empty()) return true;
  const std::size_t d = g.size(), n = c.rank();
  std::int64_t gcd_minors = 0;
  for_each_subset(n, d, [&](const std::vector<std::size_t>& cols) {
    ilin::Rows m;
    for (const auto& v : g) {
      LatticePoint row(d);
      for (std::size_t j = 0; j < d; ++j) row[j] = v[cols[j]];
      m.push_back(row);
    }
    gcd_minors = std::gcd(gcd_minors, ilin::determinant(m));
  });
  return gcd_minors == 1;
}

std::vector<LatticePoint> hilbert_basis(const Cone& c, const GeometryLimits& limits) {
  const std::size_t n = c.rank();
  std::vector<LatticePoint> out;
  const auto lineality = ilin::integer_kernel(c.inequalities(), n);
  for (const auto& l : lineality) {
    out.push_back(l);
    out.push_back(-l);
  }
  // Project along the lineality space onto a pointed cone in Z^k.
  const auto proj = ilin::integer_kernel(lineality, n);
  const std::size_t k = proj.size();
  if (k == 0) return out;
  auto project = [&](const LatticePoint& x) {
    LatticePoint y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = dot(proj[i], x);
    return y;
  };
  std::vector<LatticePoint> image;
  for (const auto& g : c.generators()) image.push_back(project(g));
  const auto pointed = Cone::from_generators(c.lattice(), k, image, limits);
  if (pointed.is_zero()) return out;

  LatticePoint lo(k), hi(k);
  for (const auto& g : pointed.generators())
    for (std::size_t i = 0; i < k; ++i) (g[i] < 0 ? lo[i] : hi[i]) += g[i];
  double volume = 1;
  for (std::size_t i = 0; i < k; ++i) volume *= static_cast<double>(hi[i] - lo[i] + 1);
  if (volume > static_cast<double>(limits.max_box_points))
    throw CapacityError("Hilbert basis: fundamental box of " + std::to_string(static_cast<long long>(volume)) +
                        " points exceeds the configured bound");

  LatticePoint grading(k);
  for (const auto& f : pointed.inequalities()) grading += f;

  std::vector<std::pair<std::int64_t, LatticePoint>> cand;
  LatticePoint x = lo;
  while (true) {
    if (!x.is_zero() && pointed.contains(x)) cand.emplace_back(dot(grading, x), x);
    std::size_t i = 0;
    while (i < k && x[i] == hi[i]) {
      x[i] = lo[i];
      ++i;
    }
    if (i == k) break;
    ++x[i];
  }
  std::sort(cand.begin(), cand.end());
  std::vector<LatticePoint> irreducible;
  for (const auto& [deg, pt] : cand) {
    const bool reducible = std::any_of(irreducible.begin(), irreducible.end(), [&](const LatticePoint& h) {
      return dot(grading, h) < deg && pointed.contains(pt - h);
    });
    if (!reducible) irreducible.push_back(pt);
  }
  for (const auto& h : irreducible) {
    auto lift = ilin::solve_integral(proj, h.vec(), n);
    if (!lift) throw InternalError("Hilbert basis element " + h.str() + " has no integral preimage");
    out.push_back(*lift);
  }
  return out;
}

// ---------------------------------------------------------------------------

Cone Fan::cone(const RaySet& s) const {
  std::vector<LatticePoint> g;
  for (int i : s) g.push_back(rays_.at(static_cast<std::size_t>(i)));
  return Cone::from_generators(LatticeKind::N, rank_, std::move(g));
}

std::vector<std::size_t> Fan::f_vector() const {
  std::vector<std::size_t> f(rank_ + 1, 0);
  for (const auto& s : cones_) ++f[cone(s).dimension()];
  return f;
}

bool Fan::is_simplicial() const {
  return std::all_of(maximal_geom_.begin(), maximal_geom_.end(), [](const Cone& c) { return frobtoric::is_simplicial(c); });
}

bool Fan::is_smooth() const {
  return std::all_of(maximal_geom_.begin(), maximal_geom_.end(), [](const Cone& c) { return frobtoric::is_smooth(c); });
}

Fan validate_fan(std::vector<LatticePoint> rays, const std::vector<RaySet>& cones, const GeometryLimits& limits) {
  if (rays.empty()) throw InputError("fan has no rays");
  Fan f;
  f.rank_ = rays.front().rank();
  if (f.rank_ == 0 || f.rank_ > limits.max_rank) throw CapacityError("fan rank outside 1.." + std::to_string(limits.max_rank));
  std::map<LatticePoint, int> index;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].rank() != f.rank_) throw InputError("ray " + std::to_string(i) + " has wrong rank");
    if (rays[i].is_zero()) throw InputError("ray " + std::to_string(i) + " is zero");
    const auto p = primitive(rays[i]);
    if (p != rays[i]) {
      f.warnings_.push_back("ray " + std::to_string(i) + " " + rays[i].str() + " normalized to primitive " + p.str());
      rays[i] = p;
    }
    if (!index.emplace(rays[i], static_cast<int>(i)).second)
      throw InputError("ray " + std::to_string(i) + " duplicates an earlier ray");
  }
  f.rays_ = std::move(rays);

  std::vector<RaySet> listed;
  std::vector<Cone> geom;
  std::vector<std::set<RaySet>> face_sets;
  for (std::size_t c = 0; c < cones.size(); ++c) {
    RaySet s = cones[c];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int r : s)
      if (r < 0 || static_cast<std::size_t>(r) >= f.rays_.size())
        throw InputError("cone " + std::to_string(c) + " references unknown ray " + std::to_string(r));
    auto cone = f.cone(s);
    if (!is_strongly_convex(cone))
      throw FanAxiomViolation(c, c, "cone " + std::to_string(c) + " is not strongly convex");
    if (cone.generators().size() != s.size())
      throw FanAxiomViolation(c, c, "cone " + std::to_string(c) + " lists a ray that is not one of its edges");
    std::set<RaySet> fs;
    for (const auto& face : faces(cone)) {
      RaySet r;
      for (const auto& g : face.generators()) r.push_back(index.at(g));
      std::sort(r.begin(), r.end());
      fs.insert(r);
    }
    listed.push_back(s);
    geom.push_back(std::move(cone));
    face_sets.push_back(std::move(fs));
  }

  for (std::size_t i = 0; i < listed.size(); ++i) {
    for (std::size_t j = i + 1; j < listed.size(); ++j) {
      RaySet common;
      std::set_intersection(listed[i].begin(), listed[i].end(), listed[j].begin(), listed[j].end(),
                            std::back_inserter(common));
      const auto meet = intersect(geom[i], geom[j], limits);
      const bool ok = face_sets[i].count(common) && face_sets[j].count(common) && meet == f.cone(common);
      if (!ok)
        throw FanAxiomViolation(i, j, "cones " + std::to_string(i) + " and " + std::to_string(j) + " meet in " +
                                          meet.str() + ", which is not a common face");
    }
  }

  std::set<RaySet> all;
  for (const auto& fs : face_sets) all.insert(fs.begin(), fs.end());
  if (all.empty()) all.insert(RaySet{});
  f.cones_.assign(all.begin(), all.end());
  std::sort(f.cones_.begin(), f.cones_.end(), [](const RaySet& a, const RaySet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& s : f.cones_) {
    const bool maximal = std::none_of(f.cones_.begin(), f.cones_.end(), [&](const RaySet& t) {
      return t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end());
    });
    if (maximal) f.maximal_.push_back(s);
  }
  std::sort(f.maximal_.begin(), f.maximal_.end());
  for (const auto& s : f.maximal_) f.maximal_geom_.push_back(f.cone(s));
  return f;
}

bool is_complete(const Fan& f, std::uint64_t seed, std::size_t samples) {
  const std::size_t n = f.rank();
  bool pairing = true;
  std::map<RaySet, int> facet_count;
  for (std::size_t i = 0; i < f.maximal_cones().size(); ++i) {
    const auto& c = f.maximal_cone(i);
    if (c.dimension() != n) {
      pairing = false;
      continue;
    }
    for (const auto& face : faces(c)) {
      if (face.dimension() + 1 != n) continue;
      RaySet r;
      for (const auto& g : face.generators())
        r.push_back(static_cast<int>(std::find(f.rays().begin(), f.rays().end(), g) - f.rays().begin()));
      std::sort(r.begin(), r.end());
      ++facet_count[r];
    }
  }
  for (const auto& [facet, count] : facet_count)
    if (count != 2) pairing = false;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-1000000, 1000000);
  bool sampled = true;
  for (std::size_t s = 0; s < samples && sampled; ++s) {
    LatticePoint x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = coord(rng);
    bool hit = false;
    for (std::size_t i = 0; i < f.maximal_cones().size() && !hit; ++i) hit = f.maximal_cone(i).contains(x);
    sampled = hit;
  }
  if (pairing != sampled)
    throw InternalError(std::string("completeness tests disagree: facet pairing says ") + (pairing ? "complete" : "incomplete") +
                        ", sampling says " + (sampled ? "complete" : "incomplete"));
  return pairing;
}

std::vector<std::int64_t> betti_oracle(const Fan& f) {
  if (!f.is_simplicial()) throw InputError("betti oracle needs a simplicial fan");
  if (!is_complete(f)) throw InputError("betti oracle needs a complete fan");
  const auto d = f.f_vector();
  const auto n = static_cast<std::int64_t>(f.rank());
  std::vector<std::int64_t> b;
  for (std::int64_t p = 0; p <= n; ++p) {
    std::int64_t s = 0;
    for (std::int64_t k = p; k <= n; ++k)
      s += ((k - p) % 2 ? -1 : 1) * binom(k, p) * static_cast<std::int64_t>(d[static_cast<std::size_t>(n - k)]);
    b.push_back(s);
  }
  return b;
}

}  // namespace frobtoric
