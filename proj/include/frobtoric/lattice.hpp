#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobtoric/lattice_point.hpp"

namespace frobtoric {

enum class LatticeKind { N, M };

inline LatticeKind dual_kind(LatticeKind k) { return k == LatticeKind::N ? LatticeKind::M : LatticeKind::N; }

// Desk-scale bounds for the enumerations in this module.
struct GeometryLimits {
  std::size_t max_rank = 6;
  std::size_t max_ray_subsets = 200000;   // (d-1)-subsets tried when computing a dual
  std::size_t max_box_points = 2000000;   // lattice points scanned for a Hilbert basis
};

// A rational polyhedral cone, stored by primitive irredundant generators
// sorted lexicographically, together with its inequality description
// (generators of the dual cone).  Immutable after construction.
class Cone {
 public:
  static Cone from_generators(LatticeKind kind, std::size_t rank, std::vector<LatticePoint> gens,
                              const GeometryLimits& limits = {});
  static Cone zero(LatticeKind kind, std::size_t rank) { return from_generators(kind, rank, {}); }
  static Cone whole_space(LatticeKind kind, std::size_t rank);

  LatticeKind lattice() const { return kind_; }
  std::size_t rank() const { return rank_; }
  const std::vector<LatticePoint>& generators() const { return gens_; }
  // Generators of the dual cone; x is in the cone iff <f, x> >= 0 for all.
  const std::vector<LatticePoint>& inequalities() const { return ineqs_; }

  bool is_zero() const { return gens_.empty(); }
  std::size_t dimension() const;
  bool contains(const LatticePoint& x) const;
  bool contains(const Cone& other) const;

  friend bool operator==(const Cone& a, const Cone& b);

  std::string str() const;

 private:
  LatticeKind kind_ = LatticeKind::N;
  std::size_t rank_ = 0;
  std::vector<LatticePoint> gens_;
  std::vector<LatticePoint> ineqs_;
};

// Raw generators of {u : <u, g> >= 0 for all g}: plus/minus a Z-basis of the
// lineality space followed by the extreme rays of the pointed part, which
// are chosen inside span(gens).
std::vector<LatticePoint> dual_generators(const std::vector<LatticePoint>& gens, std::size_t rank,
                                          const GeometryLimits& limits = {});

Cone dual_cone(const Cone& c, const GeometryLimits& limits = {});

// All faces, from {0} up to c itself, ordered by dimension then generators.
std::vector<Cone> faces(const Cone& c);

bool is_strongly_convex(const Cone& c);
bool is_smooth(const Cone& c);
bool is_simplicial(const Cone& c);

// Minimal generating set of the semigroup c ∩ lattice.  Units (a lattice
// basis of the lineality space, with both signs) come first.
std::vector<LatticePoint> hilbert_basis(const Cone& c, const GeometryLimits& limits = {});

// ---------------------------------------------------------------------------
// Fans

using RaySet = std::vector<int>;  // sorted ray indices

class Fan {
 public:
  std::size_t rank() const { return rank_; }
  const std::vector<LatticePoint>& rays() const { return rays_; }
  // Face-closed cone list, sorted by (size, indices); contains the zero cone.
  const std::vector<RaySet>& cones() const { return cones_; }
  // Maximal cones in lexicographic order of their ray lists.
  const std::vector<RaySet>& maximal_cones() const { return maximal_; }
  // One entry per input ray that had to be rescaled to a primitive vector.
  const std::vector<std::string>& warnings() const { return warnings_; }

  Cone cone(const RaySet& s) const;
  const Cone& maximal_cone(std::size_t i) const { return maximal_geom_[i]; }
  // Number of cones of each dimension d = 0..rank.
  std::vector<std::size_t> f_vector() const;
  bool is_simplicial() const;
  bool is_smooth() const;

 private:
  friend Fan validate_fan(std::vector<LatticePoint>, const std::vector<RaySet>&, const GeometryLimits&);
  std::size_t rank_ = 0;
  std::vector<LatticePoint> rays_;
  std::vector<RaySet> cones_;
  std::vector<RaySet> maximal_;
  std::vector<Cone> maximal_geom_;
  std::vector<std::string> warnings_;
};

// Normalizes rays to primitive vectors (with a warning), adds all faces of
// the listed cones and checks the fan axioms.  Throws FanAxiomViolation.
Fan validate_fan(std::vector<LatticePoint> rays, const std::vector<RaySet>& cones,
                 const GeometryLimits& limits = {});

// Facet pairing and random-direction containment; both must agree or an
// InternalError is raised.
bool is_complete(const Fan& f, std::uint64_t seed = 0x5eed, std::size_t samples = 128);

// Even Betti numbers b_0, b_2, ..., b_{2n} of a complete simplicial fan from
// its f-vector.
std::vector<std::int64_t> betti_oracle(const Fan& f);

// Intersection of two cones of the same lattice, computed from inequalities.
Cone intersect(const Cone& a, const Cone& b, const GeometryLimits& limits = {});

}  // namespace frobtoric
