#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace frobtoric {

// An integer vector in N or M.  Rank is the vector length.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::size_t rank) : coords_(rank, 0) {}
  explicit LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static LatticePoint unit(std::size_t rank, std::size_t i) {
    LatticePoint e(rank);
    e.coords_[i] = 1;
    return e;
  }

  std::size_t rank() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::span<const std::int64_t> coords() const { return coords_; }
  const std::vector<std::int64_t>& vec() const { return coords_; }

  bool is_zero() const;

  LatticePoint& operator+=(const LatticePoint& o);
  LatticePoint& operator-=(const LatticePoint& o);
  LatticePoint& operator*=(std::int64_t s);

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;

  std::string str() const;

 private:
  std::vector<std::int64_t> coords_;
};

LatticePoint operator+(LatticePoint a, const LatticePoint& b);
LatticePoint operator-(LatticePoint a, const LatticePoint& b);
LatticePoint operator-(LatticePoint a);
LatticePoint operator*(std::int64_t s, LatticePoint a);
std::ostream& operator<<(std::ostream& os, const LatticePoint& v);

// <a, b>; ranks must match.
std::int64_t dot(const LatticePoint& a, const LatticePoint& b);

// gcd of the coordinates (0 for the zero vector).
std::int64_t content(const LatticePoint& v);

// v / content(v); zero stays zero.
LatticePoint primitive(const LatticePoint& v);

// Exact integer linear algebra on short integer vectors.  Everything here
// is sized for rank <= 6 and a few dozen vectors; intermediate overflow of
// 64-bit arithmetic raises CapacityError.
namespace ilin {

using Rows = std::vector<LatticePoint>;

std::size_t rank(const Rows& rows, std::size_t ncols);

// Bareiss determinant of a square matrix given by rows.
std::int64_t determinant(const Rows& rows);

// Z-basis of {x in Z^ncols : <r, x> = 0 for every row r}.
Rows integer_kernel(const Rows& rows, std::size_t ncols);

// Some x in Z^ncols with <rows[i], x> = rhs[i], or nullopt when no integral
// solution exists.
std::optional<LatticePoint> solve_integral(const Rows& rows, const std::vector<std::int64_t>& rhs,
                                           std::size_t ncols);

// Rational solution of a square nonsingular system, as (numerators, common
// denominator > 0).  nullopt if singular.
std::optional<std::pair<LatticePoint, std::int64_t>> solve_rational(const Rows& rows,
                                                                    const std::vector<std::int64_t>& rhs);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace ilin

}  // namespace frobtoric
