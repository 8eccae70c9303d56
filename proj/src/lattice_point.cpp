#include "frobtoric/lattice_point.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "frobtoric/errors.hpp"

namespace frobtoric {

bool LatticePoint::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

LatticePoint& LatticePoint::operator+=(const LatticePoint& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = ilin::checked_add(coords_[i], o.coords_[i]);
  return *this;
}

LatticePoint& LatticePoint::operator-=(const LatticePoint& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = ilin::checked_add(coords_[i], -o.coords_[i]);
  return *this;
}

LatticePoint& LatticePoint::operator*=(std::int64_t s) {
  for (auto& c : coords_) c = ilin::checked_mul(c, s);
  return *this;
}

std::string LatticePoint::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
LatticePoint operator-(LatticePoint a, const LatticePoint& b) { return a -= b; }
LatticePoint operator-(LatticePoint a) { return a *= -1; }
LatticePoint operator*(std::int64_t s, LatticePoint a) { return a *= s; }

std::ostream& operator<<(std::ostream& os, const LatticePoint& v) {
  os << '(';
  for (std::size_t i = 0; i < v.rank(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

std::int64_t dot(const LatticePoint& a, const LatticePoint& b) {
  if (a.rank() != b.rank()) throw InputError("rank mismatch in pairing");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s = ilin::checked_add(s, ilin::checked_mul(a[i], b[i]));
  return s;
}

std::int64_t content(const LatticePoint& v) {
  std::int64_t g = 0;
  for (auto c : v.coords()) g = std::gcd(g, c);
  return g;
}

LatticePoint primitive(const LatticePoint& v) {
  const auto g = content(v);
  if (g <= 1) return v;
  LatticePoint r(v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) r[i] = v[i] / g;
  return r;
}

namespace ilin {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError("integer overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("integer overflow in lattice arithmetic");
  return r;
}

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

Matrix to_matrix(const Rows& rows, std::size_t ncols) {
  Matrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.rank() != ncols) throw InputError("row length mismatch");
    m.push_back(r.vec());
  }
  return m;
}

// Extended gcd: returns g >= 0 with g = s*a + t*b.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

// Column reduction A*U = H with U unimodular.  H is in column echelon form:
// pivot_cols[k] is the column holding the k-th pivot and pivot_rows[k] its row.
struct ColumnEchelon {
  Matrix h;  // rows x cols
  Matrix u;  // cols x cols
  std::vector<std::size_t> pivot_rows;
};

ColumnEchelon column_echelon(const Matrix& a, std::size_t ncols) {
  ColumnEchelon ce;
  ce.h = a;
  ce.u.assign(ncols, std::vector<std::int64_t>(ncols, 0));
  for (std::size_t i = 0; i < ncols; ++i) ce.u[i][i] = 1;

  auto col_combine = [&](std::size_t j, std::size_t k, std::int64_t a11, std::int64_t a12, std::int64_t a21,
                         std::int64_t a22) {
    // (col_j, col_k) <- (a11*col_j + a21*col_k, a12*col_j + a22*col_k)
    auto apply = [&](Matrix& m) {
      for (auto& row : m) {
        const auto x = row[j], y = row[k];
        row[j] = checked_add(checked_mul(a11, x), checked_mul(a21, y));
        row[k] = checked_add(checked_mul(a12, x), checked_mul(a22, y));
      }
    };
    apply(ce.h);
    apply(ce.u);
  };

  std::size_t piv = 0;
  for (std::size_t i = 0; i < ce.h.size() && piv < ncols; ++i) {
    for (std::size_t k = piv + 1; k < ncols; ++k) {
      const auto x = ce.h[i][piv], y = ce.h[i][k];
      if (y == 0) continue;
      std::int64_t s, t;
      const auto g = ext_gcd(x, y, s, t);
      // [x y] * [[s, -y/g], [t, x/g]] = [g 0]; determinant 1.
      col_combine(piv, k, s, -y / g, t, x / g);
    }
    if (ce.h[i][piv] != 0) {
      if (ce.h[i][piv] < 0) {
        for (auto& row : ce.h) row[piv] = -row[piv];
        for (auto& row : ce.u) row[piv] = -row[piv];
      }
      ce.pivot_rows.push_back(i);
      ++piv;
    }
  }
  return ce;
}

}  // namespace

std::size_t rank(const Rows& rows, std::size_t ncols) {
  if (rows.empty() || ncols == 0) return 0;
  return column_echelon(to_matrix(rows, ncols), ncols).pivot_rows.size();
}

std::int64_t determinant(const Rows& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].rank() != n) throw InputError("determinant of non-square matrix");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = rows[i][j];
  }
  __int128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  const __int128 d = sign * m[n - 1][n - 1];
  if (d > INT64_MAX || d < INT64_MIN) throw CapacityError("determinant overflow");
  return static_cast<std::int64_t>(d);
}

Rows integer_kernel(const Rows& rows, std::size_t ncols) {
  Rows basis;
  if (rows.empty()) {
    for (std::size_t i = 0; i < ncols; ++i) basis.push_back(LatticePoint::unit(ncols, i));
    return basis;
  }
  const auto ce = column_echelon(to_matrix(rows, ncols), ncols);
  for (std::size_t j = ce.pivot_rows.size(); j < ncols; ++j) {
    LatticePoint v(ncols);
    for (std::size_t i = 0; i < ncols; ++i) v[i] = ce.u[i][j];
    basis.push_back(v);
  }
  return basis;
}

std::optional<LatticePoint> solve_integral(const Rows& rows, const std::vector<std::int64_t>& rhs,
                                           std::size_t ncols) {
  if (rows.size() != rhs.size()) throw InputError("rhs length mismatch");
  if (rows.empty()) return LatticePoint(ncols);
  const auto ce = column_echelon(to_matrix(rows, ncols), ncols);
  std::vector<std::int64_t> y(ncols, 0);
  std::size_t next_pivot = 0;
  for (std::size_t i = 0; i < ce.h.size(); ++i) {
    std::int64_t acc = rhs[i];
    for (std::size_t j = 0; j < next_pivot; ++j) acc = checked_add(acc, -checked_mul(ce.h[i][j], y[j]));
    if (next_pivot < ce.pivot_rows.size() && ce.pivot_rows[next_pivot] == i) {
      const auto piv = ce.h[i][next_pivot];
      if (acc % piv != 0) return std::nullopt;
      y[next_pivot] = acc / piv;
      ++next_pivot;
    } else if (acc != 0) {
      return std::nullopt;
    }
  }
  LatticePoint x(ncols);
  for (std::size_t i = 0; i < ncols; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < ncols; ++j) s = checked_add(s, checked_mul(ce.u[i][j], y[j]));
    x[i] = s;
  }
  return x;
}

std::optional<std::pair<LatticePoint, std::int64_t>> solve_rational(const Rows& rows,
                                                                    const std::vector<std::int64_t>& rhs) {
  // Cramer's rule; n <= 6 so the cost is irrelevant.
  const std::size_t n = rows.size();
  const auto det = determinant(rows);
  if (det == 0) return std::nullopt;
  LatticePoint num(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rows m = rows;
    for (std::size_t i = 0; i < n; ++i) m[i][j] = rhs[i];
    num[j] = determinant(m);
  }
  std::int64_t den = det;
  if (den < 0) {
    den = -den;
    num *= -1;
  }
  std::int64_t g = den;
  for (auto c : num.coords()) g = std::gcd(g, c);
  if (g > 1) {
    for (std::size_t j = 0; j < n; ++j) num[j] /= g;
    den /= g;
  }
  return std::make_pair(num, den);
}

}  // namespace ilin

}  // namespace frobtoric
