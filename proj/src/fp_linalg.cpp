#include "frobtoric/fp_linalg.hpp"

#include <algorithm>
#include <unordered_map>

#include "frobtoric/errors.hpp"

namespace frobtoric {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw InternalError("inverse of zero in Z/" + std::to_string(p_));
  return pow(a, p_ - 2);
}

FpMatrix FpMatrix::multiply(const FpMatrix& b, const PrimeField& f) const {
  if (cols_ != b.rows_) throw InternalError("matrix shape mismatch");
  FpMatrix c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto x = (*this)(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

bool FpMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::uint32_t x) { return x == 0; });
}

std::vector<std::size_t> row_reduce(FpMatrix& m, const PrimeField& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(FpMatrix m, const PrimeField& f) { return row_reduce(m, f).size(); }

FpMatrix nullspace(const FpMatrix& m, const PrimeField& f) {
  FpMatrix r = m;
  const auto pivots = row_reduce(r, f);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  FpMatrix out(m.cols() - pivots.size(), m.cols());
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    out(k, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) out(k, pivots[i]) = f.neg(r(i, free));
    ++k;
  }
  return out;
}

FpMatrix row_space(const FpMatrix& m, const PrimeField& f) {
  FpMatrix r = m;
  const auto pivots = row_reduce(r, f);
  FpMatrix out(pivots.size(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = r(i, j);
  return out;
}

std::vector<std::uint32_t> solve(const FpMatrix& m, const std::vector<std::uint32_t>& b, const PrimeField& f,
                                 bool* consistent) {
  FpMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b.at(i);
  }
  const auto pivots = row_reduce(aug, f);
  const bool ok = pivots.empty() || pivots.back() != m.cols();
  if (consistent) *consistent = ok;
  if (!ok) return {};
  std::vector<std::uint32_t> x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

bool SparseEliminator::insert(SparseVec v) {
  SparseVec scratch;
  while (!v.empty()) {
    const auto lead = v.front().first;
    const auto it = pivots_.find(lead);
    if (it == pivots_.end()) {
      const auto inv = f_.inv(v.front().second);
      for (auto& [idx, val] : v) val = f_.mul(val, inv);
      pivots_.emplace(lead, std::move(v));
      return true;
    }
    // v <- v - v[lead] * pivot
    const auto factor = v.front().second;
    const auto& pv = it->second;
    scratch.clear();
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < pv.size()) {
      if (j == pv.size() || (i < v.size() && v[i].first < pv[j].first)) {
        scratch.push_back(v[i++]);
      } else if (i == v.size() || pv[j].first < v[i].first) {
        scratch.emplace_back(pv[j].first, f_.neg(f_.mul(factor, pv[j].second)));
        ++j;
      } else {
        const auto val = f_.sub(v[i].second, f_.mul(factor, pv[j].second));
        if (val) scratch.emplace_back(v[i].first, val);
        ++i;
        ++j;
      }
    }
    v.swap(scratch);
  }
  return false;
}

std::size_t span_rank(const std::vector<SparseVec>& vecs, const PrimeField& f, std::size_t dense_limit) {
  if (vecs.empty()) return 0;
  std::unordered_map<std::uint64_t, std::size_t> col;
  for (const auto& v : vecs)
    for (const auto& [idx, val] : v) col.emplace(idx, col.size());
  if (col.size() <= dense_limit) {
    FpMatrix m(vecs.size(), col.size());
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (const auto& [idx, val] : vecs[i]) m(i, col.at(idx)) = val;
    return rank(std::move(m), f);
  }
  SparseEliminator e(f);
  for (const auto& v : vecs) e.insert(v);
  return e.rank();
}

}  // namespace frobtoric
