#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace frobtoric {

bool is_prime(std::uint32_t n);

// Arithmetic in Z/p for a small prime p.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  std::uint32_t reduce(std::int64_t x) const {
    const auto r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

// Dense matrix over Z/p, row-major.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  FpMatrix multiply(const FpMatrix& b, const PrimeField& f) const;
  bool is_zero() const;

 private:
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> a_;
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(FpMatrix& m, const PrimeField& f);

std::size_t rank(FpMatrix m, const PrimeField& f);

// Basis of {x : m x = 0}, one vector per row of the result.
FpMatrix nullspace(const FpMatrix& m, const PrimeField& f);

// Basis of the row space (reduced echelon rows).
FpMatrix row_space(const FpMatrix& m, const PrimeField& f);

// Some x with m x = b, or an empty vector if the system is inconsistent.
std::vector<std::uint32_t> solve(const FpMatrix& m, const std::vector<std::uint32_t>& b, const PrimeField& f,
                                 bool* consistent);

// Sparse vector keyed by a 64-bit coordinate index, sorted, no zeros.
using SparseVec = std::vector<std::pair<std::uint64_t, std::uint32_t>>;

// Incremental rank of a set of sparse vectors by elimination against stored
// pivots (one pivot per leading index).
class SparseEliminator {
 public:
  explicit SparseEliminator(PrimeField f) : f_(f) {}

  // Reduces v against the stored pivots; keeps it if independent.
  bool insert(SparseVec v);
  std::size_t rank() const { return pivots_.size(); }

 private:
  PrimeField f_;
  std::map<std::uint64_t, SparseVec> pivots_;  // leading index -> monic vector
};

// Rank of the span of the given sparse vectors.  Uses a dense elimination
// when the coordinate support fits in dense_limit columns, the sparse path
// otherwise.
std::size_t span_rank(const std::vector<SparseVec>& vecs, const PrimeField& f, std::size_t dense_limit);

}  // namespace frobtoric
