// Exact rational linear algebra shared by every module.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace bkd {

using Q = mpq_class;
using Z = mpz_class;

std::string to_string(const Q& q);

/// Dense row-major rational matrix.
class QMat {
 public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}

  static QMat identity(std::size_t n);
  static QMat from_ints(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Q& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }

  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator-() const;
  QMat scaled(const Q& s) const;
  bool operator==(const QMat& o) const;
  bool operator!=(const QMat& o) const { return !(*this == o); }
  bool operator<(const QMat& o) const;

  QMat transpose() const;
  bool is_zero() const;
  std::vector<Q> column(std::size_t j) const;
  std::vector<Q> apply(const std::vector<Q>& x) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Q> v_;
};

std::size_t rank(QMat m);
Q determinant(QMat m);
/// Inverse of a square matrix; throws std::domain_error when singular.
QMat inverse(const QMat& m);
/// Basis of {x : m x = 0}, one vector per column of the result.
QMat nullspace(const QMat& m);
/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m);
/// Coefficients c_0..c_n of det(I - t m) (so c_0 = 1).
std::vector<Q> det_one_minus_t(const QMat& m);

/// Incremental sparse elimination used for large, very sparse systems.
/// Rows are inserted one at a time and kept in echelon form keyed by pivot.
class SparseEchelon {
 public:
  using Row = std::map<std::size_t, Q>;

  explicit SparseEchelon(std::size_t ncols) : ncols_(ncols) {}

  /// Reduces r against the stored rows; stores it if it is independent.
  /// Returns true when the row was new.
  bool insert(Row r);
  /// Reduces r without storing it.
  Row reduce(Row r) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  std::vector<std::size_t> pivots() const;
  /// Basis of the solution space of the homogeneous system, as dense vectors.
  std::vector<std::vector<Q>> kernel() const;

 private:
  std::size_t ncols_;
  std::map<std::size_t, Row> rows_;  // pivot column -> row with leading 1
};

}  // namespace bkd
