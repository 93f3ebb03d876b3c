#include "bkd/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace bkd {

std::string to_string(const Q& q) { return q.get_str(); }

QMat QMat::identity(std::size_t n) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat QMat::from_ints(const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  QMat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged integer matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  QMat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Q& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
  QMat r = *this;
  for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] += o.v_[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const { return *this + (-o); }

QMat QMat::operator-() const {
  QMat r = *this;
  for (auto& x : r.v_) x = -x;
  return r;
}

QMat QMat::scaled(const Q& s) const {
  QMat r = *this;
  for (auto& x : r.v_) x *= s;
  return r;
}

bool QMat::operator==(const QMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && v_ == o.v_;
}

bool QMat::operator<(const QMat& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (v_[i] < o.v_[i]) return true;
    if (o.v_[i] < v_[i]) return false;
  }
  return false;
}

QMat QMat::transpose() const {
  QMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool QMat::is_zero() const {
  for (const auto& x : v_)
    if (sgn(x) != 0) return false;
  return true;
}

std::vector<Q> QMat::column(std::size_t j) const {
  std::vector<Q> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<Q> QMat::apply(const std::vector<Q>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<Q> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Q inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Q f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

Q determinant(QMat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = m.rows();
  Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Q f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

QMat inverse(const QMat& m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  QMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
  QMat r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

QMat nullspace(const QMat& m) {
  QMat a = m;
  auto piv = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  QMat k(m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], f) = -a(r, free[f]);
  }
  return k;
}

std::vector<Q> det_one_minus_t(const QMat& m) {
  // Faddeev-LeVerrier for det(xI - m) = x^n + c1 x^{n-1} + ... + cn;
  // det(I - t m) then has coefficients 1, c1, ..., cn.
  std::size_t n = m.rows();
  std::vector<Q> c(n + 1);
  c[0] = 1;
  QMat mk = QMat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    QMat am = m * mk;
    Q tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[k] = -tr / Q(static_cast<long>(k));
    mk = am;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[k];
  }
  return c;
}

SparseEchelon::Row SparseEchelon::reduce(Row r) const {
  auto it = r.begin();
  while (it != r.end()) {
    if (sgn(it->second) == 0) {
      it = r.erase(it);
      continue;
    }
    auto pr = rows_.find(it->first);
    if (pr == rows_.end()) {
      ++it;
      continue;
    }
    Q f = it->second;
    std::size_t col = it->first;
    for (const auto& [j, v] : pr->second) r[j] -= f * v;
    it = r.find(col);  // now zero, erased on the next pass
  }
  return r;
}

bool SparseEchelon::insert(Row r) {
  r = reduce(std::move(r));
  for (auto it = r.begin(); it != r.end();) {
    if (sgn(it->second) == 0)
      it = r.erase(it);
    else
      ++it;
  }
  if (r.empty()) return false;
  Q inv = 1 / r.begin()->second;
  for (auto& [j, v] : r) v *= inv;
  std::size_t p = r.begin()->first;
  rows_.emplace(p, std::move(r));
  return true;
}

std::vector<std::size_t> SparseEchelon::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, r] : rows_) out.push_back(p);
  return out;
}

std::vector<std::vector<Q>> SparseEchelon::kernel() const {
  // Back substitution to reduced form, processing pivots from the right.
  std::map<std::size_t, Row> red;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    Row r = it->second;
    for (auto jt = std::next(r.begin()); jt != r.end();) {
      auto pr = red.find(jt->first);
      if (pr == red.end() || sgn(jt->second) == 0) {
        ++jt;
        continue;
      }
      Q f = jt->second;
      std::size_t col = jt->first;
      for (const auto& [j, v] : pr->second) r[j] -= f * v;
      r.erase(col);
      jt = r.upper_bound(col);
    }
    for (auto jt = r.begin(); jt != r.end();) {
      if (sgn(jt->second) == 0)
        jt = r.erase(jt);
      else
        ++jt;
    }
    red.emplace(it->first, std::move(r));
  }
  std::vector<std::vector<Q>> basis;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (red.count(f)) continue;
    std::vector<Q> x(ncols_);
    x[f] = 1;
    for (const auto& [p, row] : red) {
      auto jt = row.find(f);
      if (jt != row.end()) x[p] = -jt->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace bkd
