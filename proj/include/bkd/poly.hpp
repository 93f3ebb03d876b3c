// Multivariate polynomials and polynomial matrices over Q.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bkd/linalg.hpp"

namespace bkd {

using Monomial = std::vector<int>;

/// All exponent vectors of total degree `deg` in `nvars` variables, in
/// decreasing lexicographic order.
std::vector<Monomial> monomials_of_degree(int nvars, int deg);

class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  static Poly constant(int nvars, const Q& c);
  static Poly var(int nvars, int i);
  static Poly term(const Monomial& m, const Q& c);
  /// sum_k coeffs[k] x_k
  static Poly linear(const std::vector<Q>& coeffs);

  int nvars() const { return nvars_; }
  const std::map<Monomial, Q>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  /// Total degree of the highest term; -1 for zero.
  int degree() const;
  bool is_homogeneous(int deg) const;
  Q coeff(const Monomial& m) const;
  Q constant_term() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Q& c) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  void add_term(const Monomial& m, const Q& c);

  /// Linear substitution x_i -> sum_k m(i, k) z_k; m has nvars rows.
  Poly substitute(const QMat& m) const;
  /// Substitution of arbitrary polynomials for the variables.
  Poly compose(const std::vector<Poly>& images) const;
  Poly pow(int k) const;
  std::string str(const std::string& var = "x") const;

 private:
  int nvars_ = 0;
  std::map<Monomial, Q> t_;
};

class PolyMat {
 public:
  PolyMat() = default;
  PolyMat(std::size_t rows, std::size_t cols, int nvars);
  static PolyMat identity(std::size_t n, int nvars);
  static PolyMat from_constant(const QMat& m, int nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int nvars() const { return nvars_; }
  Poly& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }

  PolyMat operator*(const PolyMat& o) const;
  PolyMat operator+(const PolyMat& o) const;
  PolyMat operator-(const PolyMat& o) const;
  PolyMat scaled(const Q& c) const;
  PolyMat scaled(const Poly& p) const;
  bool operator==(const PolyMat& o) const;
  bool operator!=(const PolyMat& o) const { return !(*this == o); }
  bool is_zero() const;
  /// Constant terms of every entry.
  QMat constant_part() const;
  /// Entrywise linear substitution of the variables.
  PolyMat substitute(const QMat& m) const;
  PolyMat block(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  static PolyMat block_diag(const PolyMat& a, const PolyMat& b);
  /// [[a, b], [c, d]]
  static PolyMat blocks(const PolyMat& a, const PolyMat& b, const PolyMat& c, const PolyMat& d);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  int nvars_ = 0;
  std::vector<Poly> v_;
};

}  // namespace bkd
