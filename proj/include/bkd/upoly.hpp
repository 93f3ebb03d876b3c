// Laurent polynomials in one variable u with exact integer coefficients.
#pragma once

#include <string>
#include <vector>

#include "bkd/linalg.hpp"

namespace bkd {

class UPoly {
 public:
  UPoly() = default;
  UPoly(long c);  // NOLINT: constants convert implicitly
  static UPoly monomial(const Z& c, int exp);
  static UPoly u(int exp = 1) { return monomial(1, exp); }
  static UPoly from_coeffs(const std::vector<long>& c, int low = 0);

  bool is_zero() const { return c_.empty(); }
  /// Lowest and highest exponents; undefined for zero.
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  Z coeff(int exp) const;
  bool is_polynomial() const { return is_zero() || low_ >= 0; }
  /// Coefficients of u^0..u^high(); requires is_polynomial().
  std::vector<Z> coeffs() const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator-() const;
  UPoly operator*(const UPoly& o) const;
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  bool operator==(const UPoly& o) const { return low_ == o.low_ && c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  /// u -> u^{-1}
  UPoly bar() const;
  UPoly shifted(int k) const;
  /// Terms with exponent in [lo, hi].
  UPoly slice(int lo, int hi) const;
  Z at_one() const;
  std::string str() const;

 private:
  void normalize();
  int low_ = 0;
  std::vector<Z> c_;  // c_[k] is the coefficient of u^{low_ + k}
};

using PVec = std::vector<UPoly>;

/// Square matrix of Laurent polynomials; column j is the image of basis vector j.
class PMat {
 public:
  PMat() = default;
  explicit PMat(std::size_t n) : n_(n), v_(n * n) {}
  static PMat identity(std::size_t n);
  std::size_t size() const { return n_; }
  UPoly& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
  const UPoly& operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
  PMat operator*(const PMat& o) const;
  PMat operator+(const PMat& o) const;
  PMat operator-(const PMat& o) const;
  PMat scaled(const UPoly& p) const;
  PVec apply(const PVec& x) const;
  bool operator==(const PMat& o) const { return n_ == o.n_ && v_ == o.v_; }
  bool is_zero() const;

 private:
  std::size_t n_ = 0;
  std::vector<UPoly> v_;
};

}  // namespace bkd
