#include "bkd/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace bkd {

UPoly::UPoly(long c) {
  if (c != 0) c_.push_back(c);
}

UPoly UPoly::monomial(const Z& c, int exp) {
  UPoly p;
  if (sgn(c) != 0) {
    p.low_ = exp;
    p.c_.push_back(c);
  }
  return p;
}

UPoly UPoly::from_coeffs(const std::vector<long>& c, int low) {
  UPoly p;
  p.low_ = low;
  for (long x : c) p.c_.push_back(x);
  p.normalize();
  return p;
}

void UPoly::normalize() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  std::size_t k = 0;
  while (k < c_.size() && sgn(c_[k]) == 0) ++k;
  if (k > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
    low_ += static_cast<int>(k);
  }
  if (c_.empty()) low_ = 0;
}

Z UPoly::coeff(int exp) const {
  if (c_.empty() || exp < low_ || exp > high()) return 0;
  return c_[exp - low_];
}

std::vector<Z> UPoly::coeffs() const {
  if (!is_polynomial()) throw std::domain_error("coeffs() of a Laurent polynomial with negative exponents");
  if (is_zero()) return {};
  std::vector<Z> out(high() + 1);
  for (int e = low_; e <= high(); ++e) out[e] = coeff(e);
  return out;
}

UPoly UPoly::operator+(const UPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  UPoly r;
  r.low_ = std::min(low_, o.low_);
  int hi = std::max(high(), o.high());
  r.c_.assign(hi - r.low_ + 1, 0);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[low_ - r.low_ + k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) r.c_[o.low_ - r.low_ + k] += o.c_[k];
  r.normalize();
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  UPoly r;
  r.low_ = low_ + o.low_;
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.normalize();
  return r;
}

UPoly UPoly::bar() const {
  if (is_zero()) return {};
  UPoly r;
  r.low_ = -high();
  r.c_.assign(c_.rbegin(), c_.rend());
  return r;
}

UPoly UPoly::shifted(int k) const {
  UPoly r = *this;
  if (!r.is_zero()) r.low_ += k;
  return r;
}

UPoly UPoly::slice(int lo, int hi) const {
  UPoly r;
  if (is_zero() || hi < lo) return r;
  int a = std::max(lo, low_), b = std::min(hi, high());
  if (a > b) return r;
  r.low_ = a;
  r.c_.assign(c_.begin() + (a - low_), c_.begin() + (b - low_ + 1));
  r.normalize();
  return r;
}

Z UPoly::at_one() const {
  Z s = 0;
  for (const auto& x : c_) s += x;
  return s;
}

std::string UPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int e = low_; e <= high(); ++e) {
    Z c = coeff(e);
    if (sgn(c) == 0) continue;
    bool neg = sgn(c) < 0;
    Z a = neg ? Z(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = e == 0 ? "" : e == 1 ? "u" : "u^" + std::to_string(e);
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + mono;
  }
  return out;
}

PMat PMat::identity(std::size_t n) {
  PMat m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

PMat PMat::operator*(const PMat& o) const {
  if (n_ != o.n_) throw std::invalid_argument("PMat size mismatch");
  PMat r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

PMat PMat::operator+(const PMat& o) const {
  if (n_ != o.n_) throw std::invalid_argument("PMat size mismatch");
  PMat r = *this;
  for (std::size_t k = 0; k < v_.size(); ++k) r.v_[k] += o.v_[k];
  return r;
}

PMat PMat::operator-(const PMat& o) const {
  if (n_ != o.n_) throw std::invalid_argument("PMat size mismatch");
  PMat r = *this;
  for (std::size_t k = 0; k < v_.size(); ++k) r.v_[k] -= o.v_[k];
  return r;
}

PMat PMat::scaled(const UPoly& p) const {
  PMat r = *this;
  for (auto& x : r.v_) x *= p;
  return r;
}

PVec PMat::apply(const PVec& x) const {
  if (x.size() != n_) throw std::invalid_argument("PMat apply size mismatch");
  PVec y(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!x[j].is_zero() && !(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
  return y;
}

bool PMat::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const UPoly& p) { return p.is_zero(); });
}

}  // namespace bkd
