#include "bkd/poly.hpp"

#include <stdexcept>

namespace bkd {

namespace {

void monomials_rec(int nvars, int deg, int i, Monomial& cur, std::vector<Monomial>& out) {
  if (i == nvars - 1) {
    cur[i] = deg;
    out.push_back(cur);
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[i] = e;
    monomials_rec(nvars, deg - e, i + 1, cur, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int nvars, int deg) {
  if (deg < 0) return {};
  if (nvars == 0) return deg == 0 ? std::vector<Monomial>{Monomial{}} : std::vector<Monomial>{};
  std::vector<Monomial> out;
  Monomial cur(nvars, 0);
  monomials_rec(nvars, deg, 0, cur, out);
  return out;
}

Poly Poly::constant(int nvars, const Q& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::var(int nvars, int i) {
  Monomial m(nvars, 0);
  m.at(i) = 1;
  return term(m, 1);
}

Poly Poly::term(const Monomial& m, const Q& c) {
  Poly p(static_cast<int>(m.size()));
  p.add_term(m, c);
  return p;
}

Poly Poly::linear(const std::vector<Q>& coeffs) {
  int n = static_cast<int>(coeffs.size());
  Poly p(n);
  for (int i = 0; i < n; ++i) {
    Monomial m(n, 0);
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  return p;
}

void Poly::add_term(const Monomial& m, const Q& c) {
  if (sgn(c) == 0) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) t_.erase(it);
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

bool Poly::is_homogeneous(int deg) const {
  for (const auto& [m, c] : t_) {
    int s = 0;
    for (int e : m) s += e;
    if (s != deg) return false;
  }
  return true;
}

Q Poly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Q(0) : it->second;
}

Q Poly::constant_term() const { return coeff(Monomial(nvars_, 0)); }

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ == 0 && t_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ == 0 && t_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::operator*(const Poly& o) const {
  Poly r(std::max(nvars_, o.nvars_));
  for (const auto& [m1, c1] : t_)
    for (const auto& [m2, c2] : o.t_) {
      Monomial m = m1;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += m2[i];
      r.add_term(m, c1 * c2);
    }
  return r;
}

Poly Poly::scaled(const Q& c) const {
  Poly r(nvars_);
  if (sgn(c) == 0) return r;
  r.t_ = t_;
  for (auto& [m, v] : r.t_) v *= c;
  return r;
}

Poly Poly::pow(int k) const {
  Poly r = constant(nvars_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Poly Poly::substitute(const QMat& m) const {
  if (static_cast<int>(m.rows()) != nvars_ && !t_.empty()) throw std::invalid_argument("substitution has wrong size");
  int nz = static_cast<int>(m.cols());
  std::vector<Poly> images;
  for (int i = 0; i < nvars_; ++i) {
    std::vector<Q> row(nz);
    for (int k = 0; k < nz; ++k) row[k] = m(i, k);
    images.push_back(linear(row));
  }
  Poly r = compose(images);
  if (r.is_zero()) r = Poly(nz);
  return r;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != nvars_ && !t_.empty())
    throw std::invalid_argument("composition has wrong number of images");
  int nz = images.empty() ? 0 : images[0].nvars();
  Poly r(nz);
  // cache powers per variable
  std::vector<std::vector<Poly>> pw(nvars_);
  for (const auto& [m, c] : t_) {
    Poly term = constant(nz, c);
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(constant(nz, 1));
      while (static_cast<int>(cache.size()) <= m[i]) cache.push_back(cache.back() * images[i]);
      term = term * cache[m[i]];
    }
    r += term;
  }
  return r;
}

std::string Poly::str(const std::string& var) const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = sgn(c) < 0;
    Q a = neg ? Q(-c) : c;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var + std::to_string(i + 1);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out;
}

PolyMat::PolyMat(std::size_t rows, std::size_t cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), v_(rows * cols, Poly(nvars)) {}

PolyMat PolyMat::identity(std::size_t n, int nvars) {
  PolyMat m(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(nvars, 1);
  return m;
}

PolyMat PolyMat::from_constant(const QMat& c, int nvars) {
  PolyMat m(c.rows(), c.cols(), nvars);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) m(i, j) = Poly::constant(nvars, c(i, j));
  return m;
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("PolyMat shape mismatch in product");
  PolyMat r(rows_, o.cols_, std::max(nvars_, o.nvars_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Poly& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

PolyMat PolyMat::operator+(const PolyMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMat shape mismatch in sum");
  PolyMat r = *this;
  for (std::size_t k = 0; k < v_.size(); ++k) r.v_[k] += o.v_[k];
  return r;
}

PolyMat PolyMat::operator-(const PolyMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMat shape mismatch in difference");
  PolyMat r = *this;
  for (std::size_t k = 0; k < v_.size(); ++k) r.v_[k] -= o.v_[k];
  return r;
}

PolyMat PolyMat::scaled(const Q& c) const {
  PolyMat r = *this;
  for (auto& p : r.v_) p = p.scaled(c);
  return r;
}

PolyMat PolyMat::scaled(const Poly& q) const {
  PolyMat r = *this;
  for (auto& p : r.v_) p = p * q;
  return r;
}

bool PolyMat::operator==(const PolyMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && v_ == o.v_;
}

bool PolyMat::is_zero() const {
  for (const auto& p : v_)
    if (!p.is_zero()) return false;
  return true;
}

QMat PolyMat::constant_part() const {
  QMat m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).constant_term();
  return m;
}

PolyMat PolyMat::substitute(const QMat& m) const {
  PolyMat r(rows_, cols_, static_cast<int>(m.cols()));
  for (std::size_t k = 0; k < v_.size(); ++k) r.v_[k] = v_[k].substitute(m);
  return r;
}

PolyMat PolyMat::block(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  PolyMat r(rows.size(), cols.size(), nvars_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(rows[i], cols[j]);
  return r;
}

PolyMat PolyMat::block_diag(const PolyMat& a, const PolyMat& b) {
  PolyMat r(a.rows_ + b.rows_, a.cols_ + b.cols_, std::max(a.nvars_, b.nvars_));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
  return r;
}

PolyMat PolyMat::blocks(const PolyMat& a, const PolyMat& b, const PolyMat& c, const PolyMat& d) {
  if (a.rows_ != b.rows_ || c.rows_ != d.rows_ || a.cols_ != c.cols_ || b.cols_ != d.cols_)
    throw std::invalid_argument("PolyMat::blocks shape mismatch");
  PolyMat r(a.rows_ + c.rows_, a.cols_ + b.cols_, a.nvars_);
  auto put = [&](const PolyMat& m, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) r(r0 + i, c0 + j) = m(i, j);
  };
  put(a, 0, 0);
  put(b, 0, a.cols_);
  put(c, a.rows_, 0);
  put(d, a.rows_, a.cols_);
  return r;
}

}  // namespace bkd
