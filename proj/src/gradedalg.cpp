#include "bkd/gradedalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <tuple>

namespace bkd {

TruncationError::TruncationError(int req, int need, const std::string& what)
    : AlgebraError(what + ": truncation N = " + std::to_string(req) + " is below the required " +
                   std::to_string(need)),
      requested(req),
      required(need) {}

// ---------------------------------------------------------------- series

std::string HilbertSeries::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i].get_str();
  os << ")";
  return os.str();
}

HilbertSeries rational_series(const std::vector<int>& num, const std::vector<int>& den, int N) {
  std::vector<Z> c(N + 1, Z(0));
  c[0] = 1;
  for (int k : num) {
    if (k <= 0) throw AlgebraError("rational_series: numerator degrees must be positive");
    for (int d = N; d >= k; --d) c[d] -= c[d - k];
  }
  for (int l : den) {
    if (l <= 0) throw AlgebraError("rational_series: denominator degrees must be positive");
    for (int d = l; d <= N; ++d) c[d] += c[d - l];
  }
  return {c};
}

HilbertSeries series_product(const HilbertSeries& a, const HilbertSeries& b) {
  int N = std::min(a.truncation(), b.truncation());
  std::vector<Z> c(N + 1, Z(0));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return {c};
}

// ---------------------------------------------------------------- invariants

namespace {

class MonomialIndex {
 public:
  std::size_t operator()(const Monomial& m) {
    auto [it, fresh] = idx_.try_emplace(m, idx_.size());
    return it->second;
  }
  std::size_t size() const { return idx_.size(); }

 private:
  std::map<Monomial, std::size_t> idx_;
};

SparseEchelon::Row to_row(const Poly& p, MonomialIndex& ix) {
  SparseEchelon::Row r;
  for (const auto& [m, c] : p.terms()) r[ix(m)] = c;
  return r;
}

Poly reynolds(const Poly& p, const std::vector<QMat>& group) {
  Poly r(p.nvars());
  for (const auto& g : group) r += p.substitute(g);
  return r.scaled(Q(1, group.size()));
}

}  // namespace

HilbertSeries GradedAlgebra::hilbert() const {
  HilbertSeries h;
  for (const auto& b : basis) h.coeffs.push_back(Z(static_cast<long>(b.size())));
  return h;
}

GradedAlgebra invariant_ring(const std::vector<QMat>& group, int N, int weight) {
  if (group.empty()) throw AlgebraError("invariant_ring: empty group");
  if (weight <= 0) throw AlgebraError("invariant_ring: weight must be positive");
  GradedAlgebra A;
  A.nvars = static_cast<int>(group[0].rows());
  A.weight = weight;
  A.truncation = N;
  A.basis.assign(N + 1, {});
  for (int d = 0; d <= N; ++d) {
    if (d % weight) continue;
    int k = d / weight;
    auto mons = monomials_of_degree(A.nvars, k);
    // Column order = lex order of monomials, so ranks are independent of insertion order.
    MonomialIndex ix;
    for (const auto& m : mons) ix(m);
    SparseEchelon ech(mons.size());
    for (const auto& m : mons) {
      Poly r = reynolds(Poly::term(m, 1), group);
      if (!r.is_zero() && ech.insert(to_row(r, ix))) A.basis[d].push_back(r);
    }
    // Minimal generators: what is not reached by products of earlier generators.
    SparseEchelon dec(mons.size());
    for (std::size_t g = 0; g < A.generators.size(); ++g) {
      int rest = d - A.generator_degrees[g];
      if (rest < 0) continue;
      for (const auto& b : A.basis[rest]) dec.insert(to_row(A.generators[g] * b, ix));
    }
    for (const auto& b : A.basis[d]) {
      if (d == 0) break;
      if (dec.insert(to_row(b, ix))) {
        A.generators.push_back(b);
        A.generator_degrees.push_back(d);
      }
    }
  }
  return A;
}

HarmonicBasis harmonic_basis(const GradedAlgebra& inv, std::size_t expected) {
  HarmonicBasis H;
  int n = inv.nvars;
  for (int k = 0;; ++k) {
    auto mons = monomials_of_degree(n, k);
    MonomialIndex ix;
    for (const auto& m : mons) ix(m);
    SparseEchelon ech(mons.size());
    for (std::size_t g = 0; g < inv.generators.size(); ++g) {
      int dg = inv.generator_degrees[g] / inv.weight;
      for (const auto& m : monomials_of_degree(n, k - dg))
        ech.insert(to_row(inv.generators[g] * Poly::term(m, 1), ix));
    }
    auto piv = ech.pivots();
    std::vector<bool> is_piv(mons.size(), false);
    for (auto p : piv) is_piv[p] = true;
    std::size_t before = H.elements.size();
    for (std::size_t c = 0; c < mons.size(); ++c)
      if (!is_piv[c]) {
        H.elements.push_back(Poly::term(mons[c], 1));
        H.degrees.push_back(2 * k);
      }
    if (H.elements.size() == before) break;
    if (H.elements.size() > expected) break;
  }
  if (H.elements.size() != expected)
    throw AlgebraError("harmonic basis has " + std::to_string(H.elements.size()) + " elements, expected " +
                       std::to_string(expected));
  return H;
}

// ---------------------------------------------------------------- symmetry

SymmetryGroup SymmetryGroup::trivial(int nvars) { return from_generators(nvars, {}); }

SymmetryGroup SymmetryGroup::from_generators(int nvars, const std::vector<QMat>& gens) {
  SymmetryGroup S;
  S.nvars = nvars;
  S.ngens = static_cast<int>(gens.size());
  std::size_t n = std::size_t{1} << gens.size();
  for (std::size_t mask = 0; mask < n; ++mask) {
    QMat m = QMat::identity(nvars);
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (mask >> k & 1) m = m * gens[k];
    S.act.push_back(m);
    S.act_inverse.push_back(inverse(m));
    S.bits.push_back(static_cast<unsigned>(mask));
  }
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (gens[a] * gens[a] != QMat::identity(nvars)) throw AlgebraError("symmetry generator is not an involution");
    for (std::size_t b = 0; b < gens.size(); ++b)
      if (gens[a] * gens[b] != gens[b] * gens[a]) throw AlgebraError("symmetry generators do not commute");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (S.act[a] == S.act[b]) throw AlgebraError("symmetry generators are dependent");
  return S;
}

std::size_t SymmetryGroup::index_of_bits(unsigned b) const {
  if (b >= act.size()) throw AlgebraError("symmetry element out of range");
  return b;
}

std::vector<std::size_t> SymmetryGroup::generator_indices() const {
  std::vector<std::size_t> out;
  for (int k = 0; k < ngens; ++k) out.push_back(std::size_t{1} << k);
  return out;
}

Poly SymmetryGroup::apply(std::size_t g, const Poly& p) const {
  if (g == 0) return p;
  return p.substitute(act_inverse.at(g));
}

PolyMat SymmetryGroup::apply(std::size_t g, const PolyMat& m) const {
  if (g == 0) return m;
  return m.substitute(act_inverse.at(g));
}

// ---------------------------------------------------------------- modules

int GradedModule::lowest_shift() const {
  if (shifts.empty()) throw AlgebraError("zero module has no lowest degree");
  return *std::min_element(shifts.begin(), shifts.end());
}

namespace {

Z binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Polynomial degree of entry (a, b) of a degree-d map between shift lists, or -1.
int entry_degree(int d, int s_src, int s_dst) {
  int k = d + s_src - s_dst;
  if (k < 0 || k % 2) return -1;
  return k / 2;
}

std::string check_degrees(const PolyMat& m, const std::vector<int>& s, int d, const std::string& what) {
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b) {
      const Poly& p = m(a, b);
      if (p.is_zero()) continue;
      int k = entry_degree(d, s[b], s[a]);
      if (k < 0 || !p.is_homogeneous(k))
        return what + " entry (" + std::to_string(a) + "," + std::to_string(b) + ") has the wrong degree";
    }
  return {};
}

}  // namespace

HilbertSeries GradedModule::hilbert(int N) const {
  HilbertSeries h;
  h.coeffs.assign(N + 1, Z(0));
  for (int d = 0; d <= N; ++d)
    for (int s : shifts) {
      int k = d - s;
      if (k < 0 || k % 2) continue;
      h.coeffs[d] += nvars == 0 ? Z(k == 0 ? 1 : 0) : binom(k / 2 + nvars - 1, nvars - 1);
    }
  return h;
}

std::string module_defect(const GradedModule& M, const SymmetryGroup& S) {
  std::size_t n = M.rank();
  for (std::size_t j = 0; j < M.Y.size(); ++j) {
    if (M.Y[j].rows() != n || M.Y[j].cols() != n) return "Y[" + std::to_string(j) + "] has the wrong shape";
    auto e = check_degrees(M.Y[j], M.shifts, 2, "Y[" + std::to_string(j) + "]");
    if (!e.empty()) return e;
  }
  for (std::size_t i = 0; i < M.Y.size(); ++i)
    for (std::size_t j = i + 1; j < M.Y.size(); ++j)
      if (M.Y[i] * M.Y[j] != M.Y[j] * M.Y[i])
        return "Y[" + std::to_string(i) + "] and Y[" + std::to_string(j) + "] do not commute";
  if (M.G.size() != S.order()) return "symmetry action has " + std::to_string(M.G.size()) + " matrices";
  if (M.G[0] != PolyMat::identity(n, M.nvars)) return "identity acts nontrivially";
  for (std::size_t g = 0; g < S.order(); ++g) {
    auto e = check_degrees(M.G[g], M.shifts, 0, "G[" + std::to_string(g) + "]");
    if (!e.empty()) return e;
    for (std::size_t j = 0; j < M.Y.size(); ++j)
      if (M.G[g] * S.apply(g, M.Y[j]) != M.Y[j] * M.G[g])
        return "G[" + std::to_string(g) + "] does not commute with Y[" + std::to_string(j) + "]";
    for (std::size_t h = 0; h < S.order(); ++h) {
      std::size_t gh = S.index_of_bits(S.bits[g] ^ S.bits[h]);
      if (M.G[g] * S.apply(g, M.G[h]) != M.G[gh]) return "symmetry action is not a group action";
    }
  }
  return {};
}

GradedModule shifted(const GradedModule& M, int by) {
  GradedModule r = M;
  for (auto& s : r.shifts) s += by;
  return r;
}

GradedModule direct_sum(const GradedModule& A, const GradedModule& B) {
  if (A.rank() == 0) return B;
  if (B.rank() == 0) return A;
  if (A.nvars != B.nvars || A.Y.size() != B.Y.size() || A.G.size() != B.G.size())
    throw AlgebraError("direct_sum: modules live over different rings");
  GradedModule r;
  r.nvars = A.nvars;
  r.shifts = A.shifts;
  r.shifts.insert(r.shifts.end(), B.shifts.begin(), B.shifts.end());
  for (std::size_t j = 0; j < A.Y.size(); ++j) r.Y.push_back(PolyMat::block_diag(A.Y[j], B.Y[j]));
  for (std::size_t g = 0; g < A.G.size(); ++g) r.G.push_back(PolyMat::block_diag(A.G[g], B.G[g]));
  return r;
}

PolyMat evaluate_on(const Poly& f, const GradedModule& M) {
  std::size_t n = M.rank();
  PolyMat out(n, n, M.nvars);
  std::vector<std::vector<PolyMat>> pw(M.Y.size());
  for (const auto& [m, c] : f.terms()) {
    PolyMat t = PolyMat::identity(n, M.nvars);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      auto& cache = pw[j];
      if (cache.empty()) cache.push_back(PolyMat::identity(n, M.nvars));
      while (static_cast<int>(cache.size()) <= m[j]) cache.push_back(cache.back() * M.Y[j]);
      t = t * cache[m[j]];
    }
    out = out + t.scaled(c);
  }
  return out;
}

// ---------------------------------------------------------------- Hom

namespace {

struct HomUnknowns {
  std::size_t rows = 0, cols = 0;
  std::vector<int> deg;                   // per entry, -1 if forced zero
  std::vector<std::vector<Monomial>> mons;  // per entry
  std::vector<std::size_t> offset;        // per entry
  std::size_t count = 0;
};

HomUnknowns make_unknowns(const GradedModule& M, const GradedModule& N, int d) {
  HomUnknowns u;
  u.rows = N.rank();
  u.cols = M.rank();
  for (std::size_t a = 0; a < u.rows; ++a)
    for (std::size_t b = 0; b < u.cols; ++b) {
      int k = entry_degree(d, M.shifts[b], N.shifts[a]);
      u.deg.push_back(k);
      u.mons.push_back(k < 0 ? std::vector<Monomial>{} : monomials_of_degree(M.nvars, k));
      u.offset.push_back(u.count);
      u.count += u.mons.back().size();
    }
  return u;
}

using EqKey = std::tuple<int, std::size_t, std::size_t, Monomial>;

Monomial add_mono(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

/// Adds sign * (Phi X)_{ac} (right = true) or sign * (X Phi)_{ac} (right = false),
/// where Phi may be replaced by g(Phi) through `image`.
void accumulate(std::map<EqKey, SparseEchelon::Row>& eqs, int tag, const HomUnknowns& u, const PolyMat& X,
                bool phi_on_left, const Q& sign, const std::vector<std::vector<Poly>>* image) {
  for (std::size_t a = 0; a < u.rows; ++a)
    for (std::size_t b = 0; b < u.cols; ++b) {
      std::size_t e = a * u.cols + b;
      const auto& ms = u.mons[e];
      for (std::size_t k = 0; k < ms.size(); ++k) {
        std::size_t var = u.offset[e] + k;
        Poly unit = image ? (*image)[e][k] : Poly::term(ms[k], 1);
        if (phi_on_left) {
          // (Phi X)_{a c} gets Phi_{ab} X_{bc}
          for (std::size_t c = 0; c < X.cols(); ++c) {
            const Poly& x = X(b, c);
            if (x.is_zero()) continue;
            for (const auto& [m1, c1] : unit.terms())
              for (const auto& [m2, c2] : x.terms()) {
                auto& row = eqs[EqKey{tag, a, c, add_mono(m1, m2)}];
                row[var] += sign * c1 * c2;
              }
          }
        } else {
          // (X Phi)_{r b} gets X_{ra} Phi_{ab}
          for (std::size_t r = 0; r < X.rows(); ++r) {
            const Poly& x = X(r, a);
            if (x.is_zero()) continue;
            for (const auto& [m1, c1] : unit.terms())
              for (const auto& [m2, c2] : x.terms()) {
                auto& row = eqs[EqKey{tag, r, b, add_mono(m1, m2)}];
                row[var] += sign * c1 * c2;
              }
          }
        }
      }
    }
}

}  // namespace

std::vector<PolyMat> module_hom(const GradedModule& M, const GradedModule& N, int d, const SymmetryGroup& S) {
  if (M.nvars != N.nvars || M.Y.size() != N.Y.size()) throw AlgebraError("module_hom: modules over different rings");
  if (M.G.size() != S.order() || N.G.size() != S.order())
    throw AlgebraError("module_hom: symmetry action does not match the group");
  HomUnknowns u = make_unknowns(M, N, d);
  if (u.count == 0) return {};
  std::map<EqKey, SparseEchelon::Row> eqs;
  int tag = 0;
  for (std::size_t j = 0; j < M.Y.size(); ++j, ++tag) {
    accumulate(eqs, tag, u, M.Y[j], true, 1, nullptr);
    accumulate(eqs, tag, u, N.Y[j], false, -1, nullptr);
  }
  for (auto g : S.generator_indices()) {
    std::vector<std::vector<Poly>> image(u.mons.size());
    for (std::size_t e = 0; e < u.mons.size(); ++e)
      for (const auto& m : u.mons[e]) image[e].push_back(S.apply(g, Poly::term(m, 1)));
    accumulate(eqs, tag, u, M.G[g], true, 1, nullptr);
    accumulate(eqs, tag, u, N.G[g], false, -1, &image);
    ++tag;
  }
  SparseEchelon ech(u.count);
  for (auto& [k, row] : eqs) ech.insert(std::move(row));
  std::vector<PolyMat> out;
  for (const auto& v : ech.kernel()) {
    PolyMat phi(u.rows, u.cols, M.nvars);
    for (std::size_t a = 0; a < u.rows; ++a)
      for (std::size_t b = 0; b < u.cols; ++b) {
        std::size_t e = a * u.cols + b;
        for (std::size_t k = 0; k < u.mons[e].size(); ++k) phi(a, b).add_term(u.mons[e][k], v[u.offset[e] + k]);
        if (phi(a, b).nvars() == 0) phi(a, b) = Poly(M.nvars);
      }
    out.push_back(std::move(phi));
  }
  return out;
}

std::vector<std::size_t> hom_dimensions(const GradedModule& M, const GradedModule& N, int lo, int hi,
                                        const SymmetryGroup& S) {
  std::vector<std::size_t> out;
  for (int d = lo; d <= hi; ++d) out.push_back(module_hom(M, N, d, S).size());
  return out;
}

// ---------------------------------------------------------------- summands

namespace {

PolyMat graded_inverse(const PolyMat& C) {
  std::size_t r = C.rows();
  QMat c0 = C.constant_part();
  QMat c0i;
  try {
    c0i = inverse(c0);
  } catch (const std::domain_error&) {
    throw DecompositionError("constant part of a change of basis is singular");
  }
  PolyMat C0i = PolyMat::from_constant(c0i, C.nvars());
  PolyMat Nil = C - PolyMat::from_constant(c0, C.nvars());
  PolyMat X = (C0i * Nil).scaled(Q(-1));
  PolyMat sum = PolyMat::identity(r, C.nvars()), term = sum;
  for (std::size_t k = 0;; ++k) {
    term = term * X;
    if (term.is_zero()) break;
    if (k > r) throw DecompositionError("graded change of basis is not unipotent");
    sum = sum + term;
  }
  return sum * C0i;
}

}  // namespace

GradedModule image_of_idempotent(const GradedModule& M, const PolyMat& e, const SymmetryGroup& S) {
  QMat e0 = e.constant_part();
  QMat cols = e0;
  auto v = rref(cols);
  QMat rows = e0.transpose();
  auto u = rref(rows);
  std::size_t n = M.rank(), r = v.size();
  GradedModule out;
  out.nvars = M.nvars;
  if (r == 0) return out;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  PolyMat Gm = e.block(all, v);
  QMat r0(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) r0(i, j) = e0(u[i], j);
  PolyMat R0 = PolyMat::from_constant(r0, M.nvars);
  PolyMat K = graded_inverse(R0 * Gm) * R0;
  if (K * Gm != PolyMat::identity(r, M.nvars)) throw DecompositionError("summand basis is not a basis");
  for (auto c : v) out.shifts.push_back(M.shifts[c]);
  for (const auto& Y : M.Y) out.Y.push_back(K * Y * Gm);
  for (std::size_t g = 0; g < M.G.size(); ++g) out.G.push_back(K * M.G[g] * S.apply(g, Gm));
  return out;
}

namespace {

using QVec = std::vector<Q>;
using QPoly = std::vector<Q>;  // coefficients, index = degree

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

void qdivmod(QPoly a, const QPoly& b, QPoly& quo, QPoly& rem) {
  trim(a);
  quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Q(0));
  while (a.size() >= b.size() && !a.empty()) {
    Q c = a.back() / b.back();
    std::size_t sh = a.size() - b.size();
    quo[sh] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] -= c * b[i];
    trim(a);
  }
  trim(quo);
  rem = a;
}

/// s, t with s a + t b = gcd (monic).
QPoly ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    QPoly q, r;
    qdivmod(r0, r1, q, r);
    QPoly s2 = qsub(s0, qmul(q, s1)), t2 = qsub(t0, qmul(q, t1));
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  Q lead = r0.back();
  for (auto& c : r0) c /= lead;
  for (auto& c : s0) c /= lead;
  for (auto& c : t0) c /= lead;
  s = s0;
  t = t0;
  return r0;
}

Q qeval(const QPoly& p, const Q& x) {
  Q r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

std::vector<Z> divisors(Z n) {
  n = abs(n);
  std::vector<Z> out;
  for (Z d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

std::vector<Q> rational_roots(QPoly p) {
  trim(p);
  std::vector<Q> roots;
  if (p.size() <= 1) return roots;
  std::size_t low = 0;
  while (sgn(p[low]) == 0) ++low;
  if (low > 0) roots.push_back(0);
  QPoly q(p.begin() + low, p.end());
  if (q.size() <= 1) return roots;
  Z lcm = 1;
  for (const auto& c : q) lcm = lcm * c.get_den() / gcd(lcm, c.get_den());
  Q f0 = q.front() * lcm, fn = q.back() * lcm;
  Z a0 = f0.get_num(), an = fn.get_num();
  if (abs(a0) > Z(1000000) || abs(an) > Z(1000000)) return roots;  // skip candidates we cannot enumerate cheaply
  for (const auto& num : divisors(a0))
    for (const auto& den : divisors(an))
      for (int sg : {1, -1}) {
        Q x(num * sg, den);
        x.canonicalize();
        if (sgn(qeval(q, x)) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Finite-dimensional algebra End^0 with a basis in reduced echelon form, so
/// coordinates are read off at pivot positions.
struct EndAlgebra {
  std::vector<PolyMat> basis;
  std::vector<std::tuple<std::size_t, std::size_t, Monomial>> pivot_keys;
  std::size_t rows = 0, cols = 0;
  int nvars = 0;

  std::size_t dim() const { return basis.size(); }

  QVec coords(const PolyMat& m) const {
    QVec c(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& [a, b, mono] = pivot_keys[i];
      c[i] = m(a, b).coeff(mono);
    }
    return c;
  }

  PolyMat element(const QVec& c) const {
    PolyMat m(rows, cols, nvars);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (sgn(c[i]) != 0) m = m + basis[i].scaled(c[i]);
    return m;
  }

  QMat left_mult(const PolyMat& a) const {
    QMat L(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      auto c = coords(a * basis[j]);
      for (std::size_t i = 0; i < dim(); ++i) L(i, j) = c[i];
    }
    return L;
  }
};

EndAlgebra end_algebra(const GradedModule& M, const SymmetryGroup& S) {
  auto raw = module_hom(M, M, 0, S);
  EndAlgebra E;
  E.rows = E.cols = M.rank();
  E.nvars = M.nvars;
  std::map<std::tuple<std::size_t, std::size_t, Monomial>, std::size_t> keys;
  std::vector<std::tuple<std::size_t, std::size_t, Monomial>> key_list;
  for (const auto& m : raw)
    for (std::size_t a = 0; a < m.rows(); ++a)
      for (std::size_t b = 0; b < m.cols(); ++b)
        for (const auto& [mono, c] : m(a, b).terms()) {
          auto k = std::make_tuple(a, b, mono);
          if (keys.emplace(k, key_list.size()).second) key_list.push_back(k);
        }
  QMat A(raw.size(), key_list.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t a = 0; a < raw[i].rows(); ++a)
      for (std::size_t b = 0; b < raw[i].cols(); ++b)
        for (const auto& [mono, c] : raw[i](a, b).terms()) A(i, keys.at(std::make_tuple(a, b, mono))) = c;
  auto piv = rref(A);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    PolyMat m(E.rows, E.cols, E.nvars);
    for (std::size_t k = 0; k < key_list.size(); ++k)
      if (sgn(A(i, k)) != 0) {
        const auto& [a, b, mono] = key_list[k];
        m(a, b).add_term(mono, A(i, k));
      }
    E.basis.push_back(std::move(m));
    E.pivot_keys.push_back(key_list[piv[i]]);
  }
  return E;
}

/// Minimal polynomial of an element, from the Krylov sequence of the identity.
QPoly minimal_polynomial(const QMat& L, const QVec& one) {
  std::vector<QVec> seq{one};
  for (std::size_t k = 1; k <= one.size() + 1; ++k) {
    seq.push_back(L.apply(seq.back()));
    QMat K(one.size(), seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j)
      for (std::size_t i = 0; i < one.size(); ++i) K(i, j) = seq[j][i];
    QMat ns = nullspace(K);
    if (ns.cols() == 0) continue;
    QPoly p(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) p[j] = ns(j, 0);
    trim(p);
    Q lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
  }
  throw DecompositionError("minimal polynomial did not terminate");
}

QVec apply_poly(const QPoly& p, const QMat& L, const QVec& one) {
  QVec w(one.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    w = L.apply(w);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += *it * one[i];
  }
  return w;
}

/// A nontrivial idempotent of E, or nothing if none was found among the candidates.
std::optional<PolyMat> split_idempotent(const EndAlgebra& E, const QVec& one) {
  std::vector<QVec> candidates;
  std::size_t m = E.dim();
  for (std::size_t i = 0; i < m; ++i) {
    QVec c(m);
    c[i] = 1;
    candidates.push_back(c);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      QVec c(m);
      c[i] = 1;
      c[j] = 1;
      candidates.push_back(c);
      c[j] = -1;
      candidates.push_back(c);
    }
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int t = 0; t < 64; ++t) {
    QVec c(m);
    for (auto& x : c) x = dist(rng);
    candidates.push_back(c);
  }
  for (const auto& c : candidates) {
    PolyMat a = E.element(c);
    QMat L = E.left_mult(a);
    QPoly mp = minimal_polynomial(L, one);
    for (const auto& lam : rational_roots(mp)) {
      QPoly lin{-lam, 1}, power{1}, rest = mp;
      for (;;) {
        QPoly q, r;
        qdivmod(rest, lin, q, r);
        if (!r.empty()) break;
        rest = q;
        power = qmul(power, lin);
      }
      if (rest.size() <= 1) continue;  // a - lambda is nilpotent
      QPoly s, t;
      ext_gcd(power, rest, s, t);
      QPoly idem = qmul(t, rest);
      QVec ec = apply_poly(idem, L, one);
      return E.element(ec);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<GradedModule> decompose(const GradedModule& M, const SymmetryGroup& S) {
  if (M.rank() == 0) return {};
  EndAlgebra E = end_algebra(M, S);
  if (E.dim() == 0) throw DecompositionError("endomorphism algebra is empty");
  if (E.dim() == 1) return {M};
  QVec one = E.coords(PolyMat::identity(M.rank(), M.nvars));
  // Radical = kernel of the trace form tr(L_a L_b).
  std::vector<QMat> L;
  for (const auto& b : E.basis) L.push_back(E.left_mult(b));
  QMat T(E.dim(), E.dim());
  for (std::size_t i = 0; i < E.dim(); ++i)
    for (std::size_t j = 0; j < E.dim(); ++j) {
      QMat P = L[i] * L[j];
      Q tr = 0;
      for (std::size_t k = 0; k < E.dim(); ++k) tr += P(k, k);
      T(i, j) = tr;
    }
  std::size_t rad = nullspace(T).cols();
  if (rad + 1 == E.dim()) return {M};
  auto e = split_idempotent(E, one);
  if (!e) throw DecompositionError("semisimple part of the endomorphism algebra is not split over Q");
  PolyMat f = PolyMat::identity(M.rank(), M.nvars) - *e;
  std::vector<GradedModule> out;
  for (const auto& part : {image_of_idempotent(M, *e, S), image_of_idempotent(M, f, S)})
    for (auto& x : decompose(part, S)) out.push_back(std::move(x));
  return out;
}

bool is_isomorphic(const GradedModule& A, const GradedModule& B, const SymmetryGroup& S) {
  auto sa = A.shifts, sb = B.shifts;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  auto phi = module_hom(A, B, 0, S);
  if (phi.empty()) return false;
  auto psi = module_hom(B, A, 0, S);
  for (const auto& f : phi)
    for (const auto& g : psi)
      if (sgn(determinant((g * f).constant_part())) != 0) return true;
  return false;
}

std::vector<int> lowest_characters(const GradedModule& M, const SymmetryGroup& S) {
  int low = M.lowest_shift();
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b < M.rank(); ++b)
    if (M.shifts[b] == low) idx.push_back(b);
  std::size_t nchar = std::size_t{1} << S.ngens;
  std::vector<Q> traces(S.order());
  for (std::size_t g = 0; g < S.order(); ++g) {
    QMat c = M.G[g].constant_part();
    for (auto b : idx) traces[g] += c(b, b);
  }
  std::vector<int> mult(nchar);
  for (std::size_t chi = 0; chi < nchar; ++chi) {
    Q acc = 0;
    for (std::size_t g = 0; g < S.order(); ++g)
      acc += (__builtin_popcount(S.bits[g] & chi) % 2 ? -1 : 1) * traces[g];
    acc /= static_cast<long>(S.order());
    if (acc.get_den() != 1) throw AlgebraError("character multiplicity is not an integer");
    mult[chi] = static_cast<int>(acc.get_num().get_si());
  }
  return mult;
}

}  // namespace bkd
