#include "bkd/hecke.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace bkd {

KLVError::KLVError(int d, int g, const std::string& msg)
    : HeckeError("KLV recursion failed at cell (" + std::to_string(d) + ", " + std::to_string(g) + "): " + msg),
      delta(d),
      gamma(g) {}

std::vector<std::pair<int, UPoly>> hecke_column(const BlockDatum& b, int s, int g) {
  const UPoly u = UPoly::u();
  const UPoly um1 = u - 1;
  int c = b.cross[s][g];
  const auto& cay = b.cayley[s][g];
  auto need = [&](std::size_t k) {
    if (cay.size() != k)
      throw HeckeError("no T_s formula for (s=" + std::to_string(s) + ", param=" + std::to_string(g) +
                       "): status " + status_code(b.status[s][g]) + " with " + std::to_string(cay.size()) +
                       " Cayley transforms");
  };
  switch (b.status[s][g]) {
    case RootStatus::ComplexAscent:
      return {{c, 1}};
    case RootStatus::ComplexDescent:
      return {{g, um1}, {c, u}};
    case RootStatus::ImaginaryCompact:
      return {{g, -1}};
    case RootStatus::RealNonparity:
      return {{g, u}};
    case RootStatus::ImaginaryNoncompactI:
      need(1);
      if (c == g) break;
      return {{c, 1}, {cay[0], 1}};
    case RootStatus::ImaginaryNoncompactII:
      need(2);
      if (c != g) break;
      return {{g, 1}, {cay[0], 1}, {cay[1], 1}};
    case RootStatus::RealI:
      need(2);
      if (c != g) break;
      return {{g, u - 2}, {cay[0], um1}, {cay[1], um1}};
    case RootStatus::RealII:
      need(1);
      if (c == g) break;
      return {{g, um1}, {c, -1}, {cay[0], um1}};
  }
  throw HeckeError("no T_s formula for (s=" + std::to_string(s) + ", param=" + std::to_string(g) + "): status " +
                   status_code(b.status[s][g]) + " is inconsistent with the cross action");
}

PMat HeckeModule::T_inverse(int s) const {
  // T^{-1} = u^{-1} T + (u^{-1} - 1)
  PMat inv = T[s].scaled(UPoly::u(-1));
  for (std::size_t i = 0; i < size(); ++i) inv(i, i) += UPoly::u(-1) - 1;
  return inv;
}

PVec HeckeModule::wall(int s, const PVec& x) const {
  PVec y = T[s].apply(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += x[i];
  return y;
}

PVec HeckeModule::basis_vector(int g) const {
  PVec v(size());
  v.at(g) = 1;
  return v;
}

bool quadratic_relation_holds(const HeckeModule& h, int s) {
  std::size_t n = h.size();
  PMat a = h.T[s], b = h.T[s];
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) -= UPoly::u();
    b(i, i) += 1;
  }
  return (a * b).is_zero();
}

bool braid_relation_holds(const HeckeModule& h, int s, int t) {
  long p = h.cartan[s][t] * h.cartan[t][s];
  int m = p == 0 ? 2 : p == 1 ? 3 : p == 2 ? 4 : 6;
  PMat x = PMat::identity(h.size()), y = PMat::identity(h.size());
  for (int k = 0; k < m; ++k) {
    x = x * h.T[k % 2 == 0 ? s : t];
    y = y * h.T[k % 2 == 0 ? t : s];
  }
  return x == y;
}

namespace {

HeckeModule assemble(const BlockDatum& b) {
  require_valid(b);
  HeckeModule h;
  h.block = b;
  h.cartan = cartan_matrix(b.weyl_type);
  int low = b.min_length();
  for (const auto& p : b.params) h.rel_length.push_back(p.length - low);
  std::size_t n = b.size();
  for (int s = 0; s < b.rank(); ++s) {
    PMat t(n);
    for (std::size_t g = 0; g < n; ++g)
      for (const auto& [i, c] : hecke_column(b, s, static_cast<int>(g))) t(i, g) += c;
    h.T.push_back(t);
  }
  return h;
}

}  // namespace

HeckeModule build_hecke(const BlockDatum& b) {
  HeckeModule h = assemble(b);
  for (int s = 0; s < h.rank(); ++s) {
    if (!quadratic_relation_holds(h, s))
      throw HeckeError("quadratic relation fails for s=" + std::to_string(s) + " on block '" + b.name + "'");
    for (int t = s + 1; t < h.rank(); ++t)
      if (!braid_relation_holds(h, s, t))
        throw HeckeError("braid relation fails for (" + std::to_string(s) + "," + std::to_string(t) + ") on block '" +
                         b.name + "'");
  }
  return h;
}

DualityReport hecke_relations_report(const HeckeModule& h) {
  DualityReport r;
  r.title = "hecke relations";
  for (int s = 0; s < h.rank(); ++s) {
    r.add("quadratic s=" + std::to_string(s), quadratic_relation_holds(h, s));
    for (int t = s + 1; t < h.rank(); ++t)
      r.add("braid s=" + std::to_string(s) + " t=" + std::to_string(t), braid_relation_holds(h, s, t));
  }
  return r;
}

namespace {

// An affine expression sum_k x_k v_k + v_const in the module, stored by
// (basis index, exponent of u) -> (variable -> coefficient).  The constant
// term uses variable index `nvars`.
using Affine = std::map<std::pair<int, int>, std::map<std::size_t, Q>>;

void add_scaled(Affine& out, const Affine& in, int row, const UPoly& c) {
  if (c.is_zero()) return;
  for (const auto& [key, vars] : in) {
    for (int e = c.low(); e <= c.high(); ++e) {
      Z k = c.coeff(e);
      if (sgn(k) == 0) continue;
      auto& slot = out[{row, key.second + e}];
      for (const auto& [v, q] : vars) slot[v] += q * Q(k);
    }
  }
}

}  // namespace

PMat bar_involution(const HeckeModule& h) {
  int n = static_cast<int>(h.size());
  const auto& L = h.rel_length;
  struct Var {
    int eta, gamma, deg;
  };
  std::vector<Var> vars;
  for (int g = 0; g < n; ++g)
    for (int e = 0; e < n; ++e)
      if (L[e] < L[g])
        for (int d = 0; d <= L[g] - L[e]; ++d) vars.push_back({e, g, d});
  std::size_t nv = vars.size();

  // D(a_g) as an affine expression, grouped per basis element.
  std::vector<std::map<int, Affine>> D(n);
  for (int g = 0; g < n; ++g) D[g][g][{g, -L[g]}][nv] = 1;
  for (std::size_t k = 0; k < nv; ++k) {
    const auto& v = vars[k];
    D[v.gamma][v.eta][{v.eta, -L[v.gamma] + v.deg}][k] = 1;
  }
  auto whole = [&](int g) {
    Affine a;
    for (const auto& [row, aff] : D[g])
      for (const auto& [key, vs] : aff)
        for (const auto& [var, q] : vs) a[key][var] += q;
    return a;
  };

  SparseEchelon ech(nv + 1);
  for (int s = 0; s < h.rank(); ++s) {
    PMat Tinv = h.T_inverse(s);
    for (int g = 0; g < n; ++g) {
      Affine lhs, rhs;
      for (int e = 0; e < n; ++e) {
        const UPoly& t = h.T[s](e, g);
        if (t.is_zero()) continue;
        Affine de = whole(e);
        // bar(t) D(a_e): shift exponents, keep rows
        for (const auto& [key, vs] : de) {
          UPoly bt = t.bar();
          for (int x = bt.low(); x <= bt.high(); ++x) {
            Z c = bt.coeff(x);
            if (sgn(c) == 0) continue;
            auto& slot = lhs[{key.first, key.second + x}];
            for (const auto& [var, q] : vs) slot[var] += q * Q(c);
          }
        }
      }
      Affine dg = whole(g);
      for (const auto& [key, vs] : dg) {
        int zeta = key.first;
        Affine single;
        single[{zeta, key.second}] = vs;
        for (int xi = 0; xi < n; ++xi) add_scaled(rhs, single, xi, Tinv(xi, zeta));
      }
      for (auto& [key, vs] : rhs)
        for (auto& [var, q] : vs) lhs[key][var] -= q;
      for (auto& [key, vs] : lhs) {
        SparseEchelon::Row row;
        for (auto& [var, q] : vs)
          if (sgn(q) != 0) row[var] = q;
        if (!row.empty()) ech.insert(std::move(row));
      }
    }
  }
  auto ker = ech.kernel();
  if (ker.size() != 1 || sgn(ker[0][nv]) == 0)
    throw HeckeError("bar involution on block '" + h.block.name + "' is not uniquely determined (" +
                     std::to_string(ker.size()) + "-dimensional solution space)");
  std::vector<Q> x(nv);
  for (std::size_t k = 0; k < nv; ++k) x[k] = ker[0][k] / ker[0][nv];

  PMat out(n);
  for (int g = 0; g < n; ++g) out(g, g) = UPoly::u(-L[g]);
  for (std::size_t k = 0; k < nv; ++k) {
    if (sgn(x[k]) == 0) continue;
    if (x[k].get_den() != 1) throw HeckeError("bar involution has a non-integral coefficient");
    const auto& v = vars[k];
    out(v.eta, v.gamma) += UPoly::monomial(x[k].get_num(), -L[v.gamma] + v.deg);
  }
  return out;
}

KLVMatrix klv(const HeckeModule& h) {
  int n = static_cast<int>(h.size());
  const auto& L = h.rel_length;
  PMat D = bar_involution(h);
  KLVMatrix k;
  k.P = PMat(n);
  k.rel_length = L;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return L[a] > L[b]; });
  for (int g = 0; g < n; ++g) {
    k.P(g, g) = 1;
    for (int e : order) {
      if (L[e] >= L[g]) continue;
      UPoly a;
      for (int d = 0; d < n; ++d) {
        if (L[d] <= L[e] || L[d] > L[g]) continue;
        const UPoly& p = k.P(d, g);
        if (p.is_zero() || D(e, d).is_zero()) continue;
        a += p.bar() * D(e, d);
      }
      UPoly x = a.shifted(L[g]);
      int len = L[g] - L[e];
      UPoly p = x.slice(0, (len - 1) / 2);
      UPoly rest = x - p;
      if (rest != -(p.bar().shifted(len))) {
        std::ostringstream m;
        m << "u^l a = " << x.str() << " is not of the form P - u^" << len << " P(u^-1) with deg P <= "
          << (len - 1) / 2;
        throw KLVError(e, g, m.str());
      }
      k.P(e, g) = p;
    }
  }
  return k;
}

PVec klv_element(const KLVMatrix& k, int g) {
  PVec v(k.size());
  for (std::size_t d = 0; d < k.size(); ++d) v[d] = k.P(d, g);
  return v;
}

PVec expand_in_klv(const KLVMatrix& k, const PVec& x) {
  int n = static_cast<int>(k.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return k.rel_length[a] > k.rel_length[b]; });
  PVec rem = x, c(n);
  for (int g : order) {
    c[g] = rem[g];
    if (c[g].is_zero()) continue;
    for (int d = 0; d < n; ++d)
      if (!k.P(d, g).is_zero()) rem[d] -= c[g] * k.P(d, g);
  }
  for (const auto& r : rem)
    if (!r.is_zero()) throw HeckeError("vector is not in the span of the KLV basis");
  return c;
}

DualityReport verify_duality(const KLVMatrix& P, const KLVMatrix& Q2, const std::vector<int>& bij) {
  std::size_t n = P.size();
  if (Q2.size() != n || bij.size() != n) throw HeckeError("verify_duality: dimension mismatch");
  DualityReport r;
  r.title = "vogan duality";
  std::ostringstream residual;
  bool ok = true;
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t x = 0; x < n; ++x) {
      UPoly sum;
      for (std::size_t g = 0; g < n; ++g) {
        if (P.P(d, g).is_zero()) continue;
        const UPoly& q = Q2.P(bij[x], bij[g]);
        if (q.is_zero()) continue;
        UPoly term = P.P(d, g) * q;
        sum += ((P.rel_length[g] - P.rel_length[d]) % 2 == 0) ? term : -term;
      }
      UPoly want = d == x ? UPoly(1) : UPoly();
      if (sum != want) {
        ok = false;
        residual << "(" << d << "," << x << ")=" << (sum - want).str() << " ";
      }
    }
  r.add("signed inverse identity", ok, ok ? std::to_string(n) + "x" + std::to_string(n) + " identity" : residual.str());
  return r;
}

QMat intertwining_operator(const HeckeModule& h, const WeylGroup& W, const std::vector<int>& word) {
  if (!W.is_reduced(word)) throw HeckeError("intertwining_operator: word is not reduced");
  std::size_t n = h.size();
  QMat m = QMat::identity(n);
  for (int s : word) {
    QMat is(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) is(i, j) = Q(-h.T[s](i, j).at_one());
    m = m * is;
  }
  return m;
}

namespace {

std::vector<std::vector<int>> reduced_words(const WeylGroup& W, std::size_t w,
                                            std::map<std::size_t, std::vector<std::vector<int>>>& memo) {
  if (auto it = memo.find(w); it != memo.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (W.length(w) == 0) {
    out.push_back({});
  } else {
    for (int s = 0; s < W.rank(); ++s) {
      auto sw = W.multiply(W.generator(s), w);
      if (W.length(sw) >= W.length(w)) continue;
      for (auto rest : reduced_words(W, sw, memo)) {
        rest.insert(rest.begin(), s);
        out.push_back(rest);
      }
    }
  }
  memo[w] = out;
  return out;
}

}  // namespace

DualityReport intertwining_word_independence(const HeckeModule& h, const WeylGroup& W) {
  DualityReport r;
  r.title = "intertwining operators";
  std::map<std::size_t, std::vector<std::vector<int>>> memo;
  std::size_t words = 0;
  std::string bad;
  for (std::size_t w = 0; w < W.order(); ++w) {
    auto ws = reduced_words(W, w, memo);
    QMat ref = intertwining_operator(h, W, ws.front());
    words += ws.size();
    for (const auto& x : ws)
      if (intertwining_operator(h, W, x) != ref) bad += "w=" + std::to_string(w) + " ";
    Q det = determinant(ref);
    if (det != 1 && det != -1) bad += "w=" + std::to_string(w) + " not unimodular ";
  }
  r.add("reduced-word independence", bad.empty(), bad.empty() ? std::to_string(words) + " reduced words" : bad);
  return r;
}

DualityReport translation_wall_identity(const HeckeModule& h, const WeylGroup& W, std::optional<std::size_t> w_m_order,
                                        bool adjoint) {
  DualityReport r;
  r.title = "translation wall identity";
  std::size_t n = h.size();
  QMat D(n, n);
  for (std::size_t w = 0; w < W.order(); ++w) {
    QMat iw = intertwining_operator(h, W, W.element(w).word);
    D = D + (W.length(w) % 2 == 0 ? iw : -iw);
  }
  bool sq = D * D == D.scaled(Q(static_cast<long>(W.order())));
  r.add("D^2 = |W| D", sq, "|W| = " + std::to_string(W.order()));
  if (!adjoint || !w_m_order || !h.block.has_flag("quasisplit")) {
    r.add("open-orbit multiplicity", true, "not applicable: the multiplicity statement assumes an adjoint block");
    return r;
  }
  auto open = open_orbit_parameters(h.block);
  auto col = D.column(open.front());
  std::string bad;
  for (int p : open)
    if (abs(col[p]) != Q(static_cast<long>(*w_m_order))) bad += "param " + std::to_string(p) + " has " + to_string(col[p]) + " ";
  r.add("open-orbit multiplicity", bad.empty(),
        bad.empty() ? "each open class with coefficient +-" + std::to_string(*w_m_order) : bad);
  return r;
}

DualityReport cross_vs_intertwining(const HeckeModule& h, const WeylGroup& W) {
  DualityReport r;
  r.title = "cross action vs intertwining";
  const auto& b = h.block;
  std::vector<int> params;
  if (b.has_flag("complex")) {
    params.resize(b.size());
    std::iota(params.begin(), params.end(), 0);
  } else {
    params = open_orbit_parameters(b);
  }
  std::string bad;
  std::size_t checked = 0;
  for (int g : params)
    for (std::size_t w = 0; w < W.order(); ++w) {
      const auto& word = W.element(w).word;
      auto v = intertwining_operator(h, W, word).column(g);
      int target = cross_word(b, word, g);
      ++checked;
      if (abs(v[target]) != 1) {
        bad += "(w=" + std::to_string(w) + ",g=" + std::to_string(g) + ") ";
        continue;
      }
      for (std::size_t i = 0; i < v.size(); ++i)
        if (static_cast<int>(i) != target && sgn(v[i]) != 0 && b.params[i].orbit_tag == b.params[target].orbit_tag)
          bad += "(w=" + std::to_string(w) + ",g=" + std::to_string(g) + ",extra " + std::to_string(i) + ") ";
    }
  r.add("[I_w][D_g] = +-[D_{w x g}] mod other orbits", bad.empty(),
        bad.empty() ? std::to_string(checked) + " (w, g) pairs" : bad);
  return r;
}

std::string klv_csv(const KLVMatrix& k) {
  std::ostringstream out;
  out << "delta\\gamma";
  for (std::size_t g = 0; g < k.size(); ++g) out << "," << g;
  out << "\n";
  for (std::size_t d = 0; d < k.size(); ++d) {
    out << d;
    for (std::size_t g = 0; g < k.size(); ++g) {
      out << ",";
      const auto& p = k.P(d, g);
      if (p.is_zero()) {
        out << "0";
        continue;
      }
      auto c = p.coeffs();
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ";" : "") << c[i].get_str();
    }
    out << "\n";
  }
  return out.str();
}

std::string klv_table(const KLVMatrix& k) {
  std::size_t n = k.size();
  std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
  cells[0][0] = "P";
  for (std::size_t i = 0; i < n; ++i) cells[0][i + 1] = cells[i + 1][0] = std::to_string(i);
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t g = 0; g < n; ++g) cells[d + 1][g + 1] = k.P(d, g).is_zero() ? "." : k.P(d, g).str();
  std::vector<std::size_t> w(n + 1, 0);
  for (const auto& row : cells)
    for (std::size_t j = 0; j <= n; ++j) w[j] = std::max(w[j], row[j].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t j = 0; j <= n; ++j) out << std::string(w[j] - row[j].size() + (j ? 2 : 0), ' ') << row[j];
    out << "\n";
  }
  return out.str();
}

}  // namespace bkd
