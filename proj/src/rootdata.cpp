#include "bkd/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace bkd {

namespace {

IntMat simple_cartan(char family, int n) {
  IntMat a(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      if (n < 2) throw RootDataError("type B needs rank >= 2");
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;  // last node short
      break;
    case 'C':
      if (n < 2) throw RootDataError("type C needs rank >= 2");
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;
      break;
    case 'D':
      if (n < 3) throw RootDataError("type D needs rank >= 3");
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'G':
      if (n != 2) throw RootDataError("type G exists only in rank 2");
      a[0][1] = -1;
      a[1][0] = -3;
      break;
    default:
      throw RootDataError(std::string("unknown Cartan type family '") + family + "'");
  }
  return a;
}

// Rational symmetrizer d with d_i a_ij = d_j a_ji, if one exists.
std::optional<std::vector<Q>> symmetrizer(const IntMat& a) {
  int n = static_cast<int>(a.size());
  std::vector<Q> d(n);
  std::vector<bool> seen(n, false);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    d[root] = 1;
    seen[root] = true;
    std::deque<int> q{root};
    while (!q.empty()) {
      int i = q.front();
      q.pop_front();
      for (int j = 0; j < n; ++j) {
        if (i == j || a[i][j] == 0) continue;
        Q dj = d[i] * Q(a[i][j]) / Q(a[j][i]);
        if (!seen[j]) {
          seen[j] = true;
          d[j] = dj;
          q.push_back(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
  }
  return d;
}

}  // namespace

IntMat cartan_matrix(const std::string& type) {
  std::vector<IntMat> parts;
  std::stringstream ss(type);
  std::string item;
  while (std::getline(ss, item, 'x')) {
    if (item.size() < 2) throw RootDataError("malformed type string '" + type + "'");
    char fam = item[0];
    int n = 0;
    try {
      n = std::stoi(item.substr(1));
    } catch (...) {
      throw RootDataError("malformed rank in type string '" + type + "'");
    }
    if (n < 1) throw RootDataError("rank must be positive in '" + type + "'");
    parts.push_back(simple_cartan(fam, n));
  }
  if (parts.empty()) throw RootDataError("empty type string");
  std::size_t total = 0;
  for (auto& p : parts) total += p.size();
  IntMat a(total, std::vector<long>(total, 0));
  std::size_t off = 0;
  for (auto& p : parts) {
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) a[off + i][off + j] = p[i][j];
    off += p.size();
  }
  return a;
}

RootDatum build_root_system(const IntMat& a, const std::string& type) {
  int n = static_cast<int>(a.size());
  if (n == 0) throw RootDataError("Cartan matrix: empty");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw RootDataError("Cartan matrix: not square");
  for (int i = 0; i < n; ++i) {
    if (a[i][i] != 2) throw RootDataError("Cartan matrix: diagonal entry not 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) throw RootDataError("Cartan matrix: positive off-diagonal entry");
      if ((a[i][j] == 0) != (a[j][i] == 0)) throw RootDataError("Cartan matrix: zero pattern not symmetric");
    }
  }
  auto d = symmetrizer(a);
  if (!d) throw RootDataError("Cartan matrix: not symmetrizable");
  QMat sym(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sym(i, j) = (*d)[i] * Q(a[i][j]);
  for (int k = 1; k <= n; ++k) {
    QMat minor(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) minor(i, j) = sym(i, j);
    if (sgn(determinant(minor)) <= 0)
      throw RootDataError("Cartan matrix: symmetrization not positive definite (not finite type)");
  }

  RootDatum rd;
  rd.type = type;
  rd.cartan = a;
  rd.rank = n;
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> pos;
  std::deque<std::vector<long>> q;
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    pos.push_back(e);
    q.push_back(e);
  }
  const std::size_t cap = 10000;
  while (!q.empty()) {
    auto b = q.front();
    q.pop_front();
    for (int i = 0; i < n; ++i) {
      long pairing = 0;
      for (int j = 0; j < n; ++j) pairing += b[j] * a[i][j];
      auto c = b;
      c[i] -= pairing;
      bool positive = std::all_of(c.begin(), c.end(), [](long x) { return x >= 0; });
      if (!positive) continue;  // only s_i(alpha_i) leaves the positive cone
      if (seen.insert(c).second) {
        pos.push_back(c);
        q.push_back(c);
        if (pos.size() > cap) throw RootDataError("root closure exceeded cap");
      }
    }
  }
  std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
    long hx = 0, hy = 0;
    for (auto v : x) hx += v;
    for (auto v : y) hy += v;
    if (hx != hy) return hx < hy;
    return x > y;
  });
  rd.roots = pos;
  for (const auto& p : pos) {
    auto m = p;
    for (auto& v : m) v = -v;
    rd.roots.push_back(m);
  }
  for (int i = 0; i < n; ++i) rd.simple_roots.push_back(i);  // heights sort simple roots first
  return rd;
}

RootDatum root_system_from_type(const std::string& type) {
  return build_root_system(cartan_matrix(type), type);
}

WeylGroup::WeylGroup(const RootDatum& rd, std::size_t cap) : rd_(rd) {
  int n = rd.rank;
  std::size_t nr = rd.roots.size();
  std::map<std::vector<long>, int> root_index;
  for (std::size_t k = 0; k < nr; ++k) root_index[rd.roots[k]] = static_cast<int>(k);

  std::vector<std::vector<int>> sperm(n, std::vector<int>(nr));
  std::vector<QMat> smat;
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < nr; ++k) {
      const auto& b = rd.roots[k];
      long pairing = 0;
      for (int j = 0; j < n; ++j) pairing += b[j] * rd.cartan[i][j];
      auto c = b;
      c[i] -= pairing;
      sperm[i][k] = root_index.at(c);
    }
    QMat m = QMat::identity(n);
    for (int j = 0; j < n; ++j) m(i, j) -= Q(rd.cartan[i][j]);
    smat.push_back(m);
  }

  WeylElement e;
  e.perm.resize(nr);
  for (std::size_t k = 0; k < nr; ++k) e.perm[k] = static_cast<int>(k);
  e.matrix = QMat::identity(n);
  elems_.push_back(e);
  index_[e.perm] = 0;
  // Breadth-first by left multiplication gives minimal-length words.
  for (std::size_t cur = 0; cur < elems_.size(); ++cur) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> p(nr);
      for (std::size_t k = 0; k < nr; ++k) p[k] = sperm[i][elems_[cur].perm[k]];
      if (index_.count(p)) continue;
      if (elems_.size() >= cap) throw RootDataError("Weyl group enumeration exceeded cap");
      WeylElement w;
      w.perm = p;
      w.word.push_back(i);
      w.word.insert(w.word.end(), elems_[cur].word.begin(), elems_[cur].word.end());
      w.length = static_cast<int>(w.word.size());
      w.matrix = smat[i] * elems_[cur].matrix;
      index_[p] = elems_.size();
      elems_.push_back(std::move(w));
    }
  }
  std::size_t np = rd.num_positive();
  for (auto& w : elems_) {
    int neg = 0;
    for (std::size_t k = 0; k < np; ++k)
      if (static_cast<std::size_t>(w.perm[k]) >= np) ++neg;
    if (neg != w.length) throw RootDataError("internal: length mismatch in Weyl enumeration");
  }
  std::size_t N = elems_.size();
  for (int i = 0; i < n; ++i) {
    std::vector<int> p = sperm[i];
    gens_.push_back(index_.at(p));
  }
  mult_.resize(N * N);
  inv_.resize(N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      std::vector<int> p(nr);
      for (std::size_t k = 0; k < nr; ++k) p[k] = elems_[a].perm[elems_[b].perm[k]];
      std::size_t c = index_.at(p);
      mult_[a * N + b] = c;
      if (c == 0) inv_[a] = b;
    }
  longest_ = 0;
  for (std::size_t a = 0; a < N; ++a)
    if (elems_[a].length > elems_[longest_].length) longest_ = a;
}

std::size_t WeylGroup::from_word(const std::vector<int>& word) const {
  std::size_t w = identity();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= rank()) throw RootDataError("word letter out of range");
    w = multiply(gens_[*it], w);
  }
  return w;
}

bool WeylGroup::is_reduced(const std::vector<int>& word) const {
  return length(from_word(word)) == static_cast<int>(word.size());
}

std::optional<std::size_t> WeylGroup::find_matrix(const QMat& m) const {
  for (std::size_t a = 0; a < elems_.size(); ++a)
    if (elems_[a].matrix == m) return a;
  return std::nullopt;
}

Involution make_involution(const WeylGroup& W, const std::vector<int>& diagram,
                           const std::vector<int>& inner_twist, int sign) {
  int n = W.rank();
  const auto& a = W.root_datum().cartan;
  if (static_cast<int>(diagram.size()) != n) throw RootDataError("involution: diagram permutation has wrong size");
  std::vector<int> sorted = diagram;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i) throw RootDataError("involution: diagram map is not a permutation");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a[diagram[i]][diagram[j]] != a[i][j])
        throw RootDataError("involution: permutation is not a diagram automorphism");
  if (sign != 1 && sign != -1) throw RootDataError("involution: sign must be +1 or -1");
  QMat p(n, n);
  for (int i = 0; i < n; ++i) p(diagram[i], i) = 1;
  QMat t = W.element(W.from_word(inner_twist)).matrix;
  Involution th{diagram, inner_twist, sign, (t * p).scaled(Q(sign))};
  if (th.matrix * th.matrix != QMat::identity(n)) throw RootDataError("involution: theta^2 is not the identity");
  return th;
}

Involution negated_dual(const Involution& theta) {
  Involution d = theta;
  d.matrix = (-theta.matrix).transpose();
  d.sign = -theta.sign;
  return d;
}

std::size_t apply_involution(const WeylGroup& W, const Involution& theta, std::size_t w) {
  QMat m = theta.matrix * W.element(w).matrix * inverse(theta.matrix);
  auto id = W.find_matrix(m);
  if (!id) throw RootDataError("involution does not normalize the Weyl group");
  return *id;
}

bool Subgroup::contains(std::size_t id) const {
  return std::find(elements.begin(), elements.end(), id) != elements.end();
}

Subgroup fixed_subgroup(const WeylGroup& W, const Involution& theta) {
  if (theta.matrix * theta.matrix != QMat::identity(W.rank()))
    throw RootDataError("fixed_subgroup: theta is not an involution");
  Subgroup s;
  for (std::size_t w = 0; w < W.order(); ++w)
    if (apply_involution(W, theta, w) == w) {
      s.elements.push_back(w);
      s.lengths.push_back(W.length(w));
    }
  return s;
}

Subgroup generated_subgroup(const WeylGroup& W, const std::vector<std::size_t>& gens) {
  std::set<std::size_t> seen{W.identity()};
  std::deque<std::size_t> q{W.identity()};
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (auto g : gens) {
      auto y = W.multiply(g, x);
      if (seen.insert(y).second) q.push_back(y);
    }
  }
  Subgroup s;
  for (auto x : seen) {
    s.elements.push_back(x);
    s.lengths.push_back(W.length(x));
  }
  return s;
}

SplitPart split_part(const Involution& theta, int eigenvalue) {
  if (eigenvalue != 1 && eigenvalue != -1) throw RootDataError("split_part: eigenvalue must be +1 or -1");
  std::size_t n = theta.matrix.rows();
  QMat m = theta.matrix - QMat::identity(n).scaled(Q(eigenvalue));
  QMat k = nullspace(m);
  SplitPart sp;
  sp.ambient_dim = n;
  sp.eigenvalue = eigenvalue;
  for (std::size_t j = 0; j < k.cols(); ++j) sp.basis.push_back(k.column(j));
  return sp;
}

std::vector<QMat> reflection_matrices(const WeylGroup& W) {
  std::vector<QMat> r;
  for (const auto& e : W.elements()) r.push_back(e.matrix);
  return r;
}

InvariantDegrees invariant_degrees(const std::vector<QMat>& group, int truncation) {
  if (group.empty()) throw RootDataError("invariant_degrees: empty group");
  std::set<QMat> members(group.begin(), group.end());
  for (const auto& g : group)
    for (const auto& h : group)
      if (!members.count(g * h)) throw RootDataError("invariant_degrees: set not closed under products");
  std::size_t d = group.front().rows();
  if (!members.count(QMat::identity(d))) throw RootDataError("invariant_degrees: identity missing");
  std::size_t order = members.size();
  int D = truncation >= 0 ? truncation : static_cast<int>(order + d + 1);

  std::vector<Q> molien(D + 1);
  for (const auto& g : members) {
    auto c = det_one_minus_t(g);
    // power series inverse of c(t)
    std::vector<Q> inv(D + 1);
    inv[0] = 1;
    for (int k = 1; k <= D; ++k) {
      Q s = 0;
      for (int j = 1; j <= k && j < static_cast<int>(c.size()); ++j) s += c[j] * inv[k - j];
      inv[k] = -s;
    }
    for (int k = 0; k <= D; ++k) molien[k] += inv[k];
  }
  for (auto& x : molien) x /= Q(static_cast<long>(order));

  InvariantDegrees out;
  out.molien = molien;
  std::vector<Q> s = molien;
  for (int k = 1; k <= D; ++k) {
    if (sgn(s[k]) < 0 || s[k].get_den() != 1) break;
    long c = s[k].get_num().get_si();
    for (long rep = 0; rep < c; ++rep) {
      out.degrees.push_back(k);
      for (int j = D; j >= k; --j) s[j] -= s[j - k];  // multiply by (1 - t^k)
    }
  }
  bool rest_zero = true;
  for (int k = 1; k <= D; ++k)
    if (sgn(s[k]) != 0) rest_zero = false;
  long prod = 1;
  for (int x : out.degrees) prod *= x;
  out.free = rest_zero && out.degrees.size() == d && static_cast<std::size_t>(prod) == order;
  if (!out.free) out.degrees.clear();
  return out;
}

}  // namespace bkd
