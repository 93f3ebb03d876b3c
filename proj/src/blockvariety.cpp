#include "bkd/blockvariety.hpp"

#include <algorithm>
#include <set>

namespace bkd {

namespace {

QMat left_inverse(const QMat& B) {
  QMat Bt = B.transpose();
  return inverse(Bt * B) * Bt;
}

Poly embed(const Poly& p, int offset, int total) {
  Poly r(total);
  for (const auto& [m, c] : p.terms()) {
    Monomial e(total, 0);
    for (std::size_t i = 0; i < m.size(); ++i) e[offset + i] = m[i];
    r.add_term(e, c);
  }
  return r;
}

int max_invariant_degree(const WeylGroup& W) {
  auto deg = invariant_degrees(reflection_matrices(W)).degrees;
  return deg.empty() ? 1 : *std::max_element(deg.begin(), deg.end());
}

}  // namespace

BlockVariety::BlockVariety(const BlockDatum& b, const BlockDatum& companion)
    : block_(b.name), W_(block_weyl_group(b)) {
  Involution th = block_involution(b, W_);
  theta_ = th.matrix;
  SplitPart sp = split_part(th, -1);
  std::size_t r = sp.ambient_dim, a = sp.basis.size();
  B_ = QMat(r, a);
  for (std::size_t k = 0; k < a; ++k)
    for (std::size_t i = 0; i < r; ++i) B_(i, k) = sp.basis[k][i];
  B_left_ = a ? left_inverse(B_) : QMat(0, r);

  BlockGroups g = block_groups(b, companion);
  w_prime_ = g.w_m_prime.elements;
  std::set<std::size_t> reps;
  for (std::size_t w = 0; w < W_.order(); ++w) {
    std::size_t best = w;
    for (auto x : w_prime_) best = std::min(best, W_.multiply(w, x));
    reps.insert(best);
  }
  components_.assign(reps.begin(), reps.end());

  std::vector<QMat> gens;
  for (auto s : g.s_generators) gens.push_back(restrict_to_a(s));
  S_ = SymmetryGroup::from_generators(static_cast<int>(a), gens);
  for (std::size_t mask = 0; mask < S_.order(); ++mask) {
    std::size_t w = W_.identity();
    for (std::size_t k = 0; k < g.s_generators.size(); ++k)
      if (mask >> k & 1) w = W_.multiply(w, g.s_generators[k]);
    s_elements_.push_back(w);
  }
  inv_ = invariant_ring(reflection_matrices(W_), 2 * max_invariant_degree(W_), 2);
}

QMat BlockVariety::restrict_to_a(std::size_t w) const {
  const QMat& M = W_.element(w).matrix;
  QMat R = B_left_ * M * B_;
  if (M * B_ != B_ * R) throw VarietyError("Weyl element does not preserve a");
  return R;
}

QMat BlockVariety::component_matrix(std::size_t w) const { return W_.element(w).matrix * B_; }

void BlockVariety::require_free() const {
  if (w_prime_.size() != 1)
    throw VarietyError("module calculus needs W' trivial; block '" + block_ + "' has |W'| = " +
                       std::to_string(w_prime_.size()));
}

// ---------------------------------------------------------------- Hilbert series

namespace {

/// Hilbert series of C[a]^{W'} (x) C[h]^H modulo f(B x) - f(y), by linear algebra in each degree.
HilbertSeries quotient_hilbert(const BlockVariety& V, const std::vector<QMat>& y_group, int N) {
  int a = V.dim_a(), r = V.rank(), n = a + r;
  std::vector<QMat> wp;
  for (auto w : V.w_prime()) wp.push_back(V.restrict_to_a(w));
  GradedAlgebra A = invariant_ring(wp.empty() ? std::vector<QMat>{QMat::identity(a)} : wp, N, 2);
  GradedAlgebra R = invariant_ring(y_group, N, 2);
  const auto& F = V.invariants();
  std::vector<Poly> rel;
  std::vector<int> rel_deg;
  for (std::size_t i = 0; i < F.generators.size(); ++i) {
    rel.push_back(embed(F.generators[i].substitute(V.embedding()), 0, n) - embed(F.generators[i], a, n));
    rel_deg.push_back(F.generator_degrees[i]);
  }
  HilbertSeries h;
  h.coeffs.assign(N + 1, Z(0));
  for (int D = 0; D <= N; D += 2) {
    long count = 0;
    for (int j = 0; j <= D; j += 2) count += static_cast<long>(A.basis[j].size() * R.basis[D - j].size());
    std::map<Monomial, std::size_t> ix;
    for (const auto& m : monomials_of_degree(n, D / 2)) ix.emplace(m, ix.size());
    SparseEchelon ech(ix.size());
    for (std::size_t i = 0; i < rel.size(); ++i)
      for (int j = 0; j + rel_deg[i] <= D; j += 2)
        for (const auto& alpha : A.basis[j])
          for (const auto& rho : R.basis[D - rel_deg[i] - j]) {
            Poly p = rel[i] * embed(alpha, 0, n) * embed(rho, a, n);
            SparseEchelon::Row row;
            for (const auto& [m, c] : p.terms()) row[ix.at(m)] = c;
            ech.insert(std::move(row));
          }
    h.coeffs[D] = count - static_cast<long>(ech.rank());
  }
  return h;
}

}  // namespace

HilbertSeries fiber_product_hilbert(const BlockVariety& V, int N) {
  return quotient_hilbert(V, {QMat::identity(V.rank())}, N);
}

HilbertSeries partial_fiber_hilbert(const BlockVariety& V, int s, int N) {
  if (s < 0 || s >= V.rank()) throw VarietyError("simple reflection " + std::to_string(s) + " out of range");
  return quotient_hilbert(V, {QMat::identity(V.rank()), V.weyl().simple_reflection_matrix(s)}, N);
}

HilbertSeries expected_fiber_hilbert(const BlockVariety& V, int N) {
  int a = V.dim_a();
  std::vector<QMat> wp;
  for (auto w : V.w_prime()) wp.push_back(V.restrict_to_a(w));
  GradedAlgebra A = invariant_ring(wp.empty() ? std::vector<QMat>{QMat::identity(a)} : wp, N, 2);
  std::vector<int> num(V.invariants().generator_degrees), den(V.rank(), 2);
  return series_product(A.hilbert(), rational_series(num, den, N));
}

// ---------------------------------------------------------------- sheaves

namespace {

std::vector<Q> solve_unique(const std::vector<Poly>& cols, const Poly& target) {
  std::map<Monomial, std::size_t> ix;
  for (const auto& c : cols)
    for (const auto& [m, v] : c.terms()) ix.emplace(m, ix.size());
  for (const auto& [m, v] : target.terms()) ix.emplace(m, ix.size());
  QMat A(ix.size(), cols.size() + 1);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [m, v] : cols[j].terms()) A(ix.at(m), j) = v;
  for (const auto& [m, v] : target.terms()) A(ix.at(m), cols.size()) = v;
  auto piv = rref(A);
  if (!piv.empty() && piv.back() == cols.size()) throw VarietyError("harmonic expansion is inconsistent");
  if (piv.size() != cols.size()) throw VarietyError("harmonic expansion is not unique");
  std::vector<Q> x(cols.size());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = A(i, cols.size());
  return x;
}

GradedModule trivial_action(GradedModule M, std::size_t order) {
  M.G.assign(order, PolyMat::identity(M.rank(), M.nvars));
  return M;
}

}  // namespace

GradedModule structure_sheaf(const BlockVariety& V) {
  V.require_free();
  int r = V.rank(), a = V.dim_a();
  const WeylGroup& W = V.weyl();
  int npos = static_cast<int>(W.root_datum().num_positive());
  GradedAlgebra R = invariant_ring(reflection_matrices(W), 2 * (npos + 1), 2);
  HarmonicBasis H = harmonic_basis(R, W.order());
  std::size_t n = H.elements.size();
  GradedModule M;
  M.nvars = a;
  M.shifts = H.degrees;
  for (int j = 0; j < r; ++j) {
    PolyMat Y(n, n, a);
    for (std::size_t l = 0; l < n; ++l) {
      Poly target = Poly::var(r, j) * H.elements[l];
      int k = H.degrees[l] / 2 + 1;
      std::vector<Poly> cols;
      std::vector<std::pair<std::size_t, Poly>> meaning;
      for (std::size_t m = 0; m < n; ++m) {
        int rest = k - H.degrees[m] / 2;
        if (rest < 0) continue;
        for (const auto& phi : R.basis[2 * rest]) {
          cols.push_back(H.elements[m] * phi);
          meaning.emplace_back(m, phi);
        }
      }
      auto x = solve_unique(cols, target);
      for (std::size_t c = 0; c < x.size(); ++c)
        if (sgn(x[c]) != 0)
          Y(meaning[c].first, l) += meaning[c].second.substitute(V.embedding()).scaled(x[c]);
    }
    M.Y.push_back(std::move(Y));
  }
  return trivial_action(M, V.symmetry().order());
}

GradedModule component_sheaf(const BlockVariety& V, std::size_t w) {
  V.require_free();
  QMat C = V.component_matrix(w);
  GradedModule M;
  M.nvars = V.dim_a();
  M.shifts = {0};
  for (int j = 0; j < V.rank(); ++j) {
    std::vector<Q> row(C.cols());
    for (std::size_t k = 0; k < C.cols(); ++k) row[k] = C(j, k);
    PolyMat Y(1, 1, M.nvars);
    Y(0, 0) = Poly::linear(row);
    if (Y(0, 0).nvars() == 0) Y(0, 0) = Poly(M.nvars);
    M.Y.push_back(Y);
  }
  return trivial_action(M, 1);
}

std::string sheaf_defect(const BlockVariety& V, const GradedModule& M) {
  SymmetryGroup S = M.G.size() == 1 ? SymmetryGroup::trivial(M.nvars) : V.symmetry();
  auto d = module_defect(M, S);
  if (!d.empty()) return d;
  const auto& F = V.invariants();
  for (std::size_t i = 0; i < F.generators.size(); ++i) {
    PolyMat lhs = evaluate_on(F.generators[i], M);
    PolyMat rhs = PolyMat::identity(M.rank(), M.nvars).scaled(F.generators[i].substitute(V.embedding()));
    if (lhs != rhs) return "basic invariant " + std::to_string(i) + " does not act through a";
  }
  return {};
}

GradedModule twist(const BlockVariety& V, const GradedModule& M, std::size_t g) {
  GradedModule r = forget_symmetry(M);
  for (auto& Y : r.Y) Y = V.symmetry().apply(g, Y);
  return r;
}

GradedModule average(const BlockVariety& V, const GradedModule& M) {
  const SymmetryGroup& S = V.symmetry();
  std::size_t n = M.rank(), k = S.order();
  GradedModule out;
  out.nvars = M.nvars;
  std::vector<GradedModule> parts;
  for (std::size_t h = 0; h < k; ++h) parts.push_back(twist(V, M, h));
  for (std::size_t h = 0; h < k; ++h) out.shifts.insert(out.shifts.end(), M.shifts.begin(), M.shifts.end());
  for (std::size_t j = 0; j < M.Y.size(); ++j) {
    PolyMat Y(n * k, n * k, M.nvars);
    for (std::size_t h = 0; h < k; ++h)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) Y(h * n + a, h * n + b) = parts[h].Y[j](a, b);
    out.Y.push_back(std::move(Y));
  }
  for (std::size_t g = 0; g < k; ++g) {
    QMat P(n * k, n * k);
    for (std::size_t h = 0; h < k; ++h) {
      std::size_t gh = S.index_of_bits(S.bits[g] ^ S.bits[h]);
      for (std::size_t b = 0; b < n; ++b) P(gh * n + b, h * n + b) = 1;
    }
    out.G.push_back(PolyMat::from_constant(P, M.nvars));
  }
  return out;
}

GradedModule forget_symmetry(const GradedModule& M) {
  GradedModule r = M;
  r.G.assign(1, M.G.empty() ? PolyMat::identity(M.rank(), M.nvars) : M.G[0]);
  return r;
}

GradedModule wall(const BlockVariety& V, const GradedModule& M, int s, int N) {
  if (s < 0 || s >= V.rank()) throw VarietyError("wall: simple reflection " + std::to_string(s) + " out of range");
  const auto& A = V.weyl().root_datum().cartan;
  std::size_t n = M.rank();
  PolyMat Yrho(n, n, M.nvars);
  for (int j = 0; j < V.rank(); ++j)
    if (A[s][j] != 0) Yrho = Yrho + M.Y[j].scaled(Q(A[s][j]));
  PolyMat Yrho2 = Yrho * Yrho;
  PolyMat I = PolyMat::identity(n, M.nvars), Z(n, n, M.nvars);
  GradedModule out;
  out.nvars = M.nvars;
  out.shifts = M.shifts;
  for (int x : M.shifts) {
    if (x + 2 > N) throw TruncationError(N, x + 2, "wall functor");
    out.shifts.push_back(x + 2);
  }
  for (int j = 0; j < V.rank(); ++j) {
    Q c = j == s ? Q(1, 2) : Q(0);
    PolyMat diag = M.Y[j] - Yrho.scaled(c);
    out.Y.push_back(PolyMat::blocks(diag, Yrho2.scaled(c), I.scaled(c), diag));
  }
  for (const auto& G : M.G) out.G.push_back(PolyMat::block_diag(G, G));
  return out;
}

GradedModule bott_samelson(const BlockVariety& V, const GradedModule& base, const std::vector<int>& word, int N) {
  GradedModule M = base;
  for (int s : word) M = wall(V, M, s, N);
  return M;
}

std::map<std::size_t, std::vector<std::size_t>> character(const BlockVariety& V, const GradedModule& M, int N) {
  std::map<std::size_t, std::vector<std::size_t>> out;
  GradedModule plain = forget_symmetry(M);
  SymmetryGroup triv = SymmetryGroup::trivial(M.nvars);
  for (auto w : V.components()) out[w] = hom_dimensions(plain, component_sheaf(V, w), 0, N, triv);
  return out;
}

// ---------------------------------------------------------------- canonical objects

int default_truncation(const BlockDatum& b) {
  std::size_t longest = 0;
  if (b.variety)
    for (const auto& e : b.variety->schedule) longest = std::max(longest, e.word.size());
  return 2 * static_cast<int>(longest) + 4;
}

namespace {

int lowest_chi(const GradedModule& M, const SymmetryGroup& S) {
  auto mult = lowest_characters(M, S);
  for (std::size_t c = 0; c < mult.size(); ++c)
    if (mult[c] > 0) return static_cast<int>(c);
  throw VarietyError("summand has no lowest-degree character");
}

}  // namespace

CanonicalObjects canonical_objects(const BlockDatum& b, const BlockDatum& companion, int N) {
  if (!b.variety) throw VarietyError("block '" + b.name + "' carries no variety data");
  BlockVariety V(b, companion);
  V.require_free();
  const SymmetryGroup& S = V.symmetry();
  CanonicalObjects C;
  C.block = b.name;
  C.dual = dual_block(b);
  C.truncation = N;
  HeckeModule hE = build_hecke(C.dual);
  KLVMatrix kE = klv(hE);

  auto closed = minimal_length_parameters(C.dual);
  for (const auto& [p, word] : b.variety->closed_components) {
    if (std::find(closed.begin(), closed.end(), p) == closed.end())
      throw VarietyError("parameter " + std::to_string(p) + " of the dual block is not closed");
    if (!V.weyl().is_reduced(word)) throw VarietyError("component word is not reduced");
    C.objects[p] = average(V, component_sheaf(V, V.weyl().from_word(word)));
    C.chi[p] = 0;
  }
  for (int p : closed)
    if (!C.objects.count(p)) throw VarietyError("closed parameter " + std::to_string(p) + " has no component");

  const auto& sched = b.variety->schedule;
  for (std::size_t i = 0; i < sched.size();) {
    std::size_t j = i;
    while (j < sched.size() && sched[j].start == sched[i].start && sched[j].word == sched[i].word) ++j;
    const auto& head = sched[i];
    if (!C.objects.count(head.start))
      throw VarietyError("schedule starts from parameter " + std::to_string(head.start) + " before it is built");
    ScheduleCertificate cert;
    cert.start = head.start;
    cert.word = head.word;

    GradedModule bs = bott_samelson(V, C.objects.at(head.start), head.word, N);
    std::vector<std::pair<GradedModule, int>> fresh;  // normalized summand, shift
    for (auto& sm : decompose(bs, S)) {
      int low = sm.lowest_shift();
      GradedModule norm = shifted(sm, -low);
      int label = -1;
      for (const auto& [p, obj] : C.objects)
        if (obj.rank() == norm.rank() && is_isomorphic(norm, obj, S)) {
          label = p;
          break;
        }
      if (label >= 0)
        cert.sheaf_multiplicity[label] += UPoly::u(low / 2);
      else
        fresh.emplace_back(std::move(norm), low);
    }
    std::map<int, std::size_t> by_chi;
    for (std::size_t f = 0; f < fresh.size(); ++f) {
      int chi = lowest_chi(fresh[f].first, S);
      if (by_chi.count(chi))
        throw VarietyError("two new summands with character " + std::to_string(chi) + " from start " +
                           std::to_string(head.start));
      by_chi[chi] = f;
    }
    std::set<std::size_t> used;
    for (std::size_t e = i; e < j; ++e) {
      auto it = by_chi.find(sched[e].chi);
      if (it == by_chi.end())
        throw VarietyError("no new summand with character " + std::to_string(sched[e].chi) + " for parameter " +
                           std::to_string(sched[e].param));
      if (C.objects.count(sched[e].param))
        throw VarietyError("parameter " + std::to_string(sched[e].param) + " is scheduled twice");
      used.insert(it->second);
      C.objects[sched[e].param] = fresh[it->second].first;
      C.chi[sched[e].param] = sched[e].chi;
      cert.new_params.push_back(sched[e].param);
      cert.sheaf_multiplicity[sched[e].param] += UPoly::u(fresh[it->second].second / 2);
    }
    if (used.size() != fresh.size())
      throw VarietyError("a new summand from start " + std::to_string(head.start) + " has no schedule entry");

    PVec X = klv_element(kE, head.start);
    for (int s : head.word) X = hE.wall(s, X);
    PVec c = expand_in_klv(kE, X);
    for (std::size_t g = 0; g < c.size(); ++g)
      if (!c[g].is_zero()) cert.hecke_multiplicity[static_cast<int>(g)] = c[g];
    C.certificates.push_back(std::move(cert));
    i = j;
  }
  for (std::size_t p = 0; p < C.dual.size(); ++p)
    if (!C.objects.count(static_cast<int>(p))) C.missing.push_back(static_cast<int>(p));
  return C;
}

CanonicalObjects canonical_objects(const BlockDatum& b, const std::string& data_dir, int N) {
  if (b.companion_adjoint.empty() || b.companion_adjoint == b.name) return canonical_objects(b, b, N);
  return canonical_objects(b, builtin_block(b.companion_adjoint, data_dir), N);
}

// ---------------------------------------------------------------- Ext

bool ExtAlgebra::pairing_is_identity() const {
  if (!negative_degrees_vanish) return false;
  for (std::size_t i = 0; i < pairing.size(); ++i)
    for (std::size_t j = 0; j < pairing.size(); ++j)
      if (pairing[i][j] != (i == j ? 1u : 0u)) return false;
  return true;
}

ExtAlgebra ext_algebra(const BlockVariety& V, const CanonicalObjects& C, int N) {
  const SymmetryGroup& S = V.symmetry();
  ExtAlgebra X;
  for (const auto& [p, obj] : C.objects) {
    X.params.push_back(p);
    X.lengths.push_back(C.dual.length(p));
  }
  std::size_t n = X.params.size();
  X.dims.assign(n, std::vector<std::map<int, std::size_t>>(n));
  X.pairing.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& Mi = C.objects.at(X.params[i]);
      const auto& Mj = C.objects.at(X.params[j]);
      int li = X.lengths[i], lj = X.lengths[j];
      if (lj - li > N) throw TruncationError(N, lj - li, "ext_algebra degree-0 window");
      int lo = *std::min_element(Mj.shifts.begin(), Mj.shifts.end()) -
               *std::max_element(Mi.shifts.begin(), Mi.shifts.end());
      for (int d = lo; d <= N; ++d) {
        std::size_t dim = module_hom(Mi, Mj, d, S).size();
        if (dim == 0) continue;
        int k = d + li - lj;
        X.dims[i][j][k] = dim;
        if (k < 0) X.negative_degrees_vanish = false;
        if (k == 0) X.pairing[i][j] = dim;
      }
    }
  return X;
}

}  // namespace bkd
