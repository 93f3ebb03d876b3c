#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "bkd/gradedalg.hpp"
#include "bkd/rootdata.hpp"
#include "oracles.hpp"

using namespace bkd;

namespace {

std::vector<long> as_longs(const HilbertSeries& h) {
  std::vector<long> v;
  for (const auto& c : h.coeffs) v.push_back(c.get_si());
  return v;
}

Poly x1() { return Poly::var(1, 0); }

/// Rank-one module over Q[x] with y acting by c x.
GradedModule line(long c, std::size_t group_order = 1) {
  GradedModule M;
  M.nvars = 1;
  M.shifts = {0};
  PolyMat Y(1, 1, 1);
  Y(0, 0) = x1().scaled(Q(c));
  M.Y = {Y};
  M.G.assign(group_order, PolyMat::identity(1, 1));
  return M;
}

/// Q[x, y]/(y^2 - x^2) as a free Q[x]-module on 1, y.
GradedModule fiber_a1(const PolyMat& g = PolyMat::identity(2, 1)) {
  GradedModule M;
  M.nvars = 1;
  M.shifts = {0, 2};
  PolyMat Y(2, 2, 1);
  Y(0, 1) = x1() * x1();
  Y(1, 0) = Poly::constant(1, 1);
  M.Y = {Y};
  M.G = {PolyMat::identity(2, 1)};
  if (g != PolyMat::identity(2, 1)) M.G.push_back(g);
  return M;
}

SymmetryGroup sign_group() { return SymmetryGroup::from_generators(1, {QMat::from_ints({{-1}})}); }

GradedModule with_group(GradedModule M, const std::vector<PolyMat>& G) {
  M.G = G;
  return M;
}

}  // namespace

TEST_CASE("rational series expansions") {
  CHECK(as_longs(rational_series({4}, {2, 2}, 8)) == std::vector<long>{1, 0, 2, 0, 2, 0, 2, 0, 2});
  CHECK(as_longs(rational_series({}, {1}, 3)) == std::vector<long>{1, 1, 1, 1});
  CHECK_THROWS_AS(rational_series({0}, {}, 3), AlgebraError);
}

TEST_CASE("invariant rings of small groups") {
  auto sign = invariant_ring({QMat::identity(1), QMat::from_ints({{-1}})}, 6);
  CHECK(as_longs(sign.hilbert()) == std::vector<long>{1, 0, 1, 0, 1, 0, 1});
  CHECK(sign.generator_degrees == std::vector<int>{2});

  WeylGroup A2(root_system_from_type("A2"));
  auto inv = invariant_ring(reflection_matrices(A2), 6);
  CHECK(as_longs(inv.hilbert()) == std::vector<long>{1, 0, 1, 1, 1, 1, 2});
  CHECK(inv.generator_degrees == std::vector<int>{2, 3});

  auto weighted = invariant_ring(reflection_matrices(A2), 6, 2);
  CHECK(as_longs(weighted.hilbert()) == std::vector<long>{1, 0, 0, 0, 1, 0, 1});
  CHECK(weighted.generator_degrees == std::vector<int>{4, 6});
}

TEST_CASE("invariant Hilbert series agree with the Molien oracle") {
  std::vector<std::vector<QMat>> groups;
  for (auto t : {"A1", "A2", "B2", "G2", "A1xA1", "A3"}) groups.push_back(reflection_matrices(WeylGroup(root_system_from_type(t))));
  QMat rot = QMat::from_ints({{0, -1}, {1, 0}});
  groups.push_back({QMat::identity(2), rot, rot * rot, rot * rot * rot});
  for (const auto& g : groups) {
    int N = g[0].rows() > 2 ? 8 : 12;
    auto h = invariant_ring(g, N).hilbert();
    auto m = oracle::molien(g, N);
    for (int d = 0; d <= N; ++d) CHECK(Q(h.coeffs[d]) == m[d]);
  }
}

TEST_CASE("basic invariant degrees") {
  auto degs = [](const char* t, int N) {
    return invariant_ring(reflection_matrices(WeylGroup(root_system_from_type(t))), N).generator_degrees;
  };
  CHECK(degs("B2", 8) == std::vector<int>{2, 4});
  CHECK(degs("G2", 8) == std::vector<int>{2, 6});
  CHECK(degs("A3", 5) == std::vector<int>{2, 3, 4});
}

TEST_CASE("harmonic basis is a free basis over the invariants") {
  WeylGroup A2(root_system_from_type("A2"));
  auto inv = invariant_ring(reflection_matrices(A2), 8, 2);
  auto H = harmonic_basis(inv, 6);
  auto d = H.degrees;
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<int>{0, 2, 2, 4, 4, 6});
  CHECK_THROWS_AS(harmonic_basis(inv, 5), AlgebraError);

  WeylGroup B2(root_system_from_type("B2"));
  auto HB = harmonic_basis(invariant_ring(reflection_matrices(B2), 10, 2), 8);
  auto db = HB.degrees;
  std::sort(db.begin(), db.end());
  CHECK(db == std::vector<int>{0, 2, 2, 4, 4, 6, 6, 8});
}

TEST_CASE("symmetry groups") {
  auto S = sign_group();
  CHECK(S.order() == 2);
  CHECK(S.apply(1, x1()) == x1().scaled(Q(-1)));
  CHECK(SymmetryGroup::trivial(2).order() == 1);
  CHECK_THROWS_AS(SymmetryGroup::from_generators(1, {QMat::from_ints({{2}})}), AlgebraError);
  QMat m = QMat::from_ints({{-1, 0}, {0, 1}});
  CHECK_THROWS_AS(SymmetryGroup::from_generators(2, {m, m}), AlgebraError);
  auto S2 = SymmetryGroup::from_generators(2, {m, QMat::from_ints({{1, 0}, {0, -1}})});
  CHECK(S2.order() == 4);
  CHECK(S2.act[3] == QMat::from_ints({{-1, 0}, {0, -1}}));
}

TEST_CASE("module consistency checks") {
  auto triv = SymmetryGroup::trivial(1);
  CHECK(module_defect(line(1), triv).empty());
  CHECK(module_defect(fiber_a1(), triv).empty());
  auto bad = line(1);
  bad.Y[0](0, 0) = x1() * x1();
  CHECK_FALSE(module_defect(bad, triv).empty());
  auto two = direct_sum(line(1), line(-1));
  two.Y.push_back(PolyMat::identity(2, 1).scaled(x1()));
  two.Y[1](0, 1) = x1();
  two.Y[1](1, 0) = Poly::constant(1, 0);
  CHECK(module_defect(two, triv).find("commute") != std::string::npos);
  CHECK(evaluate_on(Poly::var(1, 0) * Poly::var(1, 0), fiber_a1()) == PolyMat::identity(2, 1).scaled(x1() * x1()));
  CHECK(as_longs(fiber_a1().hilbert(6)) == std::vector<long>{1, 0, 2, 0, 2, 0, 2});
}

TEST_CASE("Hom spaces agree with brute force over Q[x,y]/(y^2 - x^2)") {
  // Modules and the ideals presenting them as cyclic R-modules, R = Q[x, y].
  Poly x = Poly::var(2, 0), y = Poly::var(2, 1);
  struct Obj {
    GradedModule M;
    std::vector<Poly> ideal;
  };
  std::vector<Obj> objs = {{line(1), {y - x}}, {line(-1), {y + x}}, {fiber_a1(), {y * y - x * x}}};
  auto triv = SymmetryGroup::trivial(1);
  for (const auto& A : objs)
    for (const auto& B : objs)
      for (int k = 0; k <= 4; ++k)
        CHECK(module_hom(A.M, B.M, 2 * k, triv).size() == oracle::cyclic_hom_dim(A.ideal, B.ideal, 2, k));
  // odd and negative degrees vanish for these cyclic modules
  CHECK(module_hom(fiber_a1(), fiber_a1(), 1, triv).empty());
  CHECK(module_hom(fiber_a1(), fiber_a1(), -2, triv).size() == 0);
  CHECK(hom_dimensions(line(1), fiber_a1(), 0, 6, triv) == std::vector<std::size_t>{0, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("decomposition into indecomposables") {
  auto triv = SymmetryGroup::trivial(1);
  CHECK(decompose(fiber_a1(), triv).size() == 1);
  auto two = decompose(direct_sum(line(1), line(-1)), triv);
  REQUIRE(two.size() == 2);
  int plus = is_isomorphic(two[0], line(1), triv) ? 0 : 1;
  CHECK(is_isomorphic(two[plus], line(1), triv));
  CHECK(is_isomorphic(two[1 - plus], line(-1), triv));
  CHECK_FALSE(is_isomorphic(line(1), line(-1), triv));

  // End^0 is a full matrix algebra here.
  auto same = decompose(direct_sum(line(1), line(1)), triv);
  REQUIRE(same.size() == 2);
  CHECK(is_isomorphic(same[0], line(1), triv));
  CHECK(is_isomorphic(same[1], line(1), triv));

  auto graded = decompose(direct_sum(fiber_a1(), shifted(line(1), 2)), triv);
  REQUIRE(graded.size() == 2);
  std::vector<int> lows{graded[0].lowest_shift(), graded[1].lowest_shift()};
  std::sort(lows.begin(), lows.end());
  CHECK(lows == std::vector<int>{0, 2});
  CHECK_FALSE(is_isomorphic(line(1), shifted(line(1), 2), triv));

  PolyMat e(2, 2, 1);
  e(0, 0) = Poly::constant(1, 1);
  auto img = image_of_idempotent(direct_sum(line(1), line(-1)), e, triv);
  CHECK(img.rank() == 1);
  CHECK(is_isomorphic(img, line(1), triv));
}

TEST_CASE("equivariant modules and characters") {
  auto S = sign_group();
  PolyMat swap(2, 2, 1);
  swap(0, 1) = Poly::constant(1, 1);
  swap(1, 0) = Poly::constant(1, 1);
  auto avg = with_group(direct_sum(line(1), line(-1)), {PolyMat::identity(2, 1), swap});
  CHECK(module_defect(avg, S).empty());
  CHECK(decompose(avg, S).size() == 1);
  CHECK(lowest_characters(avg, S) == std::vector<int>{1, 1});

  auto plus = fiber_a1(PolyMat::identity(2, 1));
  plus.G = {PolyMat::identity(2, 1), PolyMat::identity(2, 1)};
  auto minus = plus;
  minus.G[1] = PolyMat::identity(2, 1).scaled(Q(-1));
  CHECK(module_defect(plus, S).empty());
  CHECK(module_defect(minus, S).empty());
  CHECK(lowest_characters(plus, S) == std::vector<int>{1, 0});
  CHECK(lowest_characters(minus, S) == std::vector<int>{0, 1});
  CHECK_FALSE(is_isomorphic(plus, minus, S));
  auto parts = decompose(direct_sum(plus, minus), S);
  CHECK(parts.size() == 2);

  // A line with the sign action is not a valid equivariant module: g(x) = -x.
  auto broken = with_group(line(1), {PolyMat::identity(1, 1), PolyMat::identity(1, 1)});
  CHECK_FALSE(module_defect(broken, S).empty());
}
