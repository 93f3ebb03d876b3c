#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "bkd/rootdata.hpp"

using namespace bkd;

TEST_CASE("root counts") {
  CHECK(build_root_system({{2}}).roots.size() == 2);
  auto a2 = build_root_system({{2, -1}, {-1, 2}});
  CHECK(a2.roots.size() == 6);
  CHECK(a2.num_positive() == 3);
  CHECK(build_root_system({{2, -1}, {-2, 2}}).roots.size() == 8);
  CHECK(root_system_from_type("G2").roots.size() == 12);
  CHECK(root_system_from_type("A3").roots.size() == 12);
  CHECK(root_system_from_type("D4").roots.size() == 24);
  CHECK(root_system_from_type("A1xA1").roots.size() == 4);
}

TEST_CASE("roots closed under negation") {
  for (std::string t : {"A2", "B2", "C3", "G2"}) {
    auto rd = root_system_from_type(t);
    for (const auto& r : rd.roots) {
      auto m = r;
      for (auto& x : m) x = -x;
      CHECK(std::find(rd.roots.begin(), rd.roots.end(), m) != rd.roots.end());
    }
  }
}

TEST_CASE("invalid Cartan matrices are rejected with the failed criterion") {
  CHECK_THROWS_WITH_AS(build_root_system({{2, -1}, {-1, 3}}), doctest::Contains("diagonal"), RootDataError);
  CHECK_THROWS_WITH_AS(build_root_system({{2, 1}, {1, 2}}), doctest::Contains("positive off-diagonal"), RootDataError);
  CHECK_THROWS_WITH_AS(build_root_system({{2, -2}, {-2, 2}}), doctest::Contains("finite type"), RootDataError);
  CHECK_THROWS_WITH_AS(build_root_system({{2, 0}, {-1, 2}}), doctest::Contains("zero pattern"), RootDataError);
  CHECK_THROWS_AS(cartan_matrix("E9x"), RootDataError);
}

TEST_CASE("Weyl group orders and longest elements") {
  WeylGroup a2(root_system_from_type("A2"));
  CHECK(a2.order() == 6);
  CHECK(a2.length(a2.longest()) == 3);
  WeylGroup b2(root_system_from_type("B2"));
  CHECK(b2.order() == 8);
  CHECK(b2.length(b2.longest()) == 4);
  CHECK(WeylGroup(root_system_from_type("A1xA1")).order() == 4);
  CHECK(WeylGroup(root_system_from_type("G2")).order() == 12);
  CHECK(WeylGroup(root_system_from_type("A3")).order() == 24);
  CHECK_THROWS_AS(WeylGroup(root_system_from_type("A3"), 10), RootDataError);
}

TEST_CASE("Coxeter relations hold in the reflection representation") {
  for (std::string t : {"A2", "B2", "G2", "A1xA1", "A3"}) {
    WeylGroup W(root_system_from_type(t));
    const auto& A = W.root_datum().cartan;
    int n = W.rank();
    auto I = QMat::identity(n);
    for (int i = 0; i < n; ++i) {
      const auto& si = W.simple_reflection_matrix(i);
      CHECK(si * si == I);
      for (int j = i + 1; j < n; ++j) {
        long p = A[i][j] * A[j][i];
        int m = p == 0 ? 2 : p == 1 ? 3 : p == 2 ? 4 : 6;
        QMat x = si * W.simple_reflection_matrix(j), acc = I;
        for (int k = 0; k < m; ++k) acc = acc * x;
        CHECK(acc == I);
      }
    }
    for (std::size_t a = 0; a < W.order(); ++a) {
      CHECK(W.length(a) == W.length(W.inverse(a)));
      CHECK(W.is_reduced(W.element(a).word));
      for (std::size_t b = 0; b < W.order(); ++b)
        CHECK(W.element(W.multiply(a, b)).matrix == W.element(a).matrix * W.element(b).matrix);
    }
    CHECK(W.length(W.identity()) == 0);
  }
}

TEST_CASE("fixed subgroups") {
  WeylGroup a2(root_system_from_type("A2"));
  auto id = make_involution(a2, {0, 1});
  CHECK(fixed_subgroup(a2, id).order() == 6);
  auto flip = make_involution(a2, {1, 0});
  auto f = fixed_subgroup(a2, flip);
  REQUIRE(f.order() == 2);
  CHECK(f.contains(a2.identity()));
  CHECK(f.contains(a2.longest()));

  WeylGroup aa(root_system_from_type("A1xA1"));
  auto swap = make_involution(aa, {1, 0});
  auto d = fixed_subgroup(aa, swap);
  REQUIRE(d.order() == 2);
  CHECK(d.contains(aa.longest()));

  // closure and Lagrange
  for (const auto* g : {&a2}) {
    for (auto th : {id, flip, make_involution(*g, {1, 0}, {}, -1)}) {
      auto s = fixed_subgroup(*g, th);
      CHECK(g->order() % s.order() == 0);
      for (auto x : s.elements) {
        CHECK(s.contains(g->inverse(x)));
        for (auto y : s.elements) CHECK(s.contains(g->multiply(x, y)));
      }
    }
  }
}

TEST_CASE("involution validation") {
  WeylGroup b2(root_system_from_type("B2"));
  CHECK_THROWS_AS(make_involution(b2, {1, 0}), RootDataError);  // not a diagram automorphism
  WeylGroup a2(root_system_from_type("A2"));
  CHECK_THROWS_AS(make_involution(a2, {0, 1}, {0, 1}), RootDataError);  // twist of order 3
  auto th = make_involution(a2, {1, 0}, {}, -1);
  auto d = negated_dual(th);
  CHECK(d.matrix * d.matrix == QMat::identity(2));
  CHECK(negated_dual(d).matrix == th.matrix);
}

TEST_CASE("split part") {
  WeylGroup a1(root_system_from_type("A1"));
  auto minus = make_involution(a1, {0}, {}, -1);
  CHECK(split_part(minus).basis.size() == 1);
  CHECK(split_part(make_involution(a1, {0})).basis.size() == 0);
  WeylGroup aa(root_system_from_type("A1xA1"));
  auto sw = make_involution(aa, {1, 0});
  auto sp = split_part(sw);
  REQUIRE(sp.basis.size() == 1);
  CHECK(sw.matrix.apply(sp.basis[0]) == std::vector<Q>{-sp.basis[0][0], -sp.basis[0][1]});
}

TEST_CASE("invariant degrees") {
  auto triv = invariant_degrees({QMat::identity(1)});
  CHECK(triv.free);
  CHECK(triv.degrees == std::vector<int>{1});
  auto pm = invariant_degrees({QMat::identity(1), -QMat::identity(1)});
  CHECK(pm.degrees == std::vector<int>{2});
  WeylGroup a2(root_system_from_type("A2"));
  auto d = invariant_degrees(reflection_matrices(a2));
  CHECK(d.free);
  CHECK(d.degrees == std::vector<int>{2, 3});
  CHECK_THROWS_AS(invariant_degrees({QMat::identity(1), QMat::identity(1).scaled(2)}), RootDataError);

  for (std::string t : {"A1", "A2", "B2", "G2", "A1xA1", "A3"}) {
    WeylGroup W(root_system_from_type(t));
    auto r = invariant_degrees(reflection_matrices(W));
    CHECK(r.free);
    long prod = std::accumulate(r.degrees.begin(), r.degrees.end(), 1L, std::multiplies<long>());
    CHECK(static_cast<std::size_t>(prod) == W.order());
  }
  // Z/4 acting by rotation on the plane has non-free invariants
  QMat rot = QMat::from_ints({{0, -1}, {1, 0}});
  auto r = invariant_degrees({QMat::identity(2), rot, rot * rot, rot * rot * rot});
  CHECK_FALSE(r.free);
  CHECK(r.molien[2] == 1);
}
