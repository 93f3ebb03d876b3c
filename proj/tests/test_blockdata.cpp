#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "bkd/blockdata.hpp"

using namespace bkd;

namespace {
BlockDatum load(const std::string& n) { return builtin_block(n, default_data_dir()); }
}  // namespace

TEST_CASE("bundled blocks validate") {
  for (const auto& n : list_blocks(default_data_dir())) {
    CAPTURE(n);
    auto b = load(n);
    auto rep = validate(b);
    CHECK(rep.ok());
    CHECK(validate(dual_block(b)).ok());
  }
}

TEST_CASE("complex blocks") {
  auto a1 = complex_block("A1");
  REQUIRE(a1.size() == 2);
  CHECK(a1.params[0].length == 0);
  CHECK(a1.params[1].length == 1);
  CHECK(complex_block("A2").size() == 6);
  CHECK(complex_block("B2").size() == 8);
  CHECK(load("sl2R_principal").size() == 3);
  CHECK_THROWS_AS(load("no_such_block"), UnknownBlockError);
  CHECK_THROWS_WITH(load("no_such_block"), doctest::Contains("complex_A1"));
}

TEST_CASE("injected defects are reported with their witness") {
  auto b = complex_block("A1");
  b.cross[0][0] = 0;
  auto rep = validate(b);
  REQUIRE_FALSE(rep.ok());
  bool found = std::any_of(rep.violations.begin(), rep.violations.end(),
                           [](const Violation& v) { return v.axiom == "cross-involution" && v.s == 0 && v.param == 1; });
  CHECK(found);
  CHECK_THROWS_AS(dual_block(b), BlockError);

  auto s = load("sl2R_principal");
  s.cayley[0][2] = {0};
  CHECK_FALSE(validate(s).ok());

  auto a2 = complex_block("A2");
  std::swap(a2.cross[0][0], a2.cross[0][1]);  // breaks involutivity and braids
  CHECK_FALSE(validate(a2).ok());
}

TEST_CASE("dual blocks") {
  auto a1 = complex_block("A1");
  auto d = dual_block(a1);
  CHECK(d.params[0].length == 1);
  CHECK(d.params[1].length == 0);
  std::string why;
  CHECK_MESSAGE(same_combinatorics(relabel(d, a1.duality->map), a1, &why), why);

  for (const auto& n : list_blocks(default_data_dir())) {
    CAPTURE(n);
    auto b = load(n);
    CHECK(same_combinatorics(dual_block(dual_block(b)), b));
    REQUIRE(b.duality);
    auto partner = load(b.duality->block);
    CHECK_MESSAGE(same_combinatorics(relabel(dual_block(b), b.duality->map), partner, &why), why);
    REQUIRE(partner.duality);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(partner.duality->map[b.duality->map[i]] == static_cast<int>(i));
  }

  auto sd = dual_block(load("sl2R_principal"));
  CHECK(sd.size() == 3);
  int top = sd.max_length();
  CHECK(std::count_if(sd.params.begin(), sd.params.end(), [&](const Param& p) { return p.length == top; }) == 2);
}

TEST_CASE("products match the bundled files") {
  auto sl = load("sl2R_principal"), pgl = load("pgl2R_principal");
  for (auto [f1, name] : {std::pair{sl, std::string("sl2Rxsl2R_principal")}, std::pair{pgl, std::string("pgl2Rxpgl2R_principal")}}) {
    auto p = product_block(f1, f1, name);
    auto file = load(name);
    std::string why;
    CHECK_MESSAGE(same_combinatorics(p, file, &why), why);
    CHECK(p.weyl_type == file.weyl_type);
    CHECK(p.theta.diagram == file.theta.diagram);
    CHECK(p.flags == file.flags);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.params[i].orbit_tag == file.params[i].orbit_tag);
  }
}

TEST_CASE("open orbit parameters") {
  CHECK(open_orbit_parameters(complex_block("A1")) == std::vector<int>{1});
  CHECK(open_orbit_parameters(load("sl2R_principal")) == std::vector<int>{2});
  CHECK(open_orbit_parameters(load("pgl2R_principal")) == std::vector<int>{1, 2});
  for (const auto& n : list_blocks(default_data_dir())) CHECK_FALSE(open_orbit_parameters(load(n)).empty());
  CHECK_THROWS_AS(open_orbit_parameters(dual_block(load("sl2R_principal"))), BlockError);
}

TEST_CASE("block groups") {
  auto a1 = complex_block("A1");
  auto g = block_groups(a1, a1);
  CHECK(g.w_m.order() == g.w_m_prime.order());
  CHECK(g.s_order() == 1);

  auto sl = load("sl2R_principal"), pgl = load("pgl2R_principal");
  auto gs = block_groups(sl, pgl);
  CHECK(gs.w_m.order() == 2);
  CHECK(gs.w_m_prime.order() == 1);
  CHECK(gs.s_order() == 2);
  CHECK(gs.s_generators.size() == 1);
  auto gp = block_groups(pgl, pgl);
  CHECK(gp.s_order() == 1);

  auto ss = load("sl2Rxsl2R_principal");
  auto gss = block_groups(ss, load(ss.companion_adjoint));
  CHECK(gss.s_order() == 4);
  CHECK(gss.s_generators.size() == 2);

  for (const auto& n : list_blocks(default_data_dir())) {
    CAPTURE(n);
    auto b = load(n);
    auto comp = load(b.companion_adjoint);
    auto open = open_orbit_parameters(b);
    auto groups = block_groups(b, comp);
    CHECK(open.size() * groups.w_m.order() == groups.w_theta_eff.order());
    // S is an elementary abelian 2-group: its order is 2^(number of generators)
    CHECK(groups.s_order() == (std::size_t{1} << groups.s_generators.size()));
    for (int base : open) CHECK(block_groups(b, comp, base).w_m.order() == groups.w_m.order());
  }
}

TEST_CASE("closed orbit counts") {
  CHECK(closed_orbit_count(complex_block("A1")) == 1);
  CHECK(closed_orbit_count(complex_block("B2")) == 1);
  CHECK(closed_orbit_count(load("sl2R_principal")) == 1);
  CHECK(closed_orbit_count(load("pgl2R_principal")) == 2);
  CHECK(closed_orbit_count(load("pgl2Rxpgl2R_principal")) == 4);
  auto b = load("pgl2R_principal");
  b.params[1].orbit_tag = b.params[2].orbit_tag = "open";
  b.cross[0] = {0, 2, 1};
  CHECK_NOTHROW(closed_orbit_count(b));
}

TEST_CASE("json round trip") {
  for (const auto& n : list_blocks(default_data_dir())) {
    auto b = load(n);
    auto text = block_to_json_text(b);
    auto c = block_from_json_text(text);
    CHECK(block_to_json_text(c) == text);
  }
  CHECK_THROWS_AS(block_from_json_text("{"), BlockError);
  CHECK_THROWS_AS(block_from_json_text(R"({"name": "x"})"), BlockError);
  CHECK_THROWS_AS(block_from_json_text(R"({"name":"x","weyl_type":"A1","theta":{},"params":[],"status":[["zz"]],"cross":[],"cayley":[]})"),
                  BlockError);
}

TEST_CASE("atlas importer") {
  const char* text =
      "Name an output file (return for stdout, ? to abandon):\n"
      "0(0,1):  0  [i1]  1  (2,*)  e\n"
      "1(1,1):  0  [i1]  0  (2,*)  e\n"
      "2(2,0):  1  [r1]  2  (0,1)  1\n";
  auto b = import_atlas_block(text, "sl2R_imported", "A1");
  CHECK(same_combinatorics(b, load("sl2R_principal")));

  CHECK_THROWS_AS(import_atlas_block("", "x", "A1"), AtlasImportError);
  CHECK_THROWS_WITH_AS(import_atlas_block("0(0,1): 0 [i1] 1 (2,*)\n1(1,1): 0 [zz] 0 (2,*)\n", "x", "A1"),
                       doctest::Contains("line 2"), AtlasImportError);
  CHECK_THROWS_WITH_AS(import_atlas_block("0(0,1): 0 [i1,i1] 1 (2,*)\n", "x", "A1"), doctest::Contains("rank"),
                       AtlasImportError);
  CHECK_THROWS_WITH_AS(import_atlas_block("0(0,1): 0 [i1] 5 (2,*)\n", "x", "A1"), doctest::Contains("missing parameter"),
                       AtlasImportError);
  CHECK_THROWS_WITH_AS(import_atlas_block("0(0,1): 0 [C+] 0\n", "x", "A1"), doctest::Contains("Cayley"), AtlasImportError);
}

TEST_CASE("layered block registry") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "bkd_registry_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp / "blocks");
  auto custom = load("sl2R_principal");
  custom.name = "my_block";
  std::ofstream(tmp / "blocks" / "my_block.json") << block_to_json_text(custom);

  BlockRegistry reg({tmp.string(), default_data_dir()});
  auto names = reg.names();
  CHECK(std::count(names.begin(), names.end(), "my_block") == 1);
  CHECK(std::count(names.begin(), names.end(), "complex_A1") == 1);
  CHECK(reg.get("my_block").size() == custom.size());
  CHECK_THROWS_AS(reg.get("no_such_block"), UnknownBlockError);
  auto sl = reg.get("sl2R_principal");
  CHECK(reg.companion(sl).name == sl.companion_adjoint);
  auto a1 = reg.get("complex_A1");
  CHECK(reg.companion(a1).name == "complex_A1");
  CHECK(BlockRegistry::standard(tmp.string()).dirs().front() == tmp.string());
  fs::remove_all(tmp);
}
