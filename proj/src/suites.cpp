#include "bkd/suites.hpp"

#include <sstream>
#include <stdexcept>

#include "bkd/blockvariety.hpp"
#include "bkd/hecke.hpp"

namespace bkd {

namespace {

std::string word_str(const std::vector<int>& w) {
  std::string s;
  for (int x : w) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "[" + s + "]";
}

std::string mult_str(const std::map<int, UPoly>& m) {
  std::string s;
  for (const auto& [p, c] : m) s += (s.empty() ? "" : " ") + std::to_string(p) + ":" + c.str();
  return "{" + s + "}";
}

void add_report(SuiteResult& r, const DualityReport& rep, const std::string& prefix = "") {
  for (const auto& c : rep.checks) r.checks.push_back({prefix + c.name, c.pass, c.detail});
}

/// False when the block is invalid; the violations are recorded as checks.
bool check_axioms(SuiteResult& r, const BlockDatum& b, const std::string& prefix = "") {
  auto rep = validate(b);
  for (const auto& v : rep.violations) {
    std::ostringstream d;
    if (v.s >= 0) d << "s=" << v.s << " ";
    if (v.param >= 0) d << "param=" << v.param << " ";
    d << v.detail;
    r.checks.push_back({prefix + "axiom " + v.axiom, false, d.str()});
  }
  if (rep.ok()) r.checks.push_back({prefix + "block axioms", true, std::to_string(b.size()) + " parameters"});
  return rep.ok();
}

template <class F>
void guarded(SuiteResult& r, const std::string& name, F&& f) {
  try {
    f();
  } catch (const TruncationError&) {
    throw;
  } catch (const std::exception& e) {
    r.checks.push_back({name, false, e.what()});
  }
}

void hecke_suite(SuiteResult& r, const BlockRegistry& reg, const BlockDatum& b) {
  HeckeModule h = build_hecke(b);
  WeylGroup W = block_weyl_group(b);
  add_report(r, hecke_relations_report(h));
  add_report(r, intertwining_word_independence(h, W), "intertwining: ");
  guarded(r, "translation wall identity", [&] {
    BlockDatum comp = reg.companion(b);
    BlockGroups g = block_groups(b, comp);
    add_report(r, translation_wall_identity(h, W, g.w_m.order(), comp.name == b.name), "translation: ");
  });
  add_report(r, cross_vs_intertwining(h, W), "cross action: ");
}

void duality_suite(SuiteResult& r, const BlockRegistry& reg, const BlockDatum& b) {
  BlockDatum d;
  try {
    d = reg.get(b.duality->block);
  } catch (const BlockError& e) {
    r.checks.push_back({"dual block present", false, e.what()});
    return;
  }
  if (!check_axioms(r, d, "dual ")) return;
  std::string why;
  bool same = same_combinatorics(relabel(dual_block(b), b.duality->map), d, &why);
  r.checks.push_back({"dual combinatorics", same, same ? d.name : why});
  bool inverse = d.duality && d.duality->block == b.name && d.duality->map.size() == b.size();
  for (std::size_t i = 0; inverse && i < b.size(); ++i) {
    int j = b.duality->map[i];
    inverse = j >= 0 && j < static_cast<int>(d.size()) && d.duality->map[j] == static_cast<int>(i);
  }
  r.checks.push_back({"bijections are inverse", inverse, inverse ? "" : "the dual block does not map back"});
  guarded(r, "signed inverse identity", [&] {
    KLVMatrix P = klv(build_hecke(b)), Pd = klv(build_hecke(d));
    add_report(r, verify_duality(P, Pd, b.duality->map), "forward: ");
    if (d.duality) add_report(r, verify_duality(Pd, P, d.duality->map), "backward: ");
  });
}

HilbertSeries one_plus_t2(int N) { return rational_series({4}, {2}, N); }

void variety_suite(SuiteResult& r, const BlockRegistry& reg, const BlockDatum& b, const SuiteOptions& opt) {
  BlockDatum comp = reg.companion(b);
  BlockVariety V(b, comp);
  int nh = opt.max_degree.value_or(20);
  auto full = fiber_product_hilbert(V, nh);
  auto expected = expected_fiber_hilbert(V, nh);
  r.checks.push_back({"fiber product Hilbert series", full == expected, full.str() + " vs " + expected.str()});
  for (int s = 0; s < V.rank(); ++s) {
    auto part = series_product(partial_fiber_hilbert(V, s, nh), one_plus_t2(nh));
    r.checks.push_back({"free over partial quotient s=" + std::to_string(s), part == full, part.str()});
  }
  bool free = V.w_prime().size() == 1;
  r.checks.push_back({"W' trivial", free, "|W'| = " + std::to_string(V.w_prime().size())});
  if (!free) return;

  auto O = structure_sheaf(V);
  std::string defect = sheaf_defect(V, O);
  bool hil = O.hilbert(nh) == full;
  r.checks.push_back({"structure sheaf", defect.empty() && hil, defect.empty() ? (hil ? "" : "Hilbert series differs") : defect});

  int nw = opt.max_degree.value_or(2 * b.max_length() + 4);
  for (auto w : V.components()) {
    auto M = component_sheaf(V, w);
    auto want = series_product(M.hilbert(nw), one_plus_t2(nw));
    for (int s = 0; s < V.rank(); ++s) {
      auto C = wall(V, M, s, nw);
      std::string dft = sheaf_defect(V, C);
      bool pass = dft.empty() && C.hilbert(nw) == want;
      r.checks.push_back({"wall law w=" + std::to_string(w) + " s=" + std::to_string(s), pass,
                          dft.empty() ? C.hilbert(nw).str() : dft});
    }
  }

  guarded(r, "generation", [&] {
    auto C = canonical_objects(b, comp, opt.max_degree.value_or(default_truncation(b)));
    std::string miss;
    for (int p : C.missing) miss += (miss.empty() ? "missing " : ",") + std::to_string(p);
    r.checks.push_back({"generation", C.missing.empty() && C.objects.size() == C.dual.size(),
                        miss.empty() ? std::to_string(C.objects.size()) + " objects" : miss});
    int ne = opt.max_degree.value_or(C.dual.max_length() - C.dual.min_length());
    auto X = ext_algebra(V, C, ne);
    r.checks.push_back({"Ext vanishes in negative degrees", X.negative_degrees_vanish, ""});
    std::string rows;
    for (const auto& row : X.pairing) {
      std::string s;
      for (auto v : row) s += (s.empty() ? "" : " ") + std::to_string(v);
      rows += (rows.empty() ? "" : "; ") + s;
    }
    r.checks.push_back({"Grothendieck pairing is the identity", X.pairing_is_identity(), rows});
  });
}

void cross_oracle_suite(SuiteResult& r, const BlockRegistry& reg, const BlockDatum& b, const SuiteOptions& opt) {
  auto C = canonical_objects(b, reg.companion(b), opt.max_degree.value_or(default_truncation(b)));
  for (const auto& c : C.certificates)
    r.checks.push_back({"start " + std::to_string(c.start) + " word " + word_str(c.word), c.agrees(),
                        "sheaf " + mult_str(c.sheaf_multiplicity) + " hecke " + mult_str(c.hecke_multiplicity)});
  for (const auto& e : b.variety->schedule) {
    auto it = C.chi.find(e.param);
    bool pass = it != C.chi.end() && it->second == e.chi;
    r.checks.push_back({"character of param " + std::to_string(e.param), pass,
                        it == C.chi.end() ? "not produced" : "chi=" + std::to_string(it->second)});
  }
}

}  // namespace

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s{Suite::hecke, Suite::duality, Suite::variety, Suite::cross_oracle};
  return s;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::hecke: return "hecke";
    case Suite::duality: return "duality";
    case Suite::variety: return "variety";
    case Suite::cross_oracle: return "cross-oracle";
  }
  return "";
}

Suite parse_suite(const std::string& name) {
  for (auto s : all_suites())
    if (suite_name(s) == name) return s;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

bool SuiteResult::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

SuiteResult run_suite(Suite s, const BlockRegistry& reg, const BlockDatum& b, const SuiteOptions& opt) {
  SuiteResult r;
  r.suite = suite_name(s);
  r.block = b.name;
  if (!check_axioms(r, b)) return r;
  switch (s) {
    case Suite::hecke:
      guarded(r, "hecke module", [&] { hecke_suite(r, reg, b); });
      break;
    case Suite::duality:
      if (!b.duality) r.skipped = "no dual block recorded";
      else duality_suite(r, reg, b);
      break;
    case Suite::variety:
      if (!b.variety) r.skipped = "no variety data";
      else guarded(r, "block variety", [&] { variety_suite(r, reg, b, opt); });
      break;
    case Suite::cross_oracle:
      if (!b.variety) r.skipped = "no variety data";
      else guarded(r, "canonical objects", [&] { cross_oracle_suite(r, reg, b, opt); });
      break;
  }
  return r;
}

}  // namespace bkd
