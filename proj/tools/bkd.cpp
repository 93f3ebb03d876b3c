// bkd: list bundled blocks, compute KLV and sheaf data, run verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 truncation degree too small.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bkd/blockvariety.hpp"
#include "bkd/hecke.hpp"
#include "bkd/suites.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace bkd;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kInputError = 2, kTruncation = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string data_dir;
  std::string format = "text";
  std::string out;
  std::optional<int> max_degree;
  bool verbose = false;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string dot_id(const std::string& s) {
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\\\"") : std::string(1, c);
  return q + "\"";
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

void require_format(const Config& cfg, std::initializer_list<const char*> allowed, const std::string& what) {
  for (const char* a : allowed)
    if (cfg.format == a) return;
  throw InputError("format '" + cfg.format + "' is not available for " + what);
}

BlockRegistry registry(const Config& cfg) {
  if (!cfg.data_dir.empty() && !std::filesystem::is_directory(cfg.data_dir))
    throw InputError("data directory '" + cfg.data_dir + "' does not exist");
  return BlockRegistry::standard(cfg.data_dir);
}

/// A registered name, or a path to a block file.
BlockDatum resolve(const BlockRegistry& reg, const std::string& arg) {
  namespace fs = std::filesystem;
  bool looks_like_path = arg.find('/') != std::string::npos || fs::path(arg).extension() == ".json";
  if (looks_like_path) {
    if (!fs::is_regular_file(arg)) throw InputError("block file '" + arg + "' does not exist");
    return load_block_file(arg);
  }
  return reg.get(arg);
}

// ---------------------------------------------------------------- list

std::string render_list(const Config& cfg, const BlockRegistry& reg) {
  std::vector<BlockDatum> blocks;
  for (const auto& n : reg.names()) blocks.push_back(reg.get(n));
  auto pairs = reg.pairs();
  auto flags = [](const BlockDatum& b) {
    std::vector<std::string> f(b.flags.begin(), b.flags.end());
    if (b.variety) f.push_back("variety");
    return f;
  };
  std::ostringstream out;
  if (cfg.format == "json") {
    json j;
    j["blocks"] = json::array();
    for (const auto& b : blocks)
      j["blocks"].push_back({{"name", b.name},
                             {"weyl_type", b.weyl_type},
                             {"params", b.size()},
                             {"flags", flags(b)},
                             {"dual", b.duality ? json(b.duality->block) : json(nullptr)}});
    j["pairs"] = json::array();
    for (const auto& [a, c] : pairs) j["pairs"].push_back({a, c});
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "name,weyl_type,params,flags,dual\n";
    for (const auto& b : blocks) {
      std::string f;
      for (const auto& x : flags(b)) f += (f.empty() ? "" : ";") + x;
      out << b.name << "," << b.weyl_type << "," << b.size() << "," << csv_field(f) << ","
          << (b.duality ? b.duality->block : "") << "\n";
    }
  } else {
    require_format(cfg, {"text"}, "list");
    out << "blocks:\n";
    for (const auto& b : blocks) {
      std::string f;
      for (const auto& x : flags(b)) f += (f.empty() ? "" : " ") + x;
      out << "  " << b.name << "  type " << b.weyl_type << "  params " << b.size();
      if (!f.empty()) out << "  [" << f << "]";
      out << "\n";
    }
    out << "dual pairs:\n";
    for (const auto& [a, c] : pairs) out << "  " << a << " <-> " << c << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- verify

std::string render_verify(const Config& cfg, const std::vector<SuiteResult>& results, bool ok) {
  std::ostringstream out;
  if (cfg.format == "json") {
    json j;
    j["command"] = "verify";
    j["ok"] = ok;
    j["max_degree"] = cfg.max_degree ? json(*cfg.max_degree) : json(nullptr);
    j["suites"] = json::array();
    for (const auto& r : results) {
      json s{{"suite", r.suite}, {"block", r.block}, {"ok", r.ok()}};
      s["skipped"] = r.skipped.empty() ? json(nullptr) : json(r.skipped);
      s["checks"] = json::array();
      for (const auto& c : r.checks) s["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      j["suites"].push_back(s);
    }
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "block,suite,check,result,detail\n";
    for (const auto& r : results) {
      if (!r.skipped.empty()) out << r.block << "," << r.suite << ",," << "skip," << csv_field(r.skipped) << "\n";
      for (const auto& c : r.checks)
        out << r.block << "," << r.suite << "," << csv_field(c.name) << "," << (c.pass ? "pass" : "fail") << ","
            << csv_field(c.detail) << "\n";
    }
  } else {
    require_format(cfg, {"text"}, "verify");
    std::size_t pass = 0, fail = 0;
    for (const auto& r : results) {
      out << "== " << r.block << " / " << r.suite;
      if (!r.skipped.empty()) {
        out << ": skipped (" << r.skipped << ")\n";
        continue;
      }
      out << "\n";
      for (const auto& c : r.checks) {
        (c.pass ? pass : fail)++;
        out << (c.pass ? "  PASS  " : "  FAIL  ") << c.name;
        if (!c.detail.empty() && (!c.pass || cfg.verbose)) out << "  -- " << c.detail;
        out << "\n";
      }
    }
    out << (ok ? "OK" : "FAILED") << ": " << pass << " passed, " << fail << " failed\n";
  }
  return out.str();
}

int cmd_verify(const Config& cfg, std::vector<std::string> blocks, const std::vector<std::string>& pair,
               const std::string& suite) {
  BlockRegistry reg = registry(cfg);
  std::vector<Suite> suites;
  if (suite == "all") suites = all_suites();
  else {
    try {
      suites = {parse_suite(suite)};
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  std::vector<BlockDatum> targets;
  for (const auto& b : blocks) targets.push_back(resolve(reg, b));
  if (!pair.empty()) {
    BlockDatum a = resolve(reg, pair[0]), c = resolve(reg, pair[1]);
    if (!a.duality || a.duality->block != c.name) throw InputError("'" + a.name + "' and '" + c.name + "' are not a dual pair");
    targets.push_back(a);
    targets.push_back(c);
  }
  if (targets.empty())
    for (const auto& n : reg.names()) targets.push_back(reg.get(n));

  SuiteOptions opt{cfg.max_degree};
  std::vector<SuiteResult> results;
  for (const auto& b : targets)
    for (auto s : suites) results.push_back(run_suite(s, reg, b, opt));
  bool ok = true;
  for (const auto& r : results) ok = ok && r.ok();
  emit(cfg, render_verify(cfg, results, ok));
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- compute

std::string render_klv(const Config& cfg, const BlockDatum& b) {
  KLVMatrix k = klv(build_hecke(b));
  if (cfg.format == "csv") return klv_csv(k);
  if (cfg.format == "text") return klv_table(k);
  std::ostringstream out;
  if (cfg.format == "json") {
    json j;
    j["block"] = b.name;
    j["lengths"] = k.rel_length;
    j["P"] = json::array();
    for (std::size_t d = 0; d < k.size(); ++d) {
      json row = json::array();
      for (std::size_t g = 0; g < k.size(); ++g) {
        json c = json::array();
        if (!k.P(d, g).is_zero())
          for (const auto& x : k.P(d, g).coeffs()) c.push_back(x.get_str());
        row.push_back(c);
      }
      j["P"].push_back(row);
    }
    out << j.dump(2) << "\n";
    return out.str();
  }
  require_format(cfg, {"dot"}, "klv");
  // Edges delta -> gamma for delta != gamma with P(delta, gamma) != 0.
  out << "digraph " << dot_id(b.name + "_klv") << " {\n  rankdir=BT;\n";
  for (const auto& p : b.params)
    out << "  " << p.id << " [label=" << dot_id(std::to_string(p.id) + " (" + std::to_string(p.length) + ")") << "];\n";
  for (std::size_t d = 0; d < k.size(); ++d)
    for (std::size_t g = 0; g < k.size(); ++g)
      if (d != g && !k.P(d, g).is_zero()) out << "  " << d << " -> " << g << " [label=" << dot_id(k.P(d, g).str()) << "];\n";
  out << "}\n";
  return out.str();
}

std::string render_variety(const Config& cfg, const BlockRegistry& reg, const BlockDatum& b) {
  if (!b.variety) throw InputError("block '" + b.name + "' has no variety data");
  BlockVariety V(b, reg.companion(b));
  int N = cfg.max_degree.value_or(20);
  auto hil = fiber_product_hilbert(V, N);
  std::vector<int> comps(V.components().begin(), V.components().end());
  std::vector<int> degs = V.invariants().generator_degrees;
  std::vector<int> shifts;
  if (V.w_prime().size() == 1) shifts = structure_sheaf(V).shifts;
  std::ostringstream out;
  if (cfg.format == "json") {
    json j{{"block", b.name},           {"rank", V.rank()},
           {"dim_a", V.dim_a()},        {"w_prime_order", V.w_prime().size()},
           {"components", comps},       {"symmetry_order", V.symmetry().order()},
           {"invariant_degrees", degs}, {"truncation", N}};
    std::vector<std::string> h;
    for (const auto& c : hil.coeffs) h.push_back(c.get_str());
    j["hilbert"] = h;
    j["structure_sheaf_shifts"] = shifts;
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "degree,dim\n";
    for (std::size_t d = 0; d < hil.coeffs.size(); ++d) out << d << "," << hil.coeffs[d].get_str() << "\n";
  } else {
    require_format(cfg, {"text"}, "variety");
    out << "block " << b.name << "\n"
        << "rank " << V.rank() << ", dim a " << V.dim_a() << ", |W'| " << V.w_prime().size() << ", symmetry order "
        << V.symmetry().order() << "\n"
        << "components " << join(comps, " ") << "\n"
        << "invariant degrees " << join(degs, " ") << "\n"
        << "Hilbert series of O(B) to degree " << N << ": " << hil.str() << "\n";
    if (!shifts.empty()) out << "structure sheaf generator degrees " << join(shifts, " ") << "\n";
  }
  return out.str();
}

std::string render_decompose(const Config& cfg, const BlockRegistry& reg, const BlockDatum& b) {
  if (!b.variety) throw InputError("block '" + b.name + "' has no variety data");
  auto C = canonical_objects(b, reg.companion(b), cfg.max_degree.value_or(default_truncation(b)));
  std::ostringstream out;
  auto mult = [](const std::map<int, UPoly>& m) {
    std::map<std::string, std::string> r;
    for (const auto& [p, c] : m) r[std::to_string(p)] = c.str();
    return r;
  };
  if (cfg.format == "json") {
    json j{{"block", b.name}, {"dual", C.dual.name}, {"truncation", C.truncation}};
    j["objects"] = json::array();
    for (const auto& [p, M] : C.objects)
      j["objects"].push_back({{"param", p}, {"rank", M.rank()}, {"shifts", M.shifts}, {"chi", C.chi.at(p)}});
    j["certificates"] = json::array();
    for (const auto& c : C.certificates)
      j["certificates"].push_back({{"start", c.start},
                                   {"word", c.word},
                                   {"new", c.new_params},
                                   {"sheaf", mult(c.sheaf_multiplicity)},
                                   {"hecke", mult(c.hecke_multiplicity)},
                                   {"agrees", c.agrees()}});
    j["missing"] = C.missing;
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "param,rank,chi,shifts\n";
    for (const auto& [p, M] : C.objects) out << p << "," << M.rank() << "," << C.chi.at(p) << "," << csv_field(join(M.shifts, ";")) << "\n";
  } else if (cfg.format == "dot") {
    // Nodes are dual parameters; an edge start -> p labelled by the word that produced p.
    out << "digraph " << dot_id(b.name + "_objects") << " {\n";
    for (const auto& [p, M] : C.objects)
      out << "  " << p << " [label=" << dot_id(std::to_string(p) + " rank " + std::to_string(M.rank())) << "];\n";
    for (const auto& c : C.certificates)
      for (int p : c.new_params) out << "  " << c.start << " -> " << p << " [label=" << dot_id(join(c.word)) << "];\n";
    out << "}\n";
  } else {
    require_format(cfg, {"text"}, "decompose");
    out << "block " << b.name << ", objects on " << C.dual.name << ", truncation " << C.truncation << "\n";
    for (const auto& [p, M] : C.objects)
      out << "  param " << p << ": rank " << M.rank() << ", chi " << C.chi.at(p) << ", shifts " << join(M.shifts, " ") << "\n";
    for (const auto& c : C.certificates) {
      out << "  start " << c.start << " word [" << join(c.word) << "] " << (c.agrees() ? "agrees" : "DISAGREES") << ":";
      for (const auto& [p, m] : c.sheaf_multiplicity) out << " " << p << "*" << m.str();
      out << "\n";
    }
    if (!C.missing.empty()) out << "  missing " << join(C.missing, " ") << "\n";
  }
  return out.str();
}

std::string render_ext(const Config& cfg, const BlockRegistry& reg, const BlockDatum& b) {
  if (!b.variety) throw InputError("block '" + b.name + "' has no variety data");
  BlockDatum comp = reg.companion(b);
  BlockVariety V(b, comp);
  auto C = canonical_objects(b, comp, default_truncation(b));
  int N = cfg.max_degree.value_or(C.dual.max_length() - C.dual.min_length());
  auto X = ext_algebra(V, C, N);
  std::size_t n = X.params.size();
  std::ostringstream out;
  if (cfg.format == "json") {
    json j{{"block", b.name}, {"truncation", N}, {"params", X.params}, {"lengths", X.lengths}};
    j["dims"] = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < n; ++k) {
        json m = json::object();
        for (const auto& [deg, d] : X.dims[i][k]) m[std::to_string(deg)] = d;
        row.push_back(m);
      }
      j["dims"].push_back(row);
    }
    j["pairing"] = X.pairing;
    j["negative_degrees_vanish"] = X.negative_degrees_vanish;
    j["pairing_is_identity"] = X.pairing_is_identity();
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "from,to,degree,dim\n";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (const auto& [deg, d] : X.dims[i][k]) out << X.params[i] << "," << X.params[k] << "," << deg << "," << d << "\n";
  } else {
    require_format(cfg, {"text"}, "ext");
    out << "block " << b.name << ", Hom window to degree " << N << "\n";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        out << "  Ext(" << X.params[i] << ", " << X.params[k] << "):";
        for (const auto& [deg, d] : X.dims[i][k]) out << " " << d << "t^" << deg;
        out << "\n";
      }
    out << "pairing " << (X.pairing_is_identity() ? "is" : "is NOT") << " the identity\n";
  }
  return out.str();
}

int cmd_compute(const Config& cfg, const std::string& block, const std::string& what) {
  BlockRegistry reg = registry(cfg);
  BlockDatum b = resolve(reg, block);
  require_valid(b);
  std::string text;
  if (what == "klv") text = render_klv(cfg, b);
  else if (what == "variety") text = render_variety(cfg, reg, b);
  else if (what == "decompose") text = render_decompose(cfg, reg, b);
  else if (what == "ext") text = render_ext(cfg, reg, b);
  else throw InputError("unknown computation '" + what + "'");
  emit(cfg, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block data, Kazhdan-Lusztig-Vogan polynomials and sheaves on block varieties"};
  app.require_subcommand(1);
  Config cfg;
  int verbose = 0;
  auto common = [&](CLI::App* c, bool with_degree) {
    c->add_option("--data-dir", cfg.data_dir, "extra block directory searched before the bundled data")
        ->envname("BKD_DATA_DIR");
    c->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "dot", "text"}));
    c->add_option("--out", cfg.out, "write output to this file instead of stdout");
    c->add_flag("-v,--verbose", verbose, "show details of passing checks");
    if (with_degree) c->add_option("--max-degree", cfg.max_degree, "truncation degree N")->check(CLI::NonNegativeNumber);
  };

  auto* list = app.add_subcommand("list", "bundled blocks and dual pairs");
  common(list, false);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> blocks, pair;
  std::string suite = "all";
  common(verify, true);
  verify->add_option("block,--block", blocks, "block names or block files");
  verify->add_option("--pair", pair, "a dual pair A,B")->delimiter(',')->expected(2);
  verify->add_option("--suite", suite, "hecke, duality, variety, cross-oracle or all")
      ->check(CLI::IsMember({"hecke", "duality", "variety", "cross-oracle", "all"}));

  auto* compute = app.add_subcommand("compute", "compute an artifact for one block");
  std::string block, what;
  common(compute, true);
  compute->add_option("block", block, "block name or block file")->required();
  compute->add_option("what", what, "klv, variety, decompose or ext")
      ->required()
      ->check(CLI::IsMember({"klv", "variety", "decompose", "ext"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  cfg.verbose = verbose > 0;

  try {
    if (*list) {
      emit(cfg, render_list(cfg, registry(cfg)));
      return kOk;
    }
    if (*verify) return cmd_verify(cfg, blocks, pair, suite);
    return cmd_compute(cfg, block, what);
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << "\nadvice: rerun with --max-degree " << e.required << "\n";
    return kTruncation;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BlockError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
