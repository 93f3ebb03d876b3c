#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

/// Runs the bkd binary with stdout captured and stderr discarded, outside any
/// BKD_DATA_DIR inherited from the caller.
Run bkd(const std::string& args) {
  std::string cmd = "env -u BKD_DATA_DIR " + std::string(BKD_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string golden(const std::string& name) { return slurp(fs::path(BKD_GOLDEN_DIR) / name); }

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("bkd_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("list") {
  auto r = bkd("list");
  CHECK(r.code == 0);
  for (auto n : {"complex_A1", "complex_A2", "complex_B2"}) CHECK(r.out.find(n) != std::string::npos);

  auto j = nlohmann::json::parse(bkd("list --format json").out);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j["pairs"]) CHECK(pairs.insert({p[0].get<std::string>(), p[1].get<std::string>()}).second);
  for (const auto& [a, c] : pairs) CHECK(pairs.count({c, a}) == (a == c ? 1u : 0u));
  CHECK(bkd("list --format json").out == golden("list.json"));

  auto empty = scratch("empty");
  auto e = bkd("list --format json --data-dir " + empty.string());
  CHECK(e.code == 0);
  CHECK(e.out == golden("list.json"));
  CHECK(bkd("list --data-dir " + (empty / "missing").string()).code == 2);
  CHECK(bkd("list --format dot").code == 2);
}

TEST_CASE("extra data directory and environment variable") {
  auto d = scratch("extra");
  fs::create_directories(d / "blocks");
  std::string text = slurp(fs::path(BKD_DATA_DIR_PATH) / "blocks" / "sl2R_principal.json");
  auto pos = text.find("\"sl2R_principal\"");
  text.replace(pos, 16, "\"my_sl2\"");
  std::ofstream(d / "blocks" / "my_sl2.json") << text;
  CHECK(bkd("list --data-dir " + d.string()).out.find("my_sl2") != std::string::npos);
  CHECK(bkd("compute my_sl2 klv --data-dir " + d.string()).code == 0);
  CHECK(bkd("compute my_sl2 klv").code == 2);
  std::string cmd = "env BKD_DATA_DIR=" + d.string() + " " + BKD_CLI + " compute my_sl2 klv --format csv >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
}

TEST_CASE("verify") {
  auto r = bkd("verify complex_A1 --suite all");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(bkd("verify nope").code == 2);
  CHECK(bkd("verify complex_A1 --suite bogus").code == 2);
  CHECK(bkd("verify --pair sl2R_principal,pgl2R_principal --suite duality").code == 0);
  CHECK(bkd("verify --pair sl2R_principal,complex_A1").code == 2);
  CHECK(bkd("verify --block complex_A2 --suite cross-oracle").code == 0);
  CHECK(bkd("verify complex_A1 --suite duality --format json").out == golden("complex_A1_duality.json"));

  auto j = nlohmann::json::parse(bkd("verify complex_B2 --suite variety --format json").out);
  CHECK(j["ok"] == true);
  for (const auto& c : j["suites"][0]["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("pass"));
    CHECK(c.contains("detail"));
  }
}

TEST_CASE("verify reports an injected corrupted cross table") {
  auto d = scratch("corrupt");
  std::string text = slurp(fs::path(BKD_DATA_DIR_PATH) / "blocks" / "sl2R_principal.json");
  auto pos = text.find("\"cross\": [[1, 0, 2]]");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 20, "\"cross\": [[1, 1, 2]]");
  auto file = d / "bad.json";
  std::ofstream(file) << text;
  auto r = bkd("verify " + file.string() + " --suite all --format csv");
  CHECK(r.code == 1);
  CHECK(r.out.find("axiom cross-involution") != std::string::npos);
  CHECK(bkd("compute " + file.string() + " klv").code == 2);
  CHECK(bkd("verify " + (d / "absent.json").string()).code == 2);
}

TEST_CASE("compute") {
  auto r = bkd("compute complex_A1 klv --format csv");
  CHECK(r.code == 0);
  CHECK(r.out == golden("complex_A1_klv.csv"));
  CHECK(bkd("compute complex_A1 klv --format json").out == golden("complex_A1_klv.json"));
  CHECK(bkd("compute complex_A1 ext --format json").out == golden("complex_A1_ext.json"));

  for (auto what : {"klv", "variety", "decompose", "ext"})
    for (auto fmt : {"json", "csv", "text"}) {
      CAPTURE(what);
      CAPTURE(fmt);
      std::string args = std::string("compute complex_A2 ") + what + " --format " + fmt;
      auto a = bkd(args), b = bkd(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }

  auto dot = bkd("compute complex_A2 klv --format dot").out;
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("0 -> 5") != std::string::npos);
  CHECK(bkd("compute sl2R_principal decompose --format dot").out.find("2 -> 0") != std::string::npos);
  CHECK(bkd("compute complex_A1 variety --format dot").code == 2);

  auto d = scratch("out");
  CHECK(bkd("compute complex_A1 klv --format csv --out " + (d / "k.csv").string()).code == 0);
  CHECK(slurp(d / "k.csv") == golden("complex_A1_klv.csv"));

  CHECK(bkd("compute complex_A2 ext --max-degree 1").code == 3);
  CHECK(bkd("compute complex_A2 decompose --max-degree 2").code == 3);
  CHECK(bkd("compute complex_A1 nonsense").code == 2);
  CHECK(bkd("compute").code == 2);
  CHECK(bkd("").code == 2);
}
