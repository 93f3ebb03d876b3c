#include "bkd/blockdata.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace bkd {

using nlohmann::json;

namespace {

const std::vector<std::pair<RootStatus, std::string>> kStatusCodes = {
    {RootStatus::ComplexAscent, "C+"},       {RootStatus::ComplexDescent, "C-"},
    {RootStatus::ImaginaryNoncompactI, "i1"}, {RootStatus::ImaginaryNoncompactII, "i2"},
    {RootStatus::ImaginaryCompact, "ic"},     {RootStatus::RealI, "r1"},
    {RootStatus::RealII, "r2"},               {RootStatus::RealNonparity, "rn"},
};

int coxeter_m(const IntMat& a, int i, int j) {
  switch (a[i][j] * a[j][i]) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw BlockError("Cartan entries give no finite Coxeter order");
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x);
  return s;
}

}  // namespace

std::string status_code(RootStatus s) {
  for (const auto& [st, code] : kStatusCodes)
    if (st == s) return code;
  return "?";
}

RootStatus parse_status(const std::string& code) {
  for (const auto& [st, c] : kStatusCodes)
    if (c == code) return st;
  throw BlockError("unknown root status code '" + code + "'");
}

bool is_complex(RootStatus s) { return s == RootStatus::ComplexAscent || s == RootStatus::ComplexDescent; }
bool is_imaginary(RootStatus s) {
  return s == RootStatus::ImaginaryNoncompactI || s == RootStatus::ImaginaryNoncompactII ||
         s == RootStatus::ImaginaryCompact;
}
bool is_real(RootStatus s) {
  return s == RootStatus::RealI || s == RootStatus::RealII || s == RootStatus::RealNonparity;
}

RootStatus dual_status(RootStatus s) {
  switch (s) {
    case RootStatus::ComplexAscent: return RootStatus::ComplexDescent;
    case RootStatus::ComplexDescent: return RootStatus::ComplexAscent;
    case RootStatus::ImaginaryNoncompactI: return RootStatus::RealII;
    case RootStatus::ImaginaryNoncompactII: return RootStatus::RealI;
    case RootStatus::ImaginaryCompact: return RootStatus::RealNonparity;
    case RootStatus::RealI: return RootStatus::ImaginaryNoncompactII;
    case RootStatus::RealII: return RootStatus::ImaginaryNoncompactI;
    case RootStatus::RealNonparity: return RootStatus::ImaginaryCompact;
  }
  throw BlockError("unreachable status");
}

int BlockDatum::max_length() const {
  int m = 0;
  for (const auto& p : params) m = std::max(m, p.length);
  return m;
}

int BlockDatum::min_length() const {
  if (params.empty()) return 0;
  int m = params[0].length;
  for (const auto& p : params) m = std::min(m, p.length);
  return m;
}

ValidationReport validate(const BlockDatum& b) {
  ValidationReport rep;
  auto add = [&](std::string axiom, int s, int g, std::string detail) {
    rep.violations.push_back({std::move(axiom), s, g, std::move(detail)});
  };
  int n = static_cast<int>(b.size());
  int r = b.rank();
  if (n == 0) add("nonempty", -1, -1, "block has no parameters");
  for (int i = 0; i < n; ++i) {
    if (b.params[i].id != i) add("ids", -1, i, "parameter ids must be 0..n-1 in order");
    if (b.params[i].length < 0) add("length", -1, i, "negative length");
  }
  IntMat cartan;
  try {
    cartan = cartan_matrix(b.weyl_type);
  } catch (const RootDataError& e) {
    add("weyl_type", -1, -1, e.what());
    return rep;
  }
  if (static_cast<int>(cartan.size()) != r) {
    add("shape", -1, -1, "status table has " + std::to_string(r) + " rows, Weyl type has rank " +
                             std::to_string(cartan.size()));
    return rep;
  }
  if (static_cast<int>(b.cross.size()) != r || static_cast<int>(b.cayley.size()) != r) {
    add("shape", -1, -1, "cross/cayley tables must have one row per simple root");
    return rep;
  }
  for (int s = 0; s < r; ++s)
    if (static_cast<int>(b.status[s].size()) != n || static_cast<int>(b.cross[s].size()) != n ||
        static_cast<int>(b.cayley[s].size()) != n) {
      add("shape", s, -1, "row length differs from the number of parameters");
      return rep;
    }
  for (const auto& f : b.flags)
    if (f != "complex" && f != "quasisplit" && f != "equivariant") add("flags", -1, -1, "unknown flag '" + f + "'");

  bool cross_ok = true;
  for (int s = 0; s < r; ++s)
    for (int g = 0; g < n; ++g) {
      int c = b.cross[s][g];
      if (c < 0 || c >= n) {
        add("cross-range", s, g, "cross image out of range");
        cross_ok = false;
        continue;
      }
      if (b.cross[s][c] != g) {
        add("cross-involution", s, g, "cross(s, cross(s, g)) != g");
        cross_ok = false;
      }
    }
  if (cross_ok) {
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        int m = coxeter_m(cartan, i, j);
        for (int g = 0; g < n; ++g) {
          int x = g;
          for (int k = 0; k < m; ++k) x = b.cross[i][b.cross[j][x]];
          if (x != g) add("cross-braid", i, g, "(s_i s_j)^m does not fix the parameter for j=" + std::to_string(j));
        }
      }
  }
  if (!cross_ok) return rep;

  for (int s = 0; s < r; ++s)
    for (int g = 0; g < n; ++g) {
      RootStatus st = b.status[s][g];
      int c = b.cross[s][g];
      const auto& cay = b.cayley[s][g];
      std::string code = status_code(st);
      for (int d : cay)
        if (d < 0 || d >= n) {
          add("cayley-range", s, g, "Cayley target out of range");
          return rep;
        }
      if (is_complex(st)) {
        int expect = st == RootStatus::ComplexAscent ? 1 : -1;
        if (b.params[c].length != b.params[g].length + expect)
          add("complex-length", s, g, code + " root must change length by " + std::to_string(expect));
        if (b.status[s][c] != (st == RootStatus::ComplexAscent ? RootStatus::ComplexDescent : RootStatus::ComplexAscent))
          add("complex-pair", s, g, "cross image must carry the opposite complex status");
        if (!cay.empty()) add("cayley-domain", s, g, "Cayley transform given at a complex root");
        continue;
      }
      if (b.params[c].length != b.params[g].length)
        add("noncomplex-length", s, g, "cross action at a non-complex root must preserve length");
      if (b.status[s][c] != st) add("noncomplex-status", s, g, "cross image must have the same status");
      switch (st) {
        case RootStatus::ImaginaryCompact:
        case RootStatus::RealNonparity:
          if (!cay.empty()) add("cayley-domain", s, g, code + " root has no Cayley transform");
          break;
        case RootStatus::ImaginaryNoncompactI:
        case RootStatus::RealII:
          if (c == g) add("cross-type", s, g, code + " root must move the parameter under cross");
          if (cay.size() != 1) add("cayley-count", s, g, code + " root needs exactly one Cayley transform");
          break;
        case RootStatus::ImaginaryNoncompactII:
        case RootStatus::RealI:
          if (c != g) add("cross-type", s, g, code + " root must fix the parameter under cross");
          if (cay.size() != 2 || (cay.size() == 2 && cay[0] == cay[1]))
            add("cayley-count", s, g, code + " root needs two distinct Cayley transforms");
          break;
        default:
          break;
      }
      bool imag = is_imaginary(st);
      for (int d : cay) {
        RootStatus want = st == RootStatus::ImaginaryNoncompactI   ? RootStatus::RealI
                          : st == RootStatus::ImaginaryNoncompactII ? RootStatus::RealII
                          : st == RootStatus::RealI                 ? RootStatus::ImaginaryNoncompactI
                                                                    : RootStatus::ImaginaryNoncompactII;
        if (b.status[s][d] != want)
          add("cayley-status", s, g, "Cayley partner " + std::to_string(d) + " has status " +
                                         status_code(b.status[s][d]) + ", expected " + status_code(want));
        if (b.params[d].length != b.params[g].length + (imag ? 1 : -1))
          add("cayley-length", s, g, "Cayley partner " + std::to_string(d) + " has the wrong length");
        const auto& back = b.cayley[s][d];
        if (std::find(back.begin(), back.end(), g) == back.end())
          add("cayley-inverse", s, g, "Cayley partner " + std::to_string(d) + " does not list the parameter back");
      }
    }
  if (b.duality) {
    auto m = b.duality->map;
    std::sort(m.begin(), m.end());
    std::vector<int> iota(n);
    std::iota(iota.begin(), iota.end(), 0);
    if (m != iota) add("duality-bijection", -1, -1, "duality map is not a permutation of the parameter ids");
  }
  return rep;
}

void require_valid(const BlockDatum& b) {
  auto rep = validate(b);
  if (rep.ok()) return;
  const auto& v = rep.violations.front();
  throw BlockError("block '" + b.name + "' violates " + v.axiom + " at (s=" + std::to_string(v.s) +
                   ", param=" + std::to_string(v.param) + "): " + v.detail);
}

int cross_word(const BlockDatum& b, const std::vector<int>& word, int id) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) id = b.cross.at(*it).at(id);
  return id;
}

WeylGroup block_weyl_group(const BlockDatum& b) { return WeylGroup(root_system_from_type(b.weyl_type)); }

Involution block_involution(const BlockDatum& b, const WeylGroup& W) {
  std::vector<int> diagram = b.theta.diagram;
  if (diagram.empty()) {
    diagram.resize(W.rank());
    std::iota(diagram.begin(), diagram.end(), 0);
  }
  return make_involution(W, diagram, b.theta.inner, b.theta.negate ? -1 : 1);
}

BlockDatum complex_block(const std::string& type) {
  WeylGroup W(root_system_from_type(type));
  BlockDatum b;
  b.name = "complex_" + type;
  b.weyl_type = type;
  b.theta.diagram.resize(W.rank());
  std::iota(b.theta.diagram.begin(), b.theta.diagram.end(), 0);
  b.theta.negate = true;
  b.flags = {"complex", "equivariant", "quasisplit"};
  int n = static_cast<int>(W.order());
  for (int w = 0; w < n; ++w) {
    const auto& word = W.element(w).word;
    b.params.push_back({w, W.length(w), word.empty() ? "e" : "w" + join_ints(word)});
  }
  b.status.assign(W.rank(), std::vector<RootStatus>(n));
  b.cross.assign(W.rank(), std::vector<int>(n));
  b.cayley.assign(W.rank(), std::vector<std::vector<int>>(n));
  for (int s = 0; s < W.rank(); ++s)
    for (int w = 0; w < n; ++w) {
      int sw = static_cast<int>(W.multiply(W.generator(s), w));
      b.cross[s][w] = sw;
      b.status[s][w] = W.length(sw) > W.length(w) ? RootStatus::ComplexAscent : RootStatus::ComplexDescent;
    }
  b.companion_adjoint = b.name;
  DualityBijection bij{b.name, std::vector<int>(n)};
  for (int w = 0; w < n; ++w) bij.map[w] = static_cast<int>(W.multiply(w, W.longest()));
  b.duality = bij;

  // The dual block is this block relabeled by v -> v w0; its unique closed
  // parameter is w0 and the object attached to v is cut out of the wall
  // functors along a reduced word of v w0.
  VarietyData var;
  int w0 = static_cast<int>(W.longest());
  var.closed_components[w0] = {};
  for (int v = 0; v < n; ++v) {
    if (v == w0) continue;
    auto word = W.element(W.multiply(v, W.longest())).word;
    std::reverse(word.begin(), word.end());
    var.schedule.push_back({v, w0, word, 0});
  }
  std::sort(var.schedule.begin(), var.schedule.end(), [&](const auto& x, const auto& y) {
    if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
    return x.param < y.param;
  });
  b.variety = var;
  b.strong_real_form = "complex";
  return b;
}

BlockDatum dual_block(const BlockDatum& b) {
  require_valid(b);
  BlockDatum d = b;
  d.name = b.name + "_dual";
  d.theta.negate = !b.theta.negate;
  d.flags.clear();
  if (b.has_flag("complex")) d.flags.insert("complex");
  if (b.has_flag("quasisplit")) d.flags.insert("equivariant");
  if (b.has_flag("equivariant")) d.flags.insert("quasisplit");
  int top = b.max_length();
  for (auto& p : d.params) p.length = top - p.length;
  for (auto& row : d.status)
    for (auto& st : row) st = dual_status(st);
  d.companion_adjoint.clear();
  d.duality.reset();
  d.variety.reset();
  d.strong_real_form.clear();
  return d;
}

BlockDatum product_block(const BlockDatum& b1, const BlockDatum& b2, const std::string& name) {
  require_valid(b1);
  require_valid(b2);
  if (b1.theta.negate != b2.theta.negate) throw BlockError("product_block: factors disagree on the sign of theta");
  BlockDatum p;
  p.name = name;
  p.weyl_type = b1.weyl_type + "x" + b2.weyl_type;
  int r1 = b1.rank(), n1 = static_cast<int>(b1.size()), n2 = static_cast<int>(b2.size());
  auto diag1 = b1.theta.diagram, diag2 = b2.theta.diagram;
  if (diag1.empty()) { diag1.resize(r1); std::iota(diag1.begin(), diag1.end(), 0); }
  if (diag2.empty()) { diag2.resize(b2.rank()); std::iota(diag2.begin(), diag2.end(), 0); }
  p.theta.diagram = diag1;
  for (int x : diag2) p.theta.diagram.push_back(x + r1);
  p.theta.inner = b1.theta.inner;
  for (int x : b2.theta.inner) p.theta.inner.push_back(x + r1);
  p.theta.negate = b1.theta.negate;
  std::set_intersection(b1.flags.begin(), b1.flags.end(), b2.flags.begin(), b2.flags.end(),
                        std::inserter(p.flags, p.flags.begin()));
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      p.params.push_back({i * n2 + j, b1.params[i].length + b2.params[j].length,
                          b1.params[i].orbit_tag + "," + b2.params[j].orbit_tag});
  int n = n1 * n2;
  auto add_rows = [&](const BlockDatum& f, bool first) {
    for (int s = 0; s < f.rank(); ++s) {
      std::vector<RootStatus> st(n);
      std::vector<int> cr(n);
      std::vector<std::vector<int>> cy(n);
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          int id = i * n2 + j, k = first ? i : j;
          st[id] = f.status[s][k];
          int c = f.cross[s][k];
          cr[id] = first ? c * n2 + j : i * n2 + c;
          for (int d : f.cayley[s][k]) cy[id].push_back(first ? d * n2 + j : i * n2 + d);
        }
      p.status.push_back(st);
      p.cross.push_back(cr);
      p.cayley.push_back(cy);
    }
  };
  add_rows(b1, true);
  add_rows(b2, false);
  return p;
}

BlockDatum relabel(const BlockDatum& b, const std::vector<int>& map) {
  int n = static_cast<int>(b.size());
  if (static_cast<int>(map.size()) != n) throw BlockError("relabel: map has the wrong size");
  BlockDatum d = b;
  for (int i = 0; i < n; ++i) {
    if (map[i] < 0 || map[i] >= n) throw BlockError("relabel: map out of range");
    d.params[map[i]] = {map[i], b.params[i].length, b.params[i].orbit_tag};
  }
  for (int s = 0; s < b.rank(); ++s)
    for (int i = 0; i < n; ++i) {
      d.status[s][map[i]] = b.status[s][i];
      d.cross[s][map[i]] = map[b.cross[s][i]];
      std::vector<int> c;
      for (int x : b.cayley[s][i]) c.push_back(map[x]);
      std::sort(c.begin(), c.end());
      d.cayley[s][map[i]] = c;
    }
  return d;
}

bool same_combinatorics(const BlockDatum& a, const BlockDatum& b, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (a.size() != b.size()) return fail("parameter counts differ");
  if (a.rank() != b.rank()) return fail("ranks differ");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.params[i].length != b.params[i].length) return fail("length differs at " + std::to_string(i));
  for (int s = 0; s < a.rank(); ++s)
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.status[s][i] != b.status[s][i]) return fail("status differs at (" + std::to_string(s) + "," + std::to_string(i) + ")");
      if (a.cross[s][i] != b.cross[s][i]) return fail("cross differs at (" + std::to_string(s) + "," + std::to_string(i) + ")");
      auto x = a.cayley[s][i], y = b.cayley[s][i];
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      if (x != y) return fail("cayley differs at (" + std::to_string(s) + "," + std::to_string(i) + ")");
    }
  return true;
}

std::vector<int> open_orbit_parameters(const BlockDatum& b) {
  if (!b.has_flag("quasisplit")) throw BlockError("block '" + b.name + "' is not flagged quasisplit");
  int top = b.max_length();
  std::vector<int> out;
  for (const auto& p : b.params)
    if (p.length == top) out.push_back(p.id);
  for (int id : out)
    if (b.params[id].orbit_tag != b.params[out[0]].orbit_tag)
      throw BlockError("maximal-length parameters of '" + b.name + "' lie on different orbits");
  return out;
}

std::vector<int> minimal_length_parameters(const BlockDatum& b) {
  int low = b.min_length();
  std::vector<int> out;
  for (const auto& p : b.params)
    if (p.length == low) out.push_back(p.id);
  return out;
}

namespace {

struct CrossStabilizers {
  Subgroup w_theta, eff, stab;
  int base;
};

CrossStabilizers cross_stabilizers(const BlockDatum& b, const WeylGroup& W, std::optional<int> base) {
  require_valid(b);
  auto open = open_orbit_parameters(b);
  std::set<int> open_set(open.begin(), open.end());
  CrossStabilizers cs;
  cs.w_theta = fixed_subgroup(W, block_involution(b, W));
  for (auto w : cs.w_theta.elements) {
    const auto& word = W.element(w).word;
    bool keeps = true;
    for (int g : open)
      if (!open_set.count(cross_word(b, word, g))) keeps = false;
    if (keeps) {
      cs.eff.elements.push_back(w);
      cs.eff.lengths.push_back(W.length(w));
    }
  }
  cs.base = base ? *base : open.front();
  if (!open_set.count(cs.base)) throw BlockError("base parameter is not an open-orbit parameter");
  std::set<int> orbit;
  for (auto w : cs.eff.elements) {
    int x = cross_word(b, W.element(w).word, cs.base);
    orbit.insert(x);
    if (x == cs.base) {
      cs.stab.elements.push_back(w);
      cs.stab.lengths.push_back(W.length(w));
    }
  }
  if (orbit != open_set)
    throw BlockError("cross action of W^theta is not transitive on the open-orbit parameters of '" + b.name + "'");
  return cs;
}

}  // namespace

BlockGroups block_groups(const BlockDatum& b, const BlockDatum& b_ad, std::optional<int> base) {
  if (b.weyl_type != b_ad.weyl_type) throw BlockError("companion block has a different Weyl group");
  WeylGroup W = block_weyl_group(b);
  if (block_involution(b, W).matrix != block_involution(b_ad, W).matrix)
    throw BlockError("companion block has a different involution");
  auto main = cross_stabilizers(b, W, base);
  auto comp = cross_stabilizers(b_ad, W, std::nullopt);
  BlockGroups g;
  g.w_theta = main.w_theta;
  g.w_theta_eff = main.eff;
  g.w_m = main.stab;
  g.w_m_prime = comp.stab;
  g.base_param = main.base;
  for (auto x : g.w_m_prime.elements)
    if (!g.w_m.contains(x)) throw BlockError("W'_M is not contained in W_M");
  for (auto x : g.w_m.elements)
    for (auto y : g.w_m_prime.elements)
      if (!g.w_m_prime.contains(W.multiply(W.multiply(x, y), W.inverse(x))))
        throw BlockError("W'_M is not normal in W_M");
  std::set<std::size_t> assigned;
  for (auto x : g.w_m.elements) {
    if (assigned.count(x)) continue;
    std::vector<std::size_t> coset;
    for (auto y : g.w_m_prime.elements) coset.push_back(W.multiply(x, y));
    std::sort(coset.begin(), coset.end());
    for (auto y : coset) {
      assigned.insert(y);
      g.quotient[y] = g.cosets.size();
    }
    g.cosets.push_back(coset);
  }
  for (auto x : g.w_m.elements) {
    if (!g.w_m_prime.contains(W.multiply(x, x))) throw BlockError("W_M / W'_M is not an elementary abelian 2-group");
    for (auto y : g.w_m.elements) {
      auto comm = W.multiply(W.multiply(x, y), W.multiply(W.inverse(x), W.inverse(y)));
      if (!g.w_m_prime.contains(comm)) throw BlockError("W_M / W'_M is not abelian");
    }
  }
  // Greedy F_2 basis of the quotient.
  std::set<std::size_t> span{0};
  for (std::size_t c = 0; c < g.cosets.size(); ++c) {
    if (span.count(c)) continue;
    std::size_t rep = g.cosets[c].front();
    g.s_generators.push_back(rep);
    std::set<std::size_t> next = span;
    for (auto k : span) next.insert(g.quotient.at(W.multiply(g.cosets[k].front(), rep)));
    span = next;
  }
  return g;
}

ClosedOrbitMismatch::ClosedOrbitMismatch(std::size_t g, std::size_t d)
    : BlockError("closed orbit count " + std::to_string(g) + " from W^theta/W_M disagrees with " +
                 std::to_string(d) + " minimal-length parameters of the dual block"),
      group_count(g),
      dual_count(d) {}

std::size_t closed_orbit_count(const BlockDatum& b) {
  WeylGroup W = block_weyl_group(b);
  auto cs = cross_stabilizers(b, W, std::nullopt);
  std::size_t count = cs.eff.order() / cs.stab.order();
  std::size_t dual_count = minimal_length_parameters(dual_block(b)).size();
  if (count != dual_count) throw ClosedOrbitMismatch(count, dual_count);
  return count;
}

// ---------------------------------------------------------------- JSON

BlockDatum block_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw BlockError(std::string("block file is not valid JSON: ") + e.what());
  }
  BlockDatum b;
  try {
    b.name = j.at("name").get<std::string>();
    b.weyl_type = j.at("weyl_type").get<std::string>();
    const auto& th = j.at("theta");
    b.theta.diagram = th.value("diagram", std::vector<int>{});
    b.theta.inner = th.value("inner", std::vector<int>{});
    b.theta.negate = th.value("negate", false);
    for (const auto& f : j.value("flags", json::array())) b.flags.insert(f.get<std::string>());
    for (const auto& p : j.at("params"))
      b.params.push_back({p.at("id").get<int>(), p.at("length").get<int>(), p.value("orbit_tag", std::string())});
    for (const auto& row : j.at("status")) {
      std::vector<RootStatus> r;
      for (const auto& c : row) r.push_back(parse_status(c.get<std::string>()));
      b.status.push_back(r);
    }
    b.cross = j.at("cross").get<std::vector<std::vector<int>>>();
    b.cayley = j.at("cayley").get<std::vector<std::vector<std::vector<int>>>>();
    b.companion_adjoint = j.value("companion_adjoint", std::string());
    if (j.contains("duality_bijection")) {
      const auto& d = j["duality_bijection"];
      b.duality = DualityBijection{d.at("block").get<std::string>(), d.at("map").get<std::vector<int>>()};
    }
    if (j.contains("variety")) {
      const auto& v = j["variety"];
      VarietyData var;
      for (const auto& [k, w] : v.at("closed_components").items())
        var.closed_components[std::stoi(k)] = w.get<std::vector<int>>();
      for (const auto& e : v.at("schedule"))
        var.schedule.push_back({e.at("param").get<int>(), e.at("start").get<int>(),
                                e.at("word").get<std::vector<int>>(), e.value("chi", 0)});
      b.variety = var;
    }
    b.strong_real_form = j.value("strong_real_form", std::string());
  } catch (const json::exception& e) {
    throw BlockError(std::string("block file has a missing or mistyped field: ") + e.what());
  }
  return b;
}

std::string block_to_json_text(const BlockDatum& b) {
  json j;
  j["name"] = b.name;
  j["weyl_type"] = b.weyl_type;
  j["theta"] = {{"diagram", b.theta.diagram}, {"inner", b.theta.inner}, {"negate", b.theta.negate}};
  j["flags"] = std::vector<std::string>(b.flags.begin(), b.flags.end());
  j["params"] = json::array();
  for (const auto& p : b.params) j["params"].push_back({{"id", p.id}, {"length", p.length}, {"orbit_tag", p.orbit_tag}});
  j["status"] = json::array();
  for (const auto& row : b.status) {
    json r = json::array();
    for (auto st : row) r.push_back(status_code(st));
    j["status"].push_back(r);
  }
  j["cross"] = b.cross;
  j["cayley"] = b.cayley;
  if (!b.companion_adjoint.empty()) j["companion_adjoint"] = b.companion_adjoint;
  if (b.duality) j["duality_bijection"] = {{"block", b.duality->block}, {"map", b.duality->map}};
  if (b.variety) {
    json cc = json::object();
    for (const auto& [k, w] : b.variety->closed_components) cc[std::to_string(k)] = w;
    json sch = json::array();
    for (const auto& e : b.variety->schedule)
      sch.push_back({{"param", e.param}, {"start", e.start}, {"word", e.word}, {"chi", e.chi}});
    j["variety"] = {{"closed_components", cc}, {"schedule", sch}};
  }
  if (!b.strong_real_form.empty()) j["strong_real_form"] = b.strong_real_form;
  return j.dump(2) + "\n";
}

BlockDatum load_block_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BlockError("cannot open block file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return block_from_json_text(ss.str());
}

// ---------------------------------------------------------------- registry

UnknownBlockError::UnknownBlockError(const std::string& name, const std::vector<std::string>& available)
    : BlockError([&] {
        std::string m = "unknown block '" + name + "'; available:";
        for (const auto& a : available) m += " " + a;
        return m;
      }()) {}

std::string default_data_dir() {
  if (const char* env = std::getenv("BKD_DATA_DIR"); env && *env) return env;
  return BKD_DATA_DIR;
}

namespace {
const std::vector<std::string> kComplexTypes = {"A1", "A2", "B2"};
}

std::vector<std::string> list_blocks(const std::string& data_dir) {
  std::set<std::string> names;
  for (const auto& t : kComplexTypes) names.insert("complex_" + t);
  namespace fs = std::filesystem;
  fs::path dir = fs::path(data_dir) / "blocks";
  std::error_code ec;
  if (fs::is_directory(dir, ec))
    for (const auto& e : fs::directory_iterator(dir, ec))
      if (e.path().extension() == ".json") names.insert(e.path().stem().string());
  return {names.begin(), names.end()};
}

BlockDatum builtin_block(const std::string& name, const std::string& data_dir) {
  for (const auto& t : kComplexTypes)
    if (name == "complex_" + t) return complex_block(t);
  namespace fs = std::filesystem;
  fs::path file = fs::path(data_dir) / "blocks" / (name + ".json");
  if (!fs::exists(file)) throw UnknownBlockError(name, list_blocks(data_dir));
  BlockDatum b = load_block_file(file.string());
  if (b.name != name) throw BlockError("block file '" + file.string() + "' declares name '" + b.name + "'");
  return b;
}

std::vector<std::pair<std::string, std::string>> list_pairs(const std::string& data_dir) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& n : list_blocks(data_dir)) {
    BlockDatum b = builtin_block(n, data_dir);
    if (!b.duality) continue;
    auto a = n, c = b.duality->block;
    if (c < a) std::swap(a, c);
    pairs.insert({a, c});
  }
  return {pairs.begin(), pairs.end()};
}

BlockRegistry::BlockRegistry(std::vector<std::string> dirs) : dirs_(std::move(dirs)) {}

BlockRegistry BlockRegistry::standard(const std::string& extra) {
  std::vector<std::string> dirs;
  std::string first = extra;
  if (first.empty())
    if (const char* env = std::getenv("BKD_DATA_DIR"); env && *env) first = env;
  if (!first.empty()) dirs.push_back(first);
  if (first != BKD_DATA_DIR) dirs.push_back(BKD_DATA_DIR);
  return BlockRegistry(dirs);
}

std::vector<std::string> BlockRegistry::names() const {
  std::set<std::string> all;
  for (const auto& d : dirs_)
    for (const auto& n : list_blocks(d)) all.insert(n);
  return {all.begin(), all.end()};
}

BlockDatum BlockRegistry::get(const std::string& name) const {
  for (const auto& d : dirs_) {
    auto names = list_blocks(d);
    if (std::find(names.begin(), names.end(), name) != names.end()) return builtin_block(name, d);
  }
  throw UnknownBlockError(name, names());
}

std::vector<std::pair<std::string, std::string>> BlockRegistry::pairs() const {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& n : names()) {
    BlockDatum b = get(n);
    if (!b.duality) continue;
    auto a = n, c = b.duality->block;
    if (c < a) std::swap(a, c);
    out.insert({a, c});
  }
  return {out.begin(), out.end()};
}

BlockDatum BlockRegistry::companion(const BlockDatum& b) const {
  if (b.companion_adjoint.empty() || b.companion_adjoint == b.name) return b;
  return get(b.companion_adjoint);
}

// ---------------------------------------------------------------- atlas text

AtlasImportError::AtlasImportError(int l, const std::string& msg)
    : BlockError("atlas import, line " + std::to_string(l) + ": " + msg), line(l) {}

BlockDatum import_atlas_block(const std::string& text, const std::string& name, const std::string& weyl_type) {
  IntMat cartan;
  try {
    cartan = cartan_matrix(weyl_type);
  } catch (const RootDataError& e) {
    throw AtlasImportError(0, e.what());
  }
  int r = static_cast<int>(cartan.size());
  static const std::regex head(R"(^\s*(\d+)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*:\s*(.*)$)");
  static const std::regex pair_re(R"(\(\s*(\*|\d+)\s*,\s*(\*|\d+)\s*\))");

  BlockDatum b;
  b.name = name;
  b.weyl_type = weyl_type;
  b.theta.diagram.resize(r);
  std::iota(b.theta.diagram.begin(), b.theta.diagram.end(), 0);
  b.flags = {"quasisplit"};
  b.strong_real_form = "atlas";
  b.status.assign(r, {});
  b.cross.assign(r, {});
  b.cayley.assign(r, {});

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::smatch m;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!std::regex_match(line, m, head)) continue;  // headers and banners are skipped
    int id = std::stoi(m[1]);
    if (id != static_cast<int>(b.params.size()))
      throw AtlasImportError(lineno, "expected parameter " + std::to_string(b.params.size()) + ", found " + std::to_string(id));
    std::string rest = m[4];
    std::istringstream rs(rest);
    int length;
    if (!(rs >> length)) throw AtlasImportError(lineno, "missing length");
    std::string tok;
    rs >> std::ws;
    if (rs.peek() != '[') throw AtlasImportError(lineno, "missing status list");
    std::getline(rs, tok, ']');
    tok = tok.substr(1);
    std::vector<std::string> codes;
    std::stringstream cs(tok);
    std::string c;
    while (std::getline(cs, c, ',')) {
      c.erase(std::remove_if(c.begin(), c.end(), ::isspace), c.end());
      codes.push_back(c);
    }
    if (static_cast<int>(codes.size()) != r)
      throw AtlasImportError(lineno, "status list has " + std::to_string(codes.size()) + " entries, rank is " + std::to_string(r));
    for (int s = 0; s < r; ++s) {
      try {
        b.status[s].push_back(parse_status(codes[s]));
      } catch (const BlockError&) {
        throw AtlasImportError(lineno, "unknown status '" + codes[s] + "'");
      }
    }
    for (int s = 0; s < r; ++s) {
      int x;
      if (!(rs >> x)) throw AtlasImportError(lineno, "missing cross action entry " + std::to_string(s));
      b.cross[s].push_back(x);
    }
    std::string tail;
    std::getline(rs, tail);
    auto it = std::sregex_iterator(tail.begin(), tail.end(), pair_re);
    int s = 0;
    for (; it != std::sregex_iterator() && s < r; ++it, ++s) {
      std::vector<int> cy;
      for (int k = 1; k <= 2; ++k)
        if ((*it)[k] != "*") cy.push_back(std::stoi((*it)[k]));
      b.cayley[s].push_back(cy);
    }
    if (s != r) throw AtlasImportError(lineno, "expected " + std::to_string(r) + " Cayley columns");
    b.params.push_back({id, length, "x" + std::string(m[2])});
  }
  if (b.params.empty()) throw AtlasImportError(lineno, "no parameter lines found");
  int n = static_cast<int>(b.params.size());
  for (int s = 0; s < r; ++s)
    for (int g = 0; g < n; ++g)
      if (b.cross[s][g] < 0 || b.cross[s][g] >= n) throw AtlasImportError(0, "cross action refers to a missing parameter");
  auto rep = validate(b);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw AtlasImportError(0, "imported block is invalid: " + v.axiom + " at (s=" + std::to_string(v.s) +
                                  ", param=" + std::to_string(v.param) + "): " + v.detail);
  }
  return b;
}

}  // namespace bkd
