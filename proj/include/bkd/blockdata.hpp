// Abstract block data: parameters, statuses, cross action and Cayley transforms.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkd/rootdata.hpp"

namespace bkd {

class BlockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RootStatus {
  ComplexAscent,         // "C+"
  ComplexDescent,        // "C-"
  ImaginaryNoncompactI,  // "i1"
  ImaginaryNoncompactII, // "i2"
  ImaginaryCompact,      // "ic"
  RealI,                 // "r1"
  RealII,                // "r2"
  RealNonparity,         // "rn"
};

std::string status_code(RootStatus s);
RootStatus parse_status(const std::string& code);
bool is_complex(RootStatus s);
bool is_imaginary(RootStatus s);
bool is_real(RootStatus s);

/// Status exchange used by the dual block:
///   C+ <-> C-,  ic <-> rn,  i1 <-> r2,  i2 <-> r1.
/// Type I imaginary roots (cross moves the parameter) go to type II real
/// roots (cross moves the parameter), so the cross action carries over
/// unchanged.
RootStatus dual_status(RootStatus s);

struct ThetaSpec {
  std::vector<int> diagram;
  std::vector<int> inner;
  bool negate = false;
};

struct Param {
  int id = 0;
  int length = 0;
  std::string orbit_tag;
};

struct DualityBijection {
  std::string block;
  std::vector<int> map;  // param id here -> param id in `block`
};

/// One step of the Bott-Samelson schedule: the object attached to `param`
/// of the dual block is a summand of the wall functors in `word` (applied
/// left to right) applied to the object of the closed parameter `start`.
/// `chi` separates summands with the same (start, word).
struct ScheduleEntry {
  int param = 0;
  int start = 0;
  std::vector<int> word;
  int chi = 0;
};

struct VarietyData {
  std::map<int, std::vector<int>> closed_components;  // closed dual param -> Weyl word of its component
  std::vector<ScheduleEntry> schedule;
};

struct BlockDatum {
  std::string name;
  std::string weyl_type;
  ThetaSpec theta;
  std::set<std::string> flags;
  std::vector<Param> params;
  std::vector<std::vector<RootStatus>> status;         // [s][id]
  std::vector<std::vector<int>> cross;                 // [s][id]
  std::vector<std::vector<std::vector<int>>> cayley;   // [s][id] -> 0, 1 or 2 ids
  std::string companion_adjoint;
  std::optional<DualityBijection> duality;
  std::optional<VarietyData> variety;
  std::string strong_real_form;

  std::size_t size() const { return params.size(); }
  int rank() const { return static_cast<int>(status.size()); }
  bool has_flag(const std::string& f) const { return flags.count(f) > 0; }
  int length(int id) const { return params.at(id).length; }
  int max_length() const;
  int min_length() const;
};

struct Violation {
  std::string axiom;
  int s = -1;
  int param = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const BlockDatum& b);
/// Throws BlockError naming the first violation.
void require_valid(const BlockDatum& b);

/// Cross action of a Weyl word, letters applied right to left.
int cross_word(const BlockDatum& b, const std::vector<int>& word, int id);

WeylGroup block_weyl_group(const BlockDatum& b);
Involution block_involution(const BlockDatum& b, const WeylGroup& W);

BlockDatum complex_block(const std::string& type);
BlockDatum dual_block(const BlockDatum& b);
/// Factorwise product; ids are i * |b2| + j.
BlockDatum product_block(const BlockDatum& b1, const BlockDatum& b2, const std::string& name);
/// Relabels b through a bijection: the parameter with id i becomes map[i].
BlockDatum relabel(const BlockDatum& b, const std::vector<int>& map);
/// Compares the combinatorial content (lengths, statuses, cross, Cayley).
bool same_combinatorics(const BlockDatum& a, const BlockDatum& b, std::string* why = nullptr);

std::vector<int> open_orbit_parameters(const BlockDatum& b);
std::vector<int> minimal_length_parameters(const BlockDatum& b);

struct BlockGroups {
  Subgroup w_theta;
  Subgroup w_theta_eff;  // elements of W^theta preserving the open-orbit parameter set
  Subgroup w_m;
  Subgroup w_m_prime;
  int base_param = -1;
  std::vector<std::vector<std::size_t>> cosets;  // W_M / W'_M; cosets[0] = W'_M
  std::map<std::size_t, std::size_t> quotient;   // element of W_M -> coset index
  std::vector<std::size_t> s_generators;         // coset reps forming an F_2 basis of S
  std::size_t s_order() const { return cosets.size(); }
};

/// Stabilizer data of the cross action of W^theta on open-orbit parameters.
/// `base` overrides the default choice of the lowest open parameter id.
BlockGroups block_groups(const BlockDatum& b, const BlockDatum& b_ad, std::optional<int> base = std::nullopt);

/// |W^theta_eff / W_M|, checked against the number of minimal-length
/// parameters of the dual block.
struct ClosedOrbitMismatch : BlockError {
  ClosedOrbitMismatch(std::size_t group_count, std::size_t dual_count);
  std::size_t group_count, dual_count;
};
std::size_t closed_orbit_count(const BlockDatum& b);

// Files and the registry of bundled blocks.
BlockDatum block_from_json_text(const std::string& text);
std::string block_to_json_text(const BlockDatum& b);
BlockDatum load_block_file(const std::string& path);

class UnknownBlockError : public BlockError {
 public:
  UnknownBlockError(const std::string& name, const std::vector<std::string>& available);
};

std::string default_data_dir();
std::vector<std::string> list_blocks(const std::string& data_dir);
BlockDatum builtin_block(const std::string& name, const std::string& data_dir);
/// Each dual pair once, as (name, partner) with name <= partner.
std::vector<std::pair<std::string, std::string>> list_pairs(const std::string& data_dir);

/// Blocks found in several data directories; earlier directories win on name clashes.
class BlockRegistry {
 public:
  explicit BlockRegistry(std::vector<std::string> dirs);
  /// `extra` (or the BKD_DATA_DIR environment variable when `extra` is empty),
  /// followed by the compiled-in data directory.
  static BlockRegistry standard(const std::string& extra = "");
  const std::vector<std::string>& dirs() const { return dirs_; }
  std::vector<std::string> names() const;
  BlockDatum get(const std::string& name) const;
  std::vector<std::pair<std::string, std::string>> pairs() const;
  /// The adjoint companion (the block itself when it names itself or nothing).
  BlockDatum companion(const BlockDatum& b) const;

 private:
  std::vector<std::string> dirs_;
};

/// Best-effort reader for the text printed by the atlas `block` command.
/// Lines look like `  0( 0,6):  0  [i1,i1]   1   2   ( 6, *)  ( 4, *)  e`.
class AtlasImportError : public BlockError {
 public:
  AtlasImportError(int line, const std::string& msg);
  int line;
};
BlockDatum import_atlas_block(const std::string& text, const std::string& name, const std::string& weyl_type);

}  // namespace bkd
