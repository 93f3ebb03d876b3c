// Root systems, Weyl groups, involutions and invariant theory data.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkd/linalg.hpp"

namespace bkd {

using IntMat = std::vector<std::vector<long>>;

class RootDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Roots are integer vectors in the basis of simple roots.  The convention
/// is cartan[i][j] = <alpha_j, alpha_i^vee>, so s_i(alpha_j) = alpha_j - cartan[i][j] alpha_i.
struct RootDatum {
  std::string type;  // "A2", "A1xA1", or "custom"
  IntMat cartan;
  int rank = 0;
  std::vector<std::vector<long>> roots;  // positive roots first, then negatives
  std::vector<int> simple_roots;         // indices into roots
  std::size_t num_positive() const { return roots.size() / 2; }
};

/// Cartan matrix for a type string like "A2", "B2", "G2" or "A1xA1".
IntMat cartan_matrix(const std::string& type);
RootDatum build_root_system(const IntMat& cartan, const std::string& type = "custom");
RootDatum root_system_from_type(const std::string& type);

struct WeylElement {
  std::vector<int> perm;  // image of each root index
  std::vector<int> word;  // reduced word, leftmost letter first
  int length = 0;
  QMat matrix;            // action on the span of the simple roots
};

class WeylGroup {
 public:
  static constexpr std::size_t kDefaultCap = 100000;

  explicit WeylGroup(const RootDatum& rd, std::size_t cap = kDefaultCap);

  const RootDatum& root_datum() const { return rd_; }
  int rank() const { return rd_.rank; }
  std::size_t order() const { return elems_.size(); }
  const WeylElement& element(std::size_t id) const { return elems_.at(id); }
  const std::vector<WeylElement>& elements() const { return elems_; }
  int length(std::size_t id) const { return elems_.at(id).length; }
  std::size_t identity() const { return 0; }
  std::size_t longest() const { return longest_; }

  std::size_t generator(int s) const { return gens_.at(s); }
  std::size_t multiply(std::size_t a, std::size_t b) const { return mult_[a * elems_.size() + b]; }
  std::size_t inverse(std::size_t a) const { return inv_.at(a); }
  /// Element represented by a word (not necessarily reduced).
  std::size_t from_word(const std::vector<int>& word) const;
  bool is_reduced(const std::vector<int>& word) const;
  std::optional<std::size_t> find_matrix(const QMat& m) const;
  const QMat& simple_reflection_matrix(int s) const { return elems_[gens_[s]].matrix; }

 private:
  RootDatum rd_;
  std::vector<WeylElement> elems_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<std::size_t> gens_, inv_, mult_;
  std::size_t longest_ = 0;
};

/// theta = sign * t * P_sigma on the span of the simple roots, where P_sigma
/// permutes simple roots along a diagram automorphism and t is an optional
/// inner twist given as a Weyl group element.
struct Involution {
  std::vector<int> diagram_permutation;
  std::vector<int> inner_twist;  // word; empty for none
  int sign = 1;
  QMat matrix;
};

Involution make_involution(const WeylGroup& W, const std::vector<int>& diagram,
                           const std::vector<int>& inner_twist = {}, int sign = 1);
/// The dual-side involution -theta^vee: negated transpose, acting on the span of the simple coroots.
Involution negated_dual(const Involution& theta);
/// theta(w) = theta w theta^{-1}, as a Weyl group element id.
std::size_t apply_involution(const WeylGroup& W, const Involution& theta, std::size_t w);

struct Subgroup {
  std::vector<std::size_t> elements;  // ids in the ambient group (the embedding)
  std::vector<int> lengths;           // induced lengths
  std::size_t order() const { return elements.size(); }
  bool contains(std::size_t id) const;
};

Subgroup fixed_subgroup(const WeylGroup& W, const Involution& theta);
/// Subgroup generated by the given element ids.
Subgroup generated_subgroup(const WeylGroup& W, const std::vector<std::size_t>& gens);

/// Eigenspace of an involution, as a list of basis vectors.
struct SplitPart {
  std::size_t ambient_dim = 0;
  int eigenvalue = -1;
  std::vector<std::vector<Q>> basis;
};

SplitPart split_part(const Involution& theta, int eigenvalue = -1);

struct InvariantDegrees {
  bool free = false;                 // true when the Molien series factors
  std::vector<int> degrees;          // polynomial degrees of basic invariants
  std::vector<Q> molien;             // truncated Molien series coefficients
};

/// Degrees of basic invariants for a finite matrix group, via its Molien series.
/// Throws RootDataError when the set is not closed under products.
InvariantDegrees invariant_degrees(const std::vector<QMat>& group, int truncation = -1);
std::vector<QMat> reflection_matrices(const WeylGroup& W);

}  // namespace bkd
