// The block variety B = a/W' x_{h/W} h of a block, its coherent sheaves as
// graded modules, and the canonical objects built by wall functors.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bkd/blockdata.hpp"
#include "bkd/gradedalg.hpp"
#include "bkd/hecke.hpp"

namespace bkd {

class VarietyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometry attached to a block and its adjoint companion.
///
/// Coordinates: y_1..y_r on h (root basis), x_1..x_a on a = (-1)-eigenspace of
/// theta, with a -> h given by the columns of B.  The component of B indexed by
/// w is {(x, w x)}; its coordinate ring is C[a] with y = M_w B x.
class BlockVariety {
 public:
  BlockVariety(const BlockDatum& b, const BlockDatum& companion);

  const std::string& block() const { return block_; }
  const WeylGroup& weyl() const { return W_; }
  int rank() const { return W_.rank(); }
  int dim_a() const { return static_cast<int>(B_.cols()); }
  const QMat& embedding() const { return B_; }
  /// Action of w in W^theta on a-coordinates.
  QMat restrict_to_a(std::size_t w) const;
  /// r x a matrix: y = M_w B x on the component of w.
  QMat component_matrix(std::size_t w) const;
  const std::vector<std::size_t>& w_prime() const { return w_prime_; }
  /// Smallest element id of every coset w W'.
  const std::vector<std::size_t>& components() const { return components_; }
  const SymmetryGroup& symmetry() const { return S_; }
  /// Weyl group element of each symmetry element (indexed like SymmetryGroup::act).
  const std::vector<std::size_t>& symmetry_elements() const { return s_elements_; }
  /// Basic invariants of W in the y variables.
  const GradedAlgebra& invariants() const { return inv_; }
  /// Throws unless W' is trivial (required by the module calculus).
  void require_free() const;

 private:
  std::string block_;
  WeylGroup W_;
  QMat theta_, B_, B_left_;
  std::vector<std::size_t> w_prime_, components_, s_elements_;
  SymmetryGroup S_;
  GradedAlgebra inv_;
};

/// Hilbert series of O(B) = C[a]^{W'} (x) C[h] modulo f(B x) - f(y) for the
/// basic invariants f, computed degreewise as a quotient.
HilbertSeries fiber_product_hilbert(const BlockVariety& V, int N);
/// Same quotient with C[h]^{s} in place of C[h]: the ring O(B_s) of the partial
/// quotient.  O(B) is free of rank 2 over it, so Hilb(O(B)) = (1 + t^2) Hilb(O(B_s)).
HilbertSeries partial_fiber_hilbert(const BlockVariety& V, int s, int N);
/// Hilb(C[a]^{W'}) prod(1 - t^{2 d_i}) / (1 - t^2)^r.
HilbertSeries expected_fiber_hilbert(const BlockVariety& V, int N);

/// O(B) as a module over C[a]: free on a harmonic basis of C[h] over C[h]^W.
/// The symmetry group acts on the C[a] factor only.
GradedModule structure_sheaf(const BlockVariety& V);
/// Pushforward of the structure sheaf of one component (trivial symmetry).
GradedModule component_sheaf(const BlockVariety& V, std::size_t w);
/// The basic invariants act through the embedding: f(Y) = f(B x).
std::string sheaf_defect(const BlockVariety& V, const GradedModule& M);

/// M twisted by symmetry element g (Y -> g(Y)), trivial symmetry.
GradedModule twist(const BlockVariety& V, const GradedModule& M, std::size_t g);
/// Direct sum of all twists of a non-equivariant M, with the permutation action.
GradedModule average(const BlockVariety& V, const GradedModule& M);
/// Drops the symmetry action.
GradedModule forget_symmetry(const GradedModule& M);

/// O(B) (x)_{O(B_s)} M.  Throws TruncationError when a new generator lands above N.
GradedModule wall(const BlockVariety& V, const GradedModule& M, int s, int N);
/// Walls applied in word order (word[0] first).
GradedModule bott_samelson(const BlockVariety& V, const GradedModule& base, const std::vector<int>& word, int N);

/// Graded dimensions of Hom(M, O_w) in degrees 0..N for every component w.
std::map<std::size_t, std::vector<std::size_t>> character(const BlockVariety& V, const GradedModule& M, int N);

/// One Bott-Samelson object of the schedule, decomposed and compared with the
/// Hecke module of the dual block.
struct ScheduleCertificate {
  int start = 0;
  std::vector<int> word;
  std::vector<int> new_params;
  std::map<int, UPoly> sheaf_multiplicity;  // summand label -> sum of u^{shift/2}
  std::map<int, UPoly> hecke_multiplicity;  // coefficient in the KLV basis
  bool agrees() const { return sheaf_multiplicity == hecke_multiplicity; }
};

struct CanonicalObjects {
  std::string block;
  BlockDatum dual;
  int truncation = 0;
  std::map<int, GradedModule> objects;  // keyed by parameter of the dual block
  std::map<int, int> chi;
  std::vector<ScheduleCertificate> certificates;
  std::vector<int> missing;  // dual parameters not produced
};

/// Smallest N that every Bott-Samelson object of the schedule fits into.
int default_truncation(const BlockDatum& b);
/// Component sheaves on closed parameters, then schedule entries.  Throws
/// VarietyError on a summand that matches neither an earlier object nor a
/// schedule entry, or on two new summands with the same character.
CanonicalObjects canonical_objects(const BlockDatum& b, const BlockDatum& companion, int N);
/// Resolves the companion through the registry.
CanonicalObjects canonical_objects(const BlockDatum& b, const std::string& data_dir, int N);

/// Hom dimensions between canonical objects in normalized degree
/// k = d + l(i) - l(j) (lengths in the dual block), for d = lo..N.
struct ExtAlgebra {
  std::vector<int> params;
  std::vector<int> lengths;
  /// dims[i][j] maps normalized degree -> dimension (zero entries omitted)
  std::vector<std::vector<std::map<int, std::size_t>>> dims;
  /// Degree-0 part of the pairing between projective and simple classes.
  std::vector<std::vector<std::size_t>> pairing;
  bool negative_degrees_vanish = true;
  bool pairing_is_identity() const;
};

ExtAlgebra ext_algebra(const BlockVariety& V, const CanonicalObjects& C, int N);

}  // namespace bkd
