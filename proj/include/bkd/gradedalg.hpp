// Graded polynomial algebras, invariant rings and graded free modules over a
// polynomial ring, with exact Hom spaces and Krull-Schmidt decomposition.
//
// Degrees are cohomological: a variable of a polynomial ring sits in degree
// `weight` (2 for everything built from a Cartan subalgebra).
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bkd/poly.hpp"

namespace bkd {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation needed degrees beyond the requested truncation.
class TruncationError : public AlgebraError {
 public:
  TruncationError(int requested, int required, const std::string& what);
  int requested, required;
};

class DecompositionError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

struct HilbertSeries {
  std::vector<Z> coeffs;  // coeffs[d] = dimension in degree d
  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
  Z at(int d) const { return d >= 0 && d < static_cast<int>(coeffs.size()) ? coeffs[d] : Z(0); }
  bool operator==(const HilbertSeries& o) const { return coeffs == o.coeffs; }
  std::string str() const;
};

/// Truncated power series of prod(1 - t^{k_i}) / prod(1 - t^{l_j}).
HilbertSeries rational_series(const std::vector<int>& numerator_degrees, const std::vector<int>& denominator_degrees,
                              int N);
HilbertSeries series_product(const HilbertSeries& a, const HilbertSeries& b);

struct GradedAlgebra {
  int nvars = 0;
  int weight = 1;
  int truncation = 0;
  std::vector<std::vector<Poly>> basis;  // basis[d], d = 0..truncation
  std::vector<Poly> generators;          // minimal homogeneous generators found up to truncation
  std::vector<int> generator_degrees;
  HilbertSeries hilbert() const;
};

/// Invariants of a finite matrix group acting on coordinates, through degree N.
/// Basis elements are Reynolds averages of monomials, reduced to echelon form.
GradedAlgebra invariant_ring(const std::vector<QMat>& group, int N, int weight = 1);

/// Monomial complement of the ideal generated by the positive-degree
/// generators of an invariant ring: a basis of the polynomial ring as a free
/// module over the invariants when the group is a reflection group.
struct HarmonicBasis {
  std::vector<Poly> elements;
  std::vector<int> degrees;  // cohomological
};
HarmonicBasis harmonic_basis(const GradedAlgebra& invariants, std::size_t expected_size);

/// Elementary abelian 2-group acting linearly on the variables of Lambda.
/// Element 0 is the identity; bits[k] are F_2 coordinates in the generators.
struct SymmetryGroup {
  int nvars = 0;
  std::vector<QMat> act;
  std::vector<QMat> act_inverse;
  std::vector<unsigned> bits;
  int ngens = 0;

  std::size_t order() const { return act.size(); }
  static SymmetryGroup trivial(int nvars);
  /// Builds the group from generator matrices; checks closure and the F_2 structure.
  static SymmetryGroup from_generators(int nvars, const std::vector<QMat>& gens);
  std::size_t index_of_bits(unsigned b) const;
  std::vector<std::size_t> generator_indices() const;
  /// (g . p)(x) = p(g^{-1} x)
  Poly apply(std::size_t g, const Poly& p) const;
  PolyMat apply(std::size_t g, const PolyMat& m) const;
};

/// A finitely generated graded module that is free over Lambda = Q[x_1..x_n]
/// (variables in degree 2) with basis e_b in degree shifts[b].
///
/// Y[j] is the action of the j-th extra coordinate: Y[j] e_b = sum_a Y[j](a, b) e_a,
/// with entries homogeneous of degree shifts[b] + 2 - shifts[a].
/// G[k] is the semilinear action of symmetry element k:
/// G(lambda e_b) = (g . lambda) sum_a G[k](a, b) e_a.
struct GradedModule {
  int nvars = 0;
  std::vector<int> shifts;
  std::vector<PolyMat> Y;
  std::vector<PolyMat> G;

  std::size_t rank() const { return shifts.size(); }
  int lowest_shift() const;
  HilbertSeries hilbert(int N) const;
};

/// Degree conditions, commuting Y, and the semilinear group law.
/// Returns an empty string when consistent, else a description of the first failure.
std::string module_defect(const GradedModule& M, const SymmetryGroup& S);

GradedModule shifted(const GradedModule& M, int by);
GradedModule direct_sum(const GradedModule& A, const GradedModule& B);
/// Evaluates a polynomial in the Y variables at the module's Y matrices.
PolyMat evaluate_on(const Poly& f, const GradedModule& M);

/// Basis of the degree-d equivariant homomorphisms M -> N.
/// Phi has entries of degree d + shifts_M[b] - shifts_N[a] and satisfies
/// Phi Y_M = Y_N Phi and Phi G_M[g] = G_N[g] g(Phi).
std::vector<PolyMat> module_hom(const GradedModule& M, const GradedModule& N, int d, const SymmetryGroup& S);
/// dim Hom^d for d = lo..hi.
std::vector<std::size_t> hom_dimensions(const GradedModule& M, const GradedModule& N, int lo, int hi,
                                        const SymmetryGroup& S);

/// Submodule e M for a degree-0 idempotent endomorphism e, with its own basis.
GradedModule image_of_idempotent(const GradedModule& M, const PolyMat& e, const SymmetryGroup& S);

/// Indecomposable summands (equivariant, degree-0 splitting).
std::vector<GradedModule> decompose(const GradedModule& M, const SymmetryGroup& S);
/// Degree-0 equivariant isomorphism test for indecomposable modules.
bool is_isomorphic(const GradedModule& A, const GradedModule& B, const SymmetryGroup& S);

/// Multiplicity of each character (bitmask: bit k set means generator k acts
/// by -1) on the lowest-degree generators of M.
std::vector<int> lowest_characters(const GradedModule& M, const SymmetryGroup& S);

}  // namespace bkd
