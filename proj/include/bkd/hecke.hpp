// Hecke module of a block, KLV polynomials and K-group operators.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkd/blockdata.hpp"
#include "bkd/report.hpp"
#include "bkd/upoly.hpp"

namespace bkd {

class HeckeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class KLVError : public HeckeError {
 public:
  KLVError(int delta, int gamma, const std::string& msg);
  int delta, gamma;
};

/// T_s a_gamma for one (s, gamma), as (param, coefficient) pairs.
///
/// The module is the unnormalized one: T_s satisfies (T_s - u)(T_s + 1) = 0.
///
///   C+  T a = a'                                  (a' = cross image)
///   C-  T a = (u-1) a + u a'
///   ic  T a = -a
///   rn  T a = u a
///   i1  T a = a' + a_d                            (d the Cayley transform)
///   i2  T a = a + a_d1 + a_d2
///   r1  T a = (u-2) a + (u-1)(a_c1 + a_c2)        (c1, c2 inverse Cayleys)
///   r2  T a = (u-1) a - a' + (u-1) a_c
std::vector<std::pair<int, UPoly>> hecke_column(const BlockDatum& b, int s, int gamma);

struct HeckeModule {
  BlockDatum block;
  std::vector<int> rel_length;  // length minus the minimal length of the block
  IntMat cartan;
  std::vector<PMat> T;          // column gamma holds T_s a_gamma

  std::size_t size() const { return rel_length.size(); }
  int rank() const { return static_cast<int>(T.size()); }
  PMat T_inverse(int s) const;
  /// (T_s + 1) x
  PVec wall(int s, const PVec& x) const;
  PVec basis_vector(int gamma) const;
};

bool quadratic_relation_holds(const HeckeModule& h, int s);
bool braid_relation_holds(const HeckeModule& h, int s, int t);
/// Builds the module and verifies the quadratic and braid relations.
HeckeModule build_hecke(const BlockDatum& b);
DualityReport hecke_relations_report(const HeckeModule& h);

/// The bar involution: column delta is D(a_delta), where D is u -> u^{-1}
/// semilinear, commutes as D(T_s m) = T_s^{-1} D(m), and is normalized to
/// D(a) = u^{-l} (a + lower terms).
PMat bar_involution(const HeckeModule& h);

struct KLVMatrix {
  PMat P;  // P(delta, gamma)
  std::vector<int> rel_length;
  std::size_t size() const { return P.size(); }
};

KLVMatrix klv(const HeckeModule& h);
/// The element C_gamma = sum_delta P(delta, gamma) a_delta.
PVec klv_element(const KLVMatrix& k, int gamma);
/// Coefficients of x in the basis C_gamma.
PVec expand_in_klv(const KLVMatrix& k, const PVec& x);

/// Checks sum_gamma (-1)^{l(gamma)-l(delta)} P(delta,gamma) P'(bij(xi), bij(gamma)) = [delta == xi].
DualityReport verify_duality(const KLVMatrix& P, const KLVMatrix& P_dual, const std::vector<int>& bij);

/// Product of (-T_s) at u = 1 along a reduced word. Integer entries.
QMat intertwining_operator(const HeckeModule& h, const WeylGroup& W, const std::vector<int>& word);
DualityReport intertwining_word_independence(const HeckeModule& h, const WeylGroup& W);
/// D = sum_w (-1)^{l(w)} [I_w]; checks D^2 = |W| D and, for adjoint blocks,
/// that each open-orbit class occurs in D [Delta_open] with coefficient +-|W_M|.
DualityReport translation_wall_identity(const HeckeModule& h, const WeylGroup& W, std::optional<std::size_t> w_m_order,
                                        bool adjoint);
/// [I_w][Delta_g] = +-[Delta_{w x g}] plus classes on other orbits, for open-orbit
/// parameters g (every parameter in the complex model).
DualityReport cross_vs_intertwining(const HeckeModule& h, const WeylGroup& W);

std::string klv_csv(const KLVMatrix& k);
std::string klv_table(const KLVMatrix& k);

}  // namespace bkd
