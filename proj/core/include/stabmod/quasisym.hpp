#pragma once
// One-variable module theory over Z_{p^r}[x^±] for finitely generated modules
// carrying an anti-hermitian sesquilinear pairing with vanishing constant
// diagonal and zero radical: the defect group E_P = P*/P with its quadratic
// form q and bilinear refinement b, extension by isotropic subgroups,
// boundary-restriction kernels, Witt reduction to a prime modulus, and
// metabolicity decisions with explicit witnesses.
#include <optional>
#include <string>
#include <vector>

#include "stabmod/laurent_gb.hpp"
#include "stabmod/metric_group.hpp"
#include "stabmod/series.hpp"

namespace stabmod {

// P = R^k / im(relations) with pairing Gram[i][j] = Omega(g_i, g_j)
struct QuasiSymplectic1D {
  RingCtx ctx;                // d == 1, prime-power modulus
  int k = 0;                  // generator count
  PolyMat relations;          // columns in R^k (empty: free module)
  std::vector<PolyVec> gram;  // k rows of length k
};

QuasiSymplectic1D qs_free(RingCtx ctx, std::vector<PolyVec> gram);

struct QsValidation {
  bool valid = false;
  std::vector<std::string> failures;
};
// anti-hermitian Gram, vanishing constant diagonal, well-definedness against
// the relations, zero radical (failures name the offending generator pairs)
QsValidation qs_validate(const QuasiSymplectic1D& P);

// a functional on P: value vector on the generators (class of E_P = P*/P)
using EClass = PolyVec;

struct EModule {
  RingCtx ctx;
  PolyMat dual_gens;    // generators of P* <= R^k (value vectors)
  PolyMat relations;    // relations of E_P on those generators
  FiniteQuotient group; // E_P as a finite abelian group
  bool finite = false;
  std::vector<u64> factors;        // invariant factors > 1, ascending
  std::vector<EClass> gen_reps;    // canonical generator representatives
  // translation action: coordinates of x * gen_j in the canonical generators
  std::vector<std::vector<u64>> x_action;

  // coordinates of a functional's class in the canonical decomposition
  std::vector<u64> coords(const EClass& alpha) const;
  EClass class_from_coords(const std::vector<u64>& c) const;
};
EModule e_module(const QuasiSymplectic1D& P);

// the unique-modulo-relations rational solution of Gram * c = alpha; its
// ascending expansion is the rightward representative of alpha, its
// descending expansion the leftward one
std::vector<RationalFn> arrow_solution(const QuasiSymplectic1D& P,
                                       const EClass& alpha);

// q(alpha) = constant term of Omega(alpha_right, alpha_left); values in Z_n
u64 q_form(const QuasiSymplectic1D& P, const EClass& alpha);
// b(alpha, beta) = q(alpha+beta) - q(alpha) - q(beta), computed directly
u64 b_form(const QuasiSymplectic1D& P, const EClass& alpha,
           const EClass& beta);

// package (E_P, q, b) on the canonical generators; throws internal_error if
// the result is degenerate or violates the compatibility laws
MetricGroup metric_group_of(const QuasiSymplectic1D& P,
                            const EModule* em = nullptr);

// enlarge P by an isotropic, translation-stable subgroup T of E_P (given by
// coordinates w.r.t. the canonical generators); the pairing on new generators
// is Omega(alpha_left, beta_right)
QuasiSymplectic1D extend_by_isotropic(const QuasiSymplectic1D& P,
                                      const EModule& em,
                                      const std::vector<std::vector<u64>>& T);

// orthogonal complement of span(M_gens) within P (columns in R^k)
PolyMat qs_perp(const QuasiSymplectic1D& P, const PolyMat& M_gens);
// span equality modulo the relations
bool qs_same_submodule(const QuasiSymplectic1D& P, const PolyMat& A,
                       const PolyMat& B);

// subgroup of E_P (generating coordinate vectors) of classes vanishing on a
// biorthogonally closed submodule M (M^perp-perp = M required)
std::vector<std::vector<u64>> ker_rho(const QuasiSymplectic1D& P,
                                      const EModule& em,
                                      const PolyMat& M_gens);

struct WittStep {
  unsigned s = 0;      // minimal exponent with p^s P = 0
  unsigned t = 0;      // ceil(s/2): the step used N = p^t P
  int gens_before = 0;
  int gens_after = 0;
};
struct WittReduction {
  QuasiSymplectic1D reduced;    // over Z_p
  std::vector<WittStep> trace;  // N^perp / N^perp-perp steps performed
};
// Witt-equivalent module annihilated by p, re-expressed over F_p (the pairing
// values, all divisible by p^{r-1}, are divided down); identity when r = 1
WittReduction witt_reduce(const QuasiSymplectic1D& P);

struct MetabolicityResult {
  bool metabolic = false;
  bool complete = true;  // search finished within budget
  // witness: a Lagrangian subgroup of E_P (sorted element coordinate lists);
  // empty refutation when not metabolic
  std::vector<GrpElt> witness;
  MetricGroup group;
};
MetabolicityResult is_metabolic(const QuasiSymplectic1D& P,
                                u64 budget = 1u << 20);

}  // namespace stabmod
