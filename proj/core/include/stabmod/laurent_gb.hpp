#pragma once
// Module computations over Laurent rings R = Z_q[x_1^±..x_d^±] (q = p^r a
// prime power): Groebner bases of submodules of R^k, membership, kernels,
// solving, intersections, subquotient presentations, Ext groups, and the
// extraction of finite abelian quotient groups R^k/N with canonical cyclic
// coordinates.
//
// Laurent handling: R = Z_q[x_1..x_d, u]/(u*x_1*...*x_d - 1). Every vector is
// internalized exactly (per-term u-padding), the defining relation times each
// basis vector is adjoined to every generating set, and internal results are
// mapped back by u -> (x_1...x_d)^{-1}.
//
// Supported coefficient rings: r = 1 (fields F_p) for any d; arbitrary r for
// d <= 1. Callers outside this matrix get ErrorKind::unsupported_ring.
#include <memory>
#include <optional>

#include "stabmod/engine.hpp"
#include "stabmod/poly.hpp"

namespace stabmod {

// true iff the Groebner layer computes exactly over Z_{p^r}[x_1^±..x_d^±]
bool gb_ring_supported(u64 p, unsigned r, int d);

// throws unsupported_ring if the (prime-power) ring is outside the matrix;
// `what` names the operation in the error message
void require_gb_support(const RingCtx& ctx, const char* what);

// prime-power check helper: ctx.n must be p^r; returns (p, r)
PrimePower require_prime_power(const RingCtx& ctx);

// Groebner basis handle for a submodule N <= R^k
class GBModule {
 public:
  GBModule() = default;
  // gens: columns in R^k (ambient rank k). Computes the strong GB eagerly.
  GBModule(RingCtx ctx, int ambient, PolyMat gens);

  const RingCtx& ctx() const { return ctx_; }
  int ambient() const { return ambient_; }
  const PolyMat& gens() const { return gens_; }
  bool contains(const PolyVec& v) const;
  bool contains_all(const PolyMat& vs) const;
  // normal form of v against the basis (canonical coset representative)
  PolyVec normal_form(const PolyVec& v) const;

  // internal access for the finite-quotient machinery
  const eng::Ring& engine_ring() const;
  const std::vector<eng::Vec>& basis() const;

 private:
  RingCtx ctx_;
  int ambient_ = 0;
  PolyMat gens_;
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// kernel of the map R^a -> R^b, v |-> sum_j v_j * cols[j]; returns generating
// columns of the kernel submodule of R^a
PolyMat kernel_of_map(RingCtx ctx, const PolyMat& cols, int codomain_rank);

// solve sum_j y_j * cols[j] = target; nullopt if target not in the image
std::optional<PolyVec> solve_in_image(RingCtx ctx, const PolyMat& cols,
                                      int codomain_rank,
                                      const PolyVec& target);

// generators of span(A) ∩ span(B) inside R^k
PolyMat intersect_modules(RingCtx ctx, const PolyMat& A, const PolyMat& B,
                          int ambient);

// relation module of span(gens)/span(sub): all y with sum y_i gens_i in
// span(sub), as columns in R^{#gens} (includes the syzygies of gens)
PolyMat subquotient_relations(RingCtx ctx, const PolyMat& gens,
                              const PolyMat& sub, int ambient);

// conjugate transpose of a column-major matrix with `rows` rows
PolyMat mat_conj_transpose(const PolyMat& cols, int rows);
PolyMat mat_transpose(const PolyMat& cols, int rows);

// Ext^i(M, R) vanishing for M presented as R^g / im(relations), i >= 1.
// Uses iterated syzygies; exact for supported rings.
bool ext_vanishes(RingCtx ctx, int g, const PolyMat& relations, int i);

// presentation of the quotient R^k / span(sub) with its finite-group
// extraction, and, over univariate field rings, the polynomial invariant
// factors of the relation matrix together with the free rank
struct QuotientPresentation {
  RingCtx ctx;
  int ambient = 0;
  PolyMat relations;
  bool finite = false;
  u64 order = 0;                   // defined when finite
  std::vector<u64> factors;        // abelian invariant factors > 1, ascending
  std::vector<Poly> poly_factors;  // univariate field rings: nonunit d_i
  int free_rank = 0;               // univariate field rings: free part rank
};
QuotientPresentation quotient_presentation(RingCtx ctx, int ambient,
                                           const PolyMat& sub);

// involution-twisted functionals on M = R^k/im(relations): value tuples v
// with sum_i conj(a_i) v_i = 0 for every relation column a (the kernel of
// the involuted transpose); evaluation reads off coordinates
PolyMat dual_presentation(RingCtx ctx, int ambient, const PolyMat& relations);

// presentation of Ext^1(M, R) for M = R^k/im(relations) from a two-step free
// resolution with the involution twist: the subquotient
// ker(conj-transpose of the syzygy map) / im(conj-transpose of relations)
QuotientPresentation ext1(RingCtx ctx, int ambient, const PolyMat& relations);

// ---------------------------------------------------------------------------
// finite abelian quotient groups R^k / N with canonical coordinates
// ---------------------------------------------------------------------------
struct FiniteQuotient {
  RingCtx ctx;
  int ambient = 0;
  bool finite = false;
  u64 order = 0;                  // defined when finite
  std::vector<u64> factors;       // invariant factors > 1, ascending chain
  std::vector<PolyVec> gen_reps;  // ambient representative per factor

  // coordinates of [v] in the cyclic decomposition (length = factors.size())
  std::vector<u64> coords(const PolyVec& v) const;

  bool trivial() const { return finite && factors.empty(); }

  struct Impl;
  std::shared_ptr<const Impl> impl;
};

// quotient R^k / span(relations); budget bounds the staircase enumeration
FiniteQuotient finite_quotient(RingCtx ctx, int ambient,
                               const PolyMat& relations,
                               long staircase_budget = 1 << 16);

}  // namespace stabmod
