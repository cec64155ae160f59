#pragma once
// Finite abelian groups equipped with a Z_n-valued quadratic form q and its
// symmetric bilinear refinement b: validation, evaluation, nondegeneracy,
// exhaustive Lagrangian-subgroup search (optionally restricted to subgroups
// stable under a given endomorphism), direct sums, opposites, isomorphism
// tests, and CRT assembly of coprime components.
#include <optional>
#include <string>
#include <vector>

#include "stabmod/arith.hpp"

namespace stabmod {

using GrpElt = std::vector<u64>;  // coordinates modulo the cyclic factors

struct MetricGroup {
  u64 n = 2;                             // q and b take values in Z_n
  std::vector<u64> factors;              // cyclic orders, each > 1 and | n
  std::vector<u64> q_gen;                // q(g_i)
  std::vector<std::vector<u64>> b_gram;  // b(g_i, g_j), symmetric
  u64 order() const;
};

struct MgValidation {
  bool valid = false;
  std::vector<std::string> failures;
};
// compatibility laws: b symmetric; b(g,g) = 2 q(g); order-weighted values
// vanish (n_i b(g_i, .) = 0, n_i^2 q(g_i) = 0, 2 n_i q(g_i) = 0); factors > 1
// divide n
MgValidation mg_validate(const MetricGroup& g);

u64 q_eval(const MetricGroup& g, const GrpElt& a);
u64 b_eval(const MetricGroup& g, const GrpElt& a, const GrpElt& b);

GrpElt mg_zero(const MetricGroup& g);
GrpElt mg_add(const MetricGroup& g, const GrpElt& a, const GrpElt& b);
GrpElt mg_scale(const MetricGroup& g, u64 c, const GrpElt& a);
u64 mg_elt_order(const MetricGroup& g, const GrpElt& a);

// all elements in mixed-radix order; throws budget_exhausted when the group
// order exceeds the budget
std::vector<GrpElt> mg_elements(const MetricGroup& g, u64 budget = 1u << 20);

// the radical of b is trivial
bool is_nondegenerate(const MetricGroup& g, u64 budget = 1u << 20);

// subgroup generated by `gens` as a sorted element list
std::vector<GrpElt> mg_closure(const MetricGroup& g,
                               const std::vector<GrpElt>& gens,
                               u64 budget = 1u << 20);

// endomorphism given by integer coordinates of generator images:
// action[j] = image of g_j; applies by linearity
GrpElt mg_apply_action(const MetricGroup& g,
                       const std::vector<GrpElt>& action, const GrpElt& a);

struct LagrangianSearch {
  bool complete = true;  // false when the budget ran out mid-search
  std::vector<std::vector<GrpElt>> lagrangians;  // sorted element lists
};
// every Lagrangian subgroup (q-isotropic with L = L^perp); when `action` is
// given only subgroups mapped into themselves by it are reported
LagrangianSearch lagrangian_search(const MetricGroup& g, u64 budget = 1u << 20,
                                   const std::vector<GrpElt>* action = nullptr);

MetricGroup direct_sum(const MetricGroup& a, const MetricGroup& b);
MetricGroup opposite(const MetricGroup& a);

// isomorphism preserving q and b; returns images of a's generators in b
std::optional<std::vector<GrpElt>> iso_check(const MetricGroup& a,
                                             const MetricGroup& b,
                                             u64 budget = 1u << 20);

// assemble groups over the pairwise coprime moduli of Modulus(n) (given in
// Modulus(n).factors order) into one group over n; values lift by CRT and
// factors merge into a canonical divisibility chain
MetricGroup mg_crt_combine(const std::vector<MetricGroup>& parts, u64 n);

}  // namespace stabmod
