#pragma once
// Smith normal form over the principal ideal domain F_p[x^±] (univariate
// Laurent polynomials with prime modulus). Pivots are chosen by minimal
// degree span; diagonal factors are normalized to trailing exponent zero and
// monic leading coefficient, and satisfy the divisibility chain. Used as the
// PID route for canonical 1-D presentations and as an oracle against the
// chain-ring staircase route.
#include <vector>

#include "stabmod/poly.hpp"

namespace stabmod {

// row-major polynomial matrix for the normal-form routines
using PolyRows = std::vector<std::vector<Poly>>;

struct SmithPolyResult {
  std::vector<Poly> diag;  // normalized, nonzero entries first, chain d_i | d_{i+1}
  PolyRows U, V;           // unimodular: U * A * V = diag
  int rank = 0;            // number of nonzero diagonal entries
};

// requires ctx.n prime and ctx.d == 1
SmithPolyResult smith_poly(RingCtx ctx, PolyRows A);

// polynomial division helpers over F_p[x^±] (f = q*g + r, span(r) < span(g))
void laurent_divmod(const Poly& f, const Poly& g, Poly& q, Poly& r);
Poly laurent_gcd(Poly a, Poly b);  // normalized (trailing exp 0, monic)

// normalize a nonzero univariate Laurent polynomial to trailing exponent 0
// and monic leading coefficient (canonical associate)
Poly normalize_univariate(const Poly& f);

PolyRows poly_rows_identity(RingCtx ctx, int n);
PolyRows poly_rows_mul(const PolyRows& a, const PolyRows& b);

}  // namespace stabmod
