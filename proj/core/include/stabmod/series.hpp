#pragma once
// Exact one-variable series arithmetic over Z_{p^r}[x^±]: rational functions
// whose denominators are invertible in the ascending ring Z_{p^r}((x)) and in
// the descending ring Z_{p^r}((x^{-1})) (equivalently, nonzero mod p), with
// exact extraction of expansion coefficients in either direction.
//
// Every such rational function is simultaneously an element of both series
// rings; the two expansions of one fraction realize the "rightward" and
// "leftward" representatives used by the one-dimensional form theory.
#include <vector>

#include "stabmod/poly.hpp"

namespace stabmod {

// fraction num/den over Z_n[x^±] (univariate ring context, prime-power n).
// Invariant: den != 0 mod p, so den is a unit in both series rings.
struct RationalFn {
  Poly num;
  Poly den;  // nonzero mod p
};

RationalFn rf_make(const Poly& num, const Poly& den);
RationalFn rf_from_poly(const Poly& p);
RationalFn rf_zero(RingCtx ctx);
bool rf_is_zero(const RationalFn& f);
RationalFn rf_add(const RationalFn& a, const RationalFn& b);
RationalFn rf_sub(const RationalFn& a, const RationalFn& b);
RationalFn rf_mul(const RationalFn& a, const RationalFn& b);
RationalFn rf_mul_poly(const RationalFn& a, const Poly& p);
RationalFn rf_neg(const RationalFn& a);
// involution x -> x^{-1} applied to numerator and denominator
RationalFn rf_conj(const RationalFn& a);

// coefficient of x^e in the ascending (x -> 0) or descending (x -> infinity)
// expansion of f; exact for any requested exponent
u64 series_coeff(const RationalFn& f, long e, bool ascending);

// the expansion window [lo, hi] as a polynomial
Poly series_window(const RationalFn& f, long lo, long hi, bool ascending);

// constant term (exponent 0) of the chosen expansion
u64 series_ct(const RationalFn& f, bool ascending);

// exact polynomial quotient: returns q with q * f.den == f.num if the
// fraction is a Laurent polynomial; nullopt otherwise
std::optional<Poly> rf_to_poly(const RationalFn& f);

// Solve G c = a where G is a k x k matrix (rows) of Laurent polynomials over
// Z_{p^r}[x^±] and a is a k-vector. Pivots of minimal p-valuation are used,
// p-power divisions are exact, and the returned entries are fractions with
// denominators invertible in both series rings. When the system is solvable
// only modulo p-power ambiguity the canonical least-residue lift is taken
// (callers quotient by a relation module that absorbs the ambiguity).
// Throws internal_error when no solution exists.
std::vector<RationalFn> solve_series_system(RingCtx ctx,
                                            const std::vector<PolyVec>& G_rows,
                                            const PolyVec& a);

}  // namespace stabmod
