#pragma once
// Internal Groebner engine: strong Buchberger algorithm for submodules of
// S^k where S = Z_{p^r}[y_1..y_nv] (polynomial variables, nonnegative
// exponents). Laurent rings are handled one level up by adjoining an inverse
// variable u with the relation u*y_1*...*y_d = 1.
//
// Monomial order: position-over-term with lower component index dominant,
// graded lexicographic within a component. Leading coefficients over Z_{p^r}
// are p^s * unit; reduction is "strong" (a term is reducible only when the
// divisor's coefficient valuation does not exceed the term's), and the basis
// is completed with both S-pairs and annihilator pairs, which yields strong
// Groebner bases over the chain ring.
#include <vector>

#include "stabmod/arith.hpp"

namespace stabmod::eng {

struct Ring {
  u64 p = 2;
  unsigned r = 1;
  u64 q = 2;  // p^r
  int nv = 0; // number of polynomial variables
};

struct Mono {
  int comp = 0;
  std::vector<int> e;  // nonnegative exponents, length nv
  bool operator==(const Mono&) const = default;
};

// cmp > 0 iff a is larger (closer to leading position) than b
int mono_cmp(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b);  // a | b (same component)

struct Term {
  Mono m;
  u64 c = 0;  // in (0, q)
  bool operator==(const Term&) const = default;
};

// sorted descending by mono_cmp; leading term first; no zero coefficients
using Vec = std::vector<Term>;

Vec normalize(const Ring& R, std::vector<Term> raw);
Vec add(const Ring& R, const Vec& a, const Vec& b);
Vec scale(const Ring& R, const Vec& a, u64 c);
// multiply by the ring term c * y^e
Vec mul_term(const Ring& R, const Vec& a, const std::vector<int>& e, u64 c);

struct Budget {
  long pair_reductions = 2'000'000;
  long used = 0;
};

// full normal form: every term of the result is irreducible against G
Vec normal_form(const Ring& R, const std::vector<Vec>& G, Vec f,
                Budget* budget = nullptr);

// strong Groebner basis, inter-reduced, leading unit parts normalized to 1,
// sorted by leading monomial descending; deterministic for fixed input order
std::vector<Vec> buchberger(const Ring& R, std::vector<Vec> gens,
                            Budget* budget = nullptr);

}  // namespace stabmod::eng
