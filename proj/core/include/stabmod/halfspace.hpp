#pragma once
// Unimodular exponent changes of coordinates that align a lattice half-space
// {lambda : v . lambda >= 0} with the coordinate half-space {lambda_d >= 0},
// and the induced ring automorphism applied to whole codes. Rebasing is
// exact: isotropy, charge modules, and all other module invariants transport
// along it unchanged.
#include <vector>

#include "stabmod/symplectic.hpp"

namespace stabmod {

struct HalfSpaceBasis {
  std::vector<i64> normal;  // the input divided by its gcd
  IMat to_new;              // new exponents = to_new * old; last row = normal
  IMat to_old;              // inverse transform
};

// complete a nonzero integer vector to a basis: returns unimodular matrices
// with v . lambda = (to_new * lambda)_d for every lambda
HalfSpaceBasis complete_basis(const std::vector<i64>& v);

// the exponent substitution x^e -> x^{T e} for unimodular T
Poly poly_exp_transform(const Poly& f, const IMat& T);

// rewrite the code in coordinates where the half-space normal becomes
// (0, ..., 0, 1)
StabilizerCode rebase_halfspace(const StabilizerCode& code,
                                const std::vector<i64>& v,
                                HalfSpaceBasis* basis_out = nullptr);

}  // namespace stabmod
