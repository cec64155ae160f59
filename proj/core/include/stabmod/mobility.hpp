#pragma once
// Boundary-to-bulk comparison for a half-space wall: the syndrome functional
// induced by a boundary functional (the V map), generators of the boundary
// functional module, an exhaustive degree-capped search for cone-supported
// annihilator pairs of the charge module (movability of excitations through
// the wall), and a windowed surjectivity certificate for V on the charge
// generators.
#include <string>
#include <vector>

#include "stabmod/boundary.hpp"
#include "stabmod/symplectic.hpp"

namespace stabmod {

// Turn a value tuple on the boundary generators into the induced functional
// on the bulk stabilizers (original frame): the value on stabilizer j
// collects alpha[prim(j,k)] at wall power shifts[j]-k for every depth k.
// Only primary values contribute; secondary entries are carried for shape.
PolyVec v_map(const BoundaryModule& B, const PolyVec& alpha);

// Generators over the boundary ring of the module of well-defined value
// tuples: those annihilating every boundary relation under conjugation.
PolyMat boundary_functional_gens(const BoundaryModule& B);

enum class SearchStatus { found, not_found, inconclusive };

struct MobilityOptions {
  int degree = 4;         // total-degree cap (sum of |exponents|)
  u64 budget = 1u << 22;  // cap on linear-system cells
};

struct MobilityResult {
  SearchStatus status = SearchStatus::inconclusive;
  int degree = 0;  // cap the search ran with
  // (1-f) and (1-g) annihilate every charge class; the monomials of f lie
  // strictly inside the half-space, those of g strictly outside
  Poly f;
  Poly g;
  std::string detail;
};

// Exhaustive within the degree cap: not_found certifies that no pair with
// the required supports exists up to that total degree. Budget exhaustion
// alone yields inconclusive. Found pairs are verified against every charge
// generator by explicit multiplication.
MobilityResult mobility_annihilators(const StabilizerCode& code,
                                     const std::vector<i64>& normal,
                                     const MobilityOptions& opt = {});

struct VSurjectivity {
  SearchStatus status = SearchStatus::inconclusive;
  int window = 0;
  // one boundary functional per charge generator, mapping onto its class
  std::vector<PolyVec> witnesses;
  std::string detail;
};

// Decides whether every charge generator class is hit by a boundary
// functional whose coefficients live in a bounded monomial window; found is
// exact (witnesses are re-verified), not_found only exhausts the window.
VSurjectivity v_surjective_on_generators(const StabilizerCode& code,
                                         const BoundaryModule& B,
                                         const ChargeModule& charges,
                                         int window = 3,
                                         u64 budget = 1u << 22);

}  // namespace stabmod
