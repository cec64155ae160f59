#pragma once
// Clifford cellular automata: symplectic automorphisms of the ambient pauli
// module given by an exact matrix over the Laurent ring.  An automaton is
// compared to a stabilizer code through the slab algebra it generates near a
// wall: the window modules B^r (images of the lower half) and D^r (images of
// the complement), their direct-sum decomposition of the slab, the Witt
// stability of B^r in the window parameter r, and an explicit isomorphism
// between the automaton's boundary subquotient and the half-space boundary
// module of a code the automaton creates.  The wall is always the last
// coordinate axis; rebase the automaton's ring if another wall is wanted.
#include <string>
#include <vector>

#include "stabmod/boundary.hpp"
#include "stabmod/quasisym.hpp"
#include "stabmod/symplectic.hpp"

namespace stabmod {

struct QcaAutomaton {
  RingCtx ctx;
  int m = 0;         // half the ambient rank
  PolyMat cols;      // 2m columns: images of the standard basis vectors
  int spread = 0;    // largest |last exponent| over all matrix entries
  std::string name;
};

// validates the exact symplectic identity Omega(col_a, col_b) = Omega(e_a,
// e_b) for all pairs (which also forces invertibility) and records the spread
QcaAutomaton qca_automaton(RingCtx ctx, int m, PolyMat cols,
                           std::string name = "");

// ready-made automata: the identity, the one-layer shift along the last
// axis (every basis vector multiplied by x_d), and the rank-one shear
// (a, b) |-> (a + f b, b), which is symplectic exactly when f is hermitian
QcaAutomaton qca_identity(RingCtx ctx, int m);
QcaAutomaton qca_shift_last(RingCtx ctx, int m);
QcaAutomaton qca_shear(RingCtx ctx, const Poly& f);

// images of the phase-flip unit vectors (columns m .. 2m-1)
PolyMat qca_z_image(const QcaAutomaton& alpha);

// whether the automaton carries the phase-flip submodule exactly onto the
// stabilizer module of the code (span equality over the full ring)
bool qca_creates(const QcaAutomaton& alpha, const StabilizerCode& code);

struct QcaBoundaryAlgebra {
  RingCtx bulk_ctx;
  RingCtx ctx;  // boundary ring (one variable fewer)
  int m = 0;
  int r = 0;       // window parameter: images of layers <= r
  int spread = 0;  // copied from the automaton
  int width = 0;   // slab top layer, r + spread
  PolyMat b_gens;  // generators of the window module B^r, slab vectors
  PolyMat d_gens;  // generators of the complement module D^r
  PolyMat relations;          // syzygies of b_gens over the boundary ring
  std::vector<PolyVec> gram;  // layer-0 pairing values on b_gens
  bool spans = false;         // B^r + D^r is the whole slab
  bool orthogonal = false;    // the pairing vanishes between B^r and D^r
  bool independent = false;   // B^r and D^r meet trivially
  bool decomposition() const { return spans && orthogonal && independent; }
  int slab_rank() const { return 2 * m * (width + 1); }
};

// window modules of the automaton in the slab [0, r + spread]; requires
// r >= spread so the slab covers everything the window images can reach
QcaBoundaryAlgebra qca_boundary_algebra(const QcaAutomaton& alpha, int r);

struct QcaWittStability {
  bool stable = false;    // both window modules unimodular, difference split
  bool complete = true;   // subgroup searches finished within budget
  u64 order_r = 0;        // defect group orders at r and r + 1
  u64 order_r1 = 0;
  std::string detail;
};

// compares the algebras at r and r + 1 over a univariate boundary ring: both
// defect groups must vanish and the difference form must split exactly
QcaWittStability qca_witt_stability(const QcaAutomaton& alpha, int r,
                                    u64 budget = 1u << 20);

struct QcaBoundaryComparison {
  bool creates = false;      // the automaton creates the code
  bool well_defined = false; // the orthogonal window classes land in the
                             // half-space boundary module
  bool injective = false;    // kernel of the class map is exactly L cap B
  bool surjective = false;   // the classes generate the boundary module
  bool gram_match = false;   // pairing values agree through the class map
  bool factors_match = false;  // defect invariant factors agree (set on a
                               // univariate boundary ring, else true)
  bool isomorphism = false;    // all of the above
  int r = 0;                 // window parameter used: boundary width + spread
  std::vector<u64> code_factors;
  std::vector<u64> qca_factors;
  std::string detail;
};

// certifies that the subquotient (orthogonal complement of L cap B inside
// B^r) / (L cap B) is isomorphic, with its pairing, to the half-space
// boundary module of the code along the last axis; throws validation_error
// when the automaton does not create the code
QcaBoundaryComparison qca_vs_boundary_check(const QcaAutomaton& alpha,
                                            const StabilizerCode& code,
                                            const BoundaryOptions& opt = {});

}  // namespace stabmod
