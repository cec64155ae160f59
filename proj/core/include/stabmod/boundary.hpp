#pragma once
// Boundary operator module of a lattice half-space: after rebasing so the
// half-space is {last exponent >= 0}, the module of slab vectors orthogonal
// (under the scalar pairing, against every nonnegative stabilizer translate)
// modulo the translates themselves. Carries the layer-0 anti-hermitian form,
// a primary/secondary generator split, a certified-width loop, the truncation
// map from the bulk code, and the opposite-half-space pairing.
#include <optional>
#include <utility>
#include <vector>

#include "stabmod/halfspace.hpp"
#include "stabmod/quasisym.hpp"
#include "stabmod/symplectic.hpp"

namespace stabmod {

struct BoundaryOptions {
  int max_width = 12;         // widest slab tried before reporting partial data
  int max_strip_window = 12;  // widest translate window in the strip search
};

struct BoundaryModule {
  RingCtx bulk_ctx;           // rebased bulk ring (d variables)
  RingCtx ctx;                // boundary ring (d-1 variables)
  HalfSpaceBasis basis;
  StabilizerCode normalized;  // rebased code with generators shifted to height >= 0
  std::vector<int> shifts;    // normalized sigma_i = x_d^{shifts[i]} * rebased sigma_i
  std::vector<int> heights;   // top layer H_i of each normalized generator
  int h_max = 0;
  int m = 0;

  int width = 0;              // slab height M of the stored presentation
  bool width_stable = false;  // output unchanged from width M to M+1
  int strip_window = 0;
  bool strip_stable = false;

  // elements of the code supported in layers [0, h_max-1] (slab vectors)
  PolyMat strip;
  // translates + strip shifts spanning the code's half-space part in the slab
  PolyMat inner;

  std::vector<PolyVec> generators;  // slab vectors, length 2m(width+1)
  std::vector<bool> primary_flags;  // truncated-translate generators
  std::vector<std::pair<int, int>> primary_index;  // (stabilizer i, depth k)
  PolyMat relations;                // presentation of the full module
  PolyMat primary_relations;        // presentation of the primary submodule
  std::vector<PolyVec> gram;        // layer-0 pairing on the generators
  bool has_secondaries = false;

  int slab_rank() const { return 2 * m * (width + 1); }
};

BoundaryModule boundary_module(const StabilizerCode& code,
                               const std::vector<i64>& normal,
                               const BoundaryOptions& opt = {});

// the construction on a code that is already in standard coordinates
// (half-space = {last exponent >= 0})
BoundaryModule boundary_module_std(const StabilizerCode& rebased,
                                   const BoundaryOptions& opt = {});

// layer-0 pairing of two slab vectors over the boundary ring
Poly omega_boundary(int m, const PolyVec& a, const PolyVec& b);

// generators of the inside-the-slab stabilizer submodule at the given width:
// all translates of the shifted stabilizers and of the strip generators whose
// support fits in layers [0, width]
PolyMat slab_translates(const BoundaryModule& B, int width);

// coordinates of a slab vector's class over the stored generators; nullopt
// when the vector is not in the module's span.  Slabs wider than the stored
// width are reduced against translate sets at their own width.
std::optional<PolyVec> boundary_class(const BoundaryModule& B,
                                      const PolyVec& slab);

// class of the nonnegative truncation of sum_i coeffs_i sigma_i, as
// coordinates over the stored generators (coeffs in the original ring)
PolyVec q_map(const BoundaryModule& B, const PolyVec& coeffs);

// the boundary module as a one-variable quasi-symplectic module (requires a
// univariate boundary ring, i.e. a two-dimensional bulk)
QuasiSymplectic1D boundary_qs(const BoundaryModule& B, bool primary_only);

// Gram-form value between two classes given by generator coordinates
Poly qs_pair(const QuasiSymplectic1D& P, const PolyVec& u, const PolyVec& v);

// The straddling stabilizer translates embed diagonally into the orthogonal
// sum of the two opposite boundary modules; their span is Lagrangian there.
struct OppositeCheck {
  bool isotropic = false;
  bool lagrangian = false;
  CertTier tier = CertTier::unsupported;
  BoundaryModule plus;
  BoundaryModule minus;  // computed on the reflected code, same boundary ring
};
OppositeCheck opposite_pair_check(const StabilizerCode& code,
                                  const std::vector<i64>& normal,
                                  const BoundaryOptions& opt = {});

}  // namespace stabmod
