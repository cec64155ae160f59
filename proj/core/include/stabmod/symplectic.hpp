#pragma once
// Symplectic module formalism for translation-invariant Pauli stabilizer
// codes: P = R^{2m} over R = Z_n[x_1^±..x_d^±] with the anti-hermitian form
//   Omega(p, p') = sum_j (conj(p_{m+j}) p'_j - conj(p_j) p'_{m+j}),
// codes as isotropic submodules L = span(sigma columns), Lagrangian
// certificates, charge modules Q_L = L*/im(P), finite-torus diagnostics, and
// coarse-graining (restriction of scalars to a finite-index sublattice).
#include <map>
#include <optional>
#include <string>

#include "stabmod/laurent_gb.hpp"
#include "stabmod/poly.hpp"

namespace stabmod {

struct StabilizerCode {
  RingCtx ctx;     // Z_n, d variables
  int m = 0;       // sites per unit cell; P = R^{2m}
  PolyMat sigma;   // g generator columns, each of length 2m
  std::string name;

  int g() const { return static_cast<int>(sigma.size()); }
  void validate_shapes() const;
  // coefficient reduction to one prime-power CRT component
  StabilizerCode component(const PrimePower& pp) const;
  // canonical text serialization (feeds report hashing and determinism)
  std::string canonical_serialization() const;
};

// Omega(p, q) as a polynomial, and its constant term omega(p, q)
Poly omega_form(int m, const PolyVec& p, const PolyVec& q);
u64 omega_scalar(int m, const PolyVec& p, const PolyVec& q);

// all pairwise Omega(sigma_i, sigma_j) = 0 (includes diagonal); on failure
// names the offending pair in the error when `throwing`
bool is_isotropic(const StabilizerCode& code, bool throwing = false);

// generators of L^perp = {p : Omega(sigma_i, p) = 0 for all i}
// (requires a GB-supported ring; prime-power modulus)
PolyMat symplectic_complement(const StabilizerCode& code);

enum class CertTier { exact, torus_verified, unsupported };

struct LagrangianCertificate {
  bool isotropic = false;
  bool lagrangian = false;      // meaning depends on tier
  CertTier tier = CertTier::unsupported;
  std::string detail;
};

// two-tier certificate: exact (complement containment via Groebner) where the
// ring is supported — CRT components all exact — otherwise a finite-torus
// battery (necessary conditions only, reported as such)
LagrangianCertificate is_lagrangian(const StabilizerCode& code,
                                    int torus_budget = 3);

// ---------------------------------------------------------------------------
// charge module Q_L = L* / im(P -> L*)
// ---------------------------------------------------------------------------
struct ChargeModule {
  RingCtx ctx;          // prime-power component ring
  int gen_count = 0;    // rank of the presentation (generators of L*)
  PolyMat lstar_gens;   // generators of L* inside R^g (dual coordinates)
  PolyMat image_cols;   // image of P in the same coordinates (2m columns)
  PolyMat relations;    // presentation relations in R^{gen_count}
  bool finite = false;
  u64 order = 0;
  std::vector<u64> invariant_factors;
  FiniteQuotient group;  // valid when finite

  // class of a dual functional h in R^g; zero iff h lies in im(P -> L*)
  bool class_is_zero(const PolyVec& h) const;
  std::shared_ptr<GBModule> image_gb;  // membership accelerator
};

// prime-power modulus only; unsupported rings throw unsupported_ring
ChargeModule charge_module(const StabilizerCode& code);

// polynomial-valued syndrome of an ambient vector: the pairing with every
// stabilizer generator, (Omega(sigma_i, p))_i; its charge class is zero
PolyVec syndrome_of(const StabilizerCode& code, const PolyVec& p);

// the Z_n-dual group of the charge module; same order and invariant factors,
// each dual generator realized as an evaluation functional on charge tuples
struct DetectorGroup {
  RingCtx ctx;
  int gen_count = 0;        // stabilizer generator count (charge tuple length)
  bool ql_finite = false;   // an infinite charge module is reported in-band
  u64 order = 0;
  std::vector<u64> factors;
  std::vector<PolyVec> charge_reps;  // dualized charge generators
  PolyMat lstar_gens;                // functional generators of the charges
  FiniteQuotient group;              // canonical charge coordinates

  // detector t on the charge class of the value tuple h:
  // (n / factors[t]) * coords(h)[t] mod n; requires ql_finite
  u64 eval(int t, const PolyVec& h) const;
};
DetectorGroup detectors_D0(const StabilizerCode& code);

// ---------------------------------------------------------------------------
// finite-torus diagnostics
// ---------------------------------------------------------------------------

// exact group sizes as products over primes (avoids overflow)
struct FactoredCount {
  std::map<u64, long> exps;  // prime -> exponent
  void mul_prime(u64 p, long e) { if (e) exps[p] += e; }
  bool fits_u64() const;
  u64 as_u64() const;  // throws if too large
  std::string str() const;
  bool operator==(const FactoredCount&) const = default;
};

struct TorusDiagnostics {
  std::vector<int> sides;       // torus side lengths T_1..T_d
  FactoredCount group_size;     // |L_T|
  FactoredCount stabilized_dim; // n^{m Pi T} / |L_T|
  FactoredCount discrepancy;    // |L_T^perp / L_T| = n^{2 m Pi T} / |L_T|^2
};

TorusDiagnostics torus_diagnostics(const StabilizerCode& code,
                                   const std::vector<int>& sides);

// is the full-ring vector in the torus truncation of L? (oracle helper:
// exact finite linear algebra over Z_n)
bool torus_membership(const StabilizerCode& code, const std::vector<int>& sides,
                      const PolyVec& v);

// ---------------------------------------------------------------------------
// coarse-graining: restriction of scalars along Lambda Z^d <= Z^d
// ---------------------------------------------------------------------------

struct CoarseGrainResult {
  StabilizerCode code;                      // m' = m * |det Lambda|
  std::vector<std::vector<i64>> cosets;     // site-block labels, sorted
};

CoarseGrainResult coarse_grain(const StabilizerCode& code, const IMat& lambda);

// ---------------------------------------------------------------------------
// split check: does P -> P/L split (equivalently, is the code a stacking of
// a trivial code with an invertible part)?
// ---------------------------------------------------------------------------
struct SplitCheckResult {
  bool split = false;           // retraction sigma*T*sigma = sigma solvable
  bool ql_zero = false;         // charge module trivial
  bool l_free = false;
  bool l_free_certified = true; // false when only a sufficient test applied
  PolyMat retraction;           // T columns when split (g x 2m unknowns)
};

SplitCheckResult split_check(const StabilizerCode& code);

}  // namespace stabmod
