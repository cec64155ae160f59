#pragma once
// Exact integer and residue arithmetic: Z_n helpers, prime-power
// factorization of moduli, p-adic valuations, CRT, and integer-matrix
// normal forms (Hermite / Smith) used to extract finite abelian group
// structure and sublattice data.
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabmod {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Error taxonomy for the whole library. `unsupported_ring` marks the
// honest-refusal paths (coefficient ring outside the exact-computation
// matrix); the CLI maps it to its own exit code.
enum class ErrorKind {
  ring_context_mismatch,
  unsupported_ring,
  parse_error,
  validation_error,
  budget_exhausted,
  internal_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

u64 add_mod(u64 a, u64 b, u64 n);
u64 sub_mod(u64 a, u64 b, u64 n);
u64 mul_mod(u64 a, u64 b, u64 n);
u64 pow_mod(u64 a, u64 e, u64 n);

// extended gcd: g = gcd(a,b) >= 0 with a*x + b*y = g
i64 egcd(i64 a, i64 b, i64& x, i64& y);
std::optional<u64> inv_mod(u64 a, u64 n);

struct PrimePower {
  u64 p = 0;
  unsigned r = 0;
  u64 q = 0;  // p^r
};

// Modulus n >= 2 (n <= 2^32) with its prime-power factorization, primes
// ascending.
struct Modulus {
  u64 n = 0;
  std::vector<PrimePower> factors;
  Modulus() = default;
  explicit Modulus(u64 n_);
  bool is_prime() const { return factors.size() == 1 && factors[0].r == 1; }
  bool is_prime_power() const { return factors.size() == 1; }
};

// p-adic valuation of a mod p^r, clamped so val(0) = r.
unsigned padic_val(u64 a, u64 p, unsigned r);

// CRT between Z_n and the product of its prime-power components.
std::vector<u64> crt_split_residue(u64 a, const Modulus& m);
u64 crt_combine_residue(const std::vector<u64>& residues, const Modulus& m);

// ---------- dense integer matrices (row-major) ----------
using IMat = std::vector<std::vector<i64>>;

IMat imat_identity(int n);
IMat imat_mul(const IMat& a, const IMat& b);

// Smith normal form U*A*V = D. diag has min(rows, cols) entries, nonnegative,
// each dividing the next. U, V unimodular; inverses tracked exactly.
struct SmithInt {
  std::vector<i64> diag;
  IMat U, Uinv, V, Vinv;
};
SmithInt smith_int(IMat A);

// Hermite normal form of the column lattice of A: returns a canonical basis
// (as columns, zero columns dropped, pivots positive, entries right of a pivot
// reduced).
IMat hnf_cols(IMat A);

// exact determinant via fraction-free elimination
i64 det_int(IMat A);

// coset representatives of Z^d / (Lambda Z^d) for a full-rank integer matrix
// Lambda (d x d, |det| > 0). Exactly |det Lambda| representatives, reduced
// into the HNF fundamental domain, in lexicographic order.
std::vector<std::vector<i64>> coset_reps(const IMat& lambda);

// reduce an integer vector v into the coset-representative normal form modulo
// the column lattice of (HNF) basis H; also returns the quotient multiples.
std::vector<i64> lattice_reduce(const IMat& hnf, const std::vector<i64>& v,
                                std::vector<i64>* multiples = nullptr);

// FNV-1a 64-bit hash of a byte string (stable input fingerprints in reports)
u64 fnv1a64(const std::string& bytes);

}  // namespace stabmod
