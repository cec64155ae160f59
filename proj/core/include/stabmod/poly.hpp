#pragma once
// Sparse Laurent polynomials over Z_n in d variables x_1..x_d with the
// coefficient-fixing involution x^lambda -> x^{-lambda}. Terms are kept in a
// map ordered by descending graded-lexicographic order (total degree first,
// lexicographic tie-break), which makes equality, hashing and printing
// canonical and feeds deterministic Groebner runs.
#include <map>
#include <string>
#include <vector>

#include "stabmod/arith.hpp"

namespace stabmod {

// exponent vector = lattice point in Z^d
using Exp = std::vector<int>;

int total_degree(const Exp& e);

// strict total order: higher total degree first, then lexicographically
// larger exponent vector first
struct ExpGrlexDesc {
  bool operator()(const Exp& a, const Exp& b) const;
};

// ring context Z_n[x_1^±, ..., x_d^±]
struct RingCtx {
  u64 n = 0;
  int d = 0;
  bool operator==(const RingCtx&) const = default;
};

class Poly {
 public:
  Poly() = default;
  Poly(RingCtx ctx) : ctx_(ctx) {}

  static Poly zero(RingCtx ctx) { return Poly(ctx); }
  static Poly constant(RingCtx ctx, u64 c);
  static Poly monomial(RingCtx ctx, const Exp& e, u64 c);
  static Poly variable(RingCtx ctx, int var_index_1based, int power = 1);

  const RingCtx& ctx() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  u64 coeff(const Exp& e) const;
  u64 constant_term() const;
  size_t term_count() const { return terms_.size(); }
  const std::map<Exp, u64, ExpGrlexDesc>& terms() const { return terms_; }

  void set_coeff(const Exp& e, u64 c);  // reduces mod n, erases zeros

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const = default;

  Poly scaled(u64 c) const;                     // c * this
  Poly shifted(const Exp& e) const;             // x^e * this
  Poly involuted() const;                       // x^lambda -> x^{-lambda}
  Poly with_modulus(u64 new_n) const;           // reduce coefficients mod new_n

  // componentwise exponent bounding box; throws on zero polynomial
  std::pair<Exp, Exp> support_box() const;

  // canonical text form: terms in storage order, `c` for the constant term,
  // `c*x1^e1*...` otherwise, joined by " + "; zero prints "0"
  std::string str() const;

  // CRT decomposition along the prime-power factors of n (and back)
  std::vector<Poly> crt_split(const Modulus& m) const;
  static Poly crt_combine(const std::vector<Poly>& parts, const Modulus& m,
                          int d);

 private:
  RingCtx ctx_;
  std::map<Exp, u64, ExpGrlexDesc> terms_;
  void check_ctx(const Poly& o) const;
};

// parse the text syntax: terms `c*x1^e1*...*xd^ed` joined by '+' or '-';
// bare variables (`x2`, `x1^-3`) and bare constants allowed; whitespace free.
Poly parse_poly(RingCtx ctx, const std::string& text);

// vectors and matrices over the ring, stored as columns
using PolyVec = std::vector<Poly>;
using PolyMat = std::vector<PolyVec>;  // list of columns

PolyVec pv_zero(RingCtx ctx, int k);
PolyVec pv_add(const PolyVec& a, const PolyVec& b);
PolyVec pv_sub(const PolyVec& a, const PolyVec& b);
PolyVec pv_scale(const PolyVec& a, const Poly& c);
PolyVec pv_shift(const PolyVec& a, const Exp& e);
PolyVec pv_involute(const PolyVec& a);
bool pv_is_zero(const PolyVec& a);
std::pair<Exp, Exp> pv_support_box(const PolyVec& a);  // throws if all zero

// matrix * vector (columns convention: result_i = sum_j A[j][i] * v[j])
PolyVec mat_apply(const PolyMat& cols, const PolyVec& coords);

}  // namespace stabmod
