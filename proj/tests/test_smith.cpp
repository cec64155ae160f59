#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "stabmod/smith.hpp"

using namespace stabmod;

namespace {

const RingCtx Z2{2, 1};

Poly P(RingCtx ctx, const char* s) { return parse_poly(ctx, s); }

// U * A * V == diag padded to A's shape
void verify_unimodular_factorization(RingCtx ctx, const PolyRows& A,
                                     const SmithPolyResult& s) {
  PolyRows prod = poly_rows_mul(poly_rows_mul(s.U, A), s.V);
  for (size_t i = 0; i < prod.size(); ++i)
    for (size_t j = 0; j < prod[i].size(); ++j) {
      Poly want = (i == j && i < s.diag.size()) ? s.diag[i] : Poly::zero(ctx);
      CHECK(prod[i][j] == want);
    }
}

bool divides_laurent(const Poly& a, const Poly& b) {
  if (b.is_zero()) return true;
  Poly q, r;
  laurent_divmod(b, a, q, r);
  return r.is_zero();
}

}  // namespace

TEST_CASE("laurent division with remainder") {
  Poly f = P(Z2, "1+x1^3");
  Poly g = P(Z2, "1+x1");
  Poly q, r;
  laurent_divmod(f, g, q, r);
  CHECK(r.is_zero());
  CHECK(q * g == f);

  Poly f2 = P(Z2, "1+x1+x1^3");
  Poly g2 = P(Z2, "1+x1^2");
  laurent_divmod(f2, g2, q, r);
  CHECK(q * g2 + r == f2);
  CHECK(r == P(Z2, "1"));

  // negative exponents are fine: x^-2 + 1 divided by 1 + x
  laurent_divmod(P(Z2, "x1^-2+1"), g, q, r);
  CHECK(q * g + r == P(Z2, "x1^-2+1"));
  CHECK(r.is_zero());  // x^-2(1 + x^2) = x^-2 (1+x)^2
}

TEST_CASE("laurent gcd and normalization") {
  CHECK(laurent_gcd(P(Z2, "1+x1^2"), P(Z2, "1+x1^3")) == P(Z2, "1+x1"));
  CHECK(laurent_gcd(P(Z2, "1+x1"), Poly::zero(Z2)) == P(Z2, "1+x1"));
  CHECK(normalize_univariate(P(Z2, "x1^-1+x1")) == P(Z2, "1+x1^2"));
  RingCtx z3{3, 1};
  // leading coefficient is made monic
  CHECK(normalize_univariate(P(z3, "2*x1^2+2*x1^-1")) == P(z3, "1+x1^3"));
}

TEST_CASE("smith form of the hyperbolic pairing matrix") {
  PolyRows A = {{P(Z2, "0"), P(Z2, "1+x1^-1")}, {P(Z2, "1+x1"), P(Z2, "0")}};
  SmithPolyResult s = smith_poly(Z2, A);
  REQUIRE(s.rank == 2);
  CHECK(s.diag[0] == P(Z2, "1+x1"));
  CHECK(s.diag[1] == P(Z2, "1+x1"));
  verify_unimodular_factorization(Z2, A, s);
}

TEST_CASE("smith form with a unit entry") {
  PolyRows A = {{P(Z2, "1+x1"), P(Z2, "1")}, {P(Z2, "0"), P(Z2, "1+x1")}};
  SmithPolyResult s = smith_poly(Z2, A);
  REQUIRE(s.rank == 2);
  CHECK(s.diag[0] == P(Z2, "1"));
  CHECK(s.diag[1] == P(Z2, "1+x1^2"));
  verify_unimodular_factorization(Z2, A, s);
}

TEST_CASE("smith form keeps the divisibility chain") {
  RingCtx z3{3, 1};
  PolyRows A = {{P(z3, "2+x1"), P(z3, "0")},
                {P(z3, "0"), P(z3, "2+2*x1+2*x1^2")}};
  SmithPolyResult s = smith_poly(z3, A);
  REQUIRE(s.rank == 2);
  for (int i = 0; i + 1 < s.rank; ++i)
    CHECK(divides_laurent(s.diag[i], s.diag[i + 1]));
  verify_unimodular_factorization(z3, A, s);

  // mixed entries force actual elimination work
  PolyRows B = {{P(Z2, "1+x1"), P(Z2, "1+x1")},
                {P(Z2, "1+x1"), P(Z2, "1+x1+x1^2+x1^3")}};
  SmithPolyResult sb = smith_poly(Z2, B);
  REQUIRE(sb.rank == 2);
  CHECK(sb.diag[0] == P(Z2, "1+x1"));
  for (int i = 0; i + 1 < sb.rank; ++i)
    CHECK(divides_laurent(sb.diag[i], sb.diag[i + 1]));
  verify_unimodular_factorization(Z2, B, sb);
}

TEST_CASE("smith form of singular and rectangular matrices") {
  PolyRows A = {{P(Z2, "1+x1"), P(Z2, "1+x1")}, {P(Z2, "1+x1"), P(Z2, "1+x1")}};
  SmithPolyResult s = smith_poly(Z2, A);
  CHECK(s.rank == 1);
  CHECK(s.diag[0] == P(Z2, "1+x1"));
  verify_unimodular_factorization(Z2, A, s);

  PolyRows R1 = {{P(Z2, "1+x1"), P(Z2, "1+x1^2"), P(Z2, "0")}};
  SmithPolyResult sr = smith_poly(Z2, R1);
  CHECK(sr.rank == 1);
  CHECK(sr.diag[0] == P(Z2, "1+x1"));
  verify_unimodular_factorization(Z2, R1, sr);
}

TEST_CASE("smith form requires a prime field and one variable") {
  RingCtx z4{4, 1};
  CHECK_THROWS_AS(smith_poly(z4, {{P(z4, "2")}}), Error);
  RingCtx z2d2{2, 2};
  CHECK_THROWS_AS(smith_poly(z2d2, {{P(z2d2, "1+x1")}}), Error);
}
