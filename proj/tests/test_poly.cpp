#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>

#include "doctest.h"
#include "stabmod/poly.hpp"

using namespace stabmod;

static ErrorKind catch_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a stabmod::Error");
  return ErrorKind::internal_error;
}

TEST_CASE("characteristic-2 binomials collapse") {
  RingCtx z2{2, 1};
  Poly one = Poly::constant(z2, 1);
  Poly x = Poly::variable(z2, 1);
  CHECK((one + x) * (one + x) == parse_poly(z2, "1+x1^2"));
  Poly xb = Poly::variable(z2, 1, -1);
  CHECK((one + xb) * (one + x) == parse_poly(z2, "x1^-1+x1"));
}

TEST_CASE("involution negates exponents and fixes coefficients") {
  RingCtx ctx{4, 3};
  Poly p = parse_poly(ctx, "x1+2*x2^-1*x3");
  CHECK(p.involuted() == parse_poly(ctx, "x1^-1+2*x2*x3^-1"));
  CHECK(p.involuted().involuted() == p);
}

TEST_CASE("crt split of a composite-modulus polynomial") {
  RingCtx z6{6, 1};
  Modulus m(6);
  Poly p = parse_poly(z6, "3+4*x1");
  auto parts = p.crt_split(m);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == parse_poly(RingCtx{2, 1}, "1"));
  CHECK(parts[1] == parse_poly(RingCtx{3, 1}, "x1"));
  CHECK(Poly::crt_combine(parts, m, 1) == p);
}

TEST_CASE("support box") {
  RingCtx z2{2, 1};
  auto [lo, hi] = parse_poly(z2, "x1^-1+x1").support_box();
  CHECK(lo == Exp{-1});
  CHECK(hi == Exp{1});
  CHECK(catch_kind([&] { Poly::zero(z2).support_box(); }) ==
        ErrorKind::validation_error);

  RingCtx z4{4, 2};
  auto [lo2, hi2] = parse_poly(z4, "x1^2*x2^-3+3*x1^-1").support_box();
  CHECK(lo2 == Exp{-1, -3});
  CHECK(hi2 == Exp{2, 0});
}

TEST_CASE("canonical printing uses descending graded-lex order") {
  RingCtx z2{2, 2};
  CHECK(parse_poly(z2, "x1^-1*x2^-1+1").str() == "1 + 1*x1^-1*x2^-1");
  RingCtx z2a{2, 1};
  CHECK(parse_poly(z2a, "x1^-1+x1").str() == "1*x1^1 + 1*x1^-1");
  CHECK(parse_poly(z2a, "0").str() == "0");
  RingCtx z4{4, 1};
  CHECK(parse_poly(z4, "3").str() == "3");
  CHECK(parse_poly(z4, "1+x1+x1^2").str() == "1*x1^2 + 1*x1^1 + 1");
  // same degree: lexicographically larger exponent vector first
  CHECK(parse_poly(z2, "x2+x1").str() == "1*x1^1 + 1*x2^1");
}

TEST_CASE("parser accepts signs, bare factors, negative powers") {
  RingCtx z4{4, 2};
  CHECK(parse_poly(z4, "1-x1") == parse_poly(z4, "1+3*x1"));
  CHECK(parse_poly(z4, "-x1") == parse_poly(z4, "3*x1"));
  CHECK(parse_poly(z4, "2*x1^2*x2^-3") ==
        Poly::monomial(z4, Exp{2, -3}, 2));
  CHECK(parse_poly(z4, "x2") == Poly::variable(z4, 2));
  CHECK(parse_poly(z4, "5") == Poly::constant(z4, 1));
  // round trip through the canonical printer
  Poly p = parse_poly(z4, "3*x1^-2*x2+2+x1");
  CHECK(parse_poly(z4, p.str()) == p);
}

TEST_CASE("parse errors carry positions") {
  RingCtx z2{2, 2};
  CHECK(catch_kind([&] { parse_poly(z2, ""); }) == ErrorKind::parse_error);
  CHECK(catch_kind([&] { parse_poly(z2, "1++x1"); }) == ErrorKind::parse_error);
  CHECK(catch_kind([&] { parse_poly(z2, "x0"); }) == ErrorKind::parse_error);
  CHECK(catch_kind([&] { parse_poly(z2, "x3"); }) == ErrorKind::parse_error);
  CHECK(catch_kind([&] { parse_poly(z2, "x1^"); }) == ErrorKind::parse_error);
  CHECK(catch_kind([&] { parse_poly(z2, "x1&x2"); }) == ErrorKind::parse_error);
}

TEST_CASE("ring context mismatches are rejected") {
  Poly a = parse_poly(RingCtx{2, 1}, "1+x1");
  Poly b = parse_poly(RingCtx{4, 1}, "1+x1");
  CHECK(catch_kind([&] { (void)(a + b); }) == ErrorKind::ring_context_mismatch);
  CHECK(catch_kind([&] { (void)(a * b); }) == ErrorKind::ring_context_mismatch);
}

TEST_CASE("modulus change reduces coefficients") {
  RingCtx z6{6, 1};
  Poly p = parse_poly(z6, "3+4*x1");
  CHECK(p.with_modulus(2) == parse_poly(RingCtx{2, 1}, "1"));
  CHECK(p.with_modulus(3) == parse_poly(RingCtx{3, 1}, "x1"));
}

TEST_CASE("vector helpers") {
  RingCtx z2{2, 1};
  PolyVec a = pv_zero(z2, 2);
  a[0] = parse_poly(z2, "1+x1");
  a[1] = parse_poly(z2, "x1");
  PolyVec b = pv_involute(a);
  CHECK(b[0] == parse_poly(z2, "1+x1^-1"));
  CHECK(b[1] == parse_poly(z2, "x1^-1"));
  CHECK(pv_is_zero(pv_sub(a, a)));
  PolyVec s = pv_shift(a, Exp{2});
  CHECK(s[1] == parse_poly(z2, "x1^3"));
  auto [lo, hi] = pv_support_box(a);
  CHECK(lo == Exp{0});
  CHECK(hi == Exp{1});

  PolyMat cols = {a, b};
  PolyVec coords = {parse_poly(z2, "x1"), Poly::zero(z2)};
  PolyVec r = mat_apply(cols, coords);
  CHECK(r[0] == parse_poly(z2, "x1+x1^2"));
  CHECK(r[1] == parse_poly(z2, "x1^2"));
}
