#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "stabmod/halfspace.hpp"
#include "stabmod/zoo.hpp"

using namespace stabmod;

namespace {

ErrorKind catch_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  REQUIRE(false);
  return ErrorKind::internal_error;
}

void check_basis(const std::vector<i64>& v, const std::vector<i64>& expect) {
  HalfSpaceBasis b = complete_basis(v);
  CHECK(b.normal == expect);
  const int d = static_cast<int>(v.size());
  CHECK(imat_mul(b.to_new, b.to_old) == imat_identity(d));
  CHECK(imat_mul(b.to_old, b.to_new) == imat_identity(d));
  CHECK(b.to_new[d - 1] == b.normal);
  i64 det = det_int(b.to_new);
  CHECK((det == 1 || det == -1));
}

}  // namespace

TEST_CASE("basis completion on coordinate and skew normals") {
  check_basis({0, 1}, {0, 1});
  check_basis({1, 0}, {1, 0});
  check_basis({1, 1}, {1, 1});
  check_basis({2, 4}, {1, 2});
  check_basis({0, 0, 1}, {0, 0, 1});
  check_basis({1, 1, 1}, {1, 1, 1});
  check_basis({-3, 6, 2}, {-3, 6, 2});
  check_basis({4}, {1});
  check_basis({-2}, {-1});
}

TEST_CASE("zero or empty normals are rejected") {
  CHECK(catch_kind([] { complete_basis({0, 0}); }) ==
        ErrorKind::validation_error);
  CHECK(catch_kind([] { complete_basis({}); }) == ErrorKind::validation_error);
}

TEST_CASE("exponent substitution is a ring automorphism") {
  RingCtx ctx{2, 2};
  Poly f = parse_poly(ctx, "1+x1");
  IMat swap = {{0, 1}, {1, 0}};
  CHECK(poly_exp_transform(f, swap) == parse_poly(ctx, "1+x2"));
  Poly g = parse_poly(ctx, "x1*x2^-1+x2");
  IMat shear = {{1, 1}, {0, 1}};
  // multiplicativity and involution compatibility
  CHECK(poly_exp_transform(f * g, shear) ==
        poly_exp_transform(f, shear) * poly_exp_transform(g, shear));
  CHECK(poly_exp_transform(f.involuted(), shear) ==
        poly_exp_transform(f, shear).involuted());
}

TEST_CASE("rebasing preserves isotropy and the pairing") {
  StabilizerCode toric = zoo_code("toric");
  HalfSpaceBasis basis;
  StabilizerCode rebased = rebase_halfspace(toric, {1, 1}, &basis);
  CHECK(is_isotropic(rebased));
  // Omega commutes with the substitution
  for (int i = 0; i < toric.g(); ++i)
    for (int j = 0; j < toric.g(); ++j) {
      Poly before = omega_form(toric.m, toric.sigma[i], toric.sigma[j]);
      Poly after = omega_form(toric.m, rebased.sigma[i], rebased.sigma[j]);
      CHECK(after == poly_exp_transform(before, basis.to_new));
    }
}

TEST_CASE("rebasing preserves the charge module") {
  StabilizerCode wen = zoo_code("wen");
  StabilizerCode rebased = rebase_halfspace(wen, {1, 1});
  ChargeModule a = charge_module(wen);
  ChargeModule b = charge_module(rebased);
  REQUIRE(a.finite);
  REQUIRE(b.finite);
  CHECK(a.order == b.order);
  CHECK(a.invariant_factors == b.invariant_factors);
}

TEST_CASE("normal length must match the variable count") {
  StabilizerCode toric = zoo_code("toric");
  CHECK(catch_kind([&] { rebase_halfspace(toric, {1, 0, 0}); }) ==
        ErrorKind::validation_error);
}
