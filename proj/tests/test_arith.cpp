#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>

#include "doctest.h"
#include "stabmod/arith.hpp"

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

TEST_CASE("residue arithmetic") {
  CHECK(add_mod(3, 5, 7) == 1);
  CHECK(sub_mod(2, 5, 7) == 4);
  CHECK(mul_mod(3, 5, 7) == 1);
  CHECK(mul_mod(1u << 31, 1u << 31, (1ull << 32)) == 0);
  CHECK(pow_mod(2, 10, 1000) == 24);
  CHECK(pow_mod(5, 0, 7) == 1);
}

TEST_CASE("egcd and modular inverse") {
  i64 x = 0, y = 0;
  CHECK(egcd(240, 46, x, y) == 2);
  CHECK(240 * x + 46 * y == 2);
  CHECK(inv_mod(3, 7) == 5);
  CHECK(!inv_mod(2, 4).has_value());
  CHECK(inv_mod(1, 2) == 1);
}

TEST_CASE("modulus factorization") {
  Modulus m12(12);
  REQUIRE(m12.factors.size() == 2);
  CHECK(m12.factors[0].p == 2);
  CHECK(m12.factors[0].r == 2);
  CHECK(m12.factors[0].q == 4);
  CHECK(m12.factors[1].p == 3);
  CHECK(m12.factors[1].q == 3);
  CHECK(!m12.is_prime());
  CHECK(!m12.is_prime_power());

  CHECK(Modulus(7).is_prime());
  CHECK(Modulus(9).is_prime_power());
  CHECK(!Modulus(9).is_prime());

  Modulus big(1ull << 32);
  REQUIRE(big.factors.size() == 1);
  CHECK(big.factors[0].p == 2);
  CHECK(big.factors[0].r == 32);

  CHECK(catch_kind([] { Modulus m(1); }) == ErrorKind::validation_error);
  CHECK(catch_kind([] { Modulus m((1ull << 32) + 2); }) ==
        ErrorKind::validation_error);
}

TEST_CASE("p-adic valuation clamps at r") {
  CHECK(padic_val(8, 2, 4) == 3);
  CHECK(padic_val(0, 2, 4) == 4);
  CHECK(padic_val(12, 2, 2) == 2);  // 12 mod 4 = 0
  CHECK(padic_val(6, 3, 2) == 1);
  CHECK(padic_val(5, 2, 3) == 0);
}

TEST_CASE("crt residue round trip") {
  Modulus m(12);
  for (u64 a = 0; a < 12; ++a) {
    auto parts = crt_split_residue(a, m);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == a % 4);
    CHECK(parts[1] == a % 3);
    CHECK(crt_combine_residue(parts, m) == a);
  }
}

static IMat diag2(i64 a, i64 b) { return {{a, 0}, {0, b}}; }

TEST_CASE("integer smith normal form") {
  auto check_snf = [](IMat A, std::vector<i64> want) {
    SmithInt s = smith_int(A);
    CHECK(s.diag == want);
    // U*A*V == diag embedded in the right shape
    IMat prod = imat_mul(imat_mul(s.U, A), s.V);
    for (size_t i = 0; i < prod.size(); ++i)
      for (size_t j = 0; j < prod[i].size(); ++j)
        CHECK(prod[i][j] == (i == j && i < s.diag.size() ? s.diag[i] : 0));
    // tracked inverses are exact
    IMat uu = imat_mul(s.U, s.Uinv);
    IMat vv = imat_mul(s.V, s.Vinv);
    for (size_t i = 0; i < uu.size(); ++i)
      for (size_t j = 0; j < uu.size(); ++j) CHECK(uu[i][j] == (i == j ? 1 : 0));
    for (size_t i = 0; i < vv.size(); ++i)
      for (size_t j = 0; j < vv.size(); ++j) CHECK(vv[i][j] == (i == j ? 1 : 0));
  };
  check_snf({{1, 2}, {3, 4}}, {1, 2});
  check_snf(diag2(2, 3), {1, 6});
  check_snf({{2, 4}, {4, 8}}, {2, 0});
  check_snf({{0, 0}, {0, 0}}, {0, 0});
  check_snf({{6, 4, 2}}, {2});
  check_snf({{4, 0}, {0, 6}, {0, 0}}, {2, 12});
}

TEST_CASE("hermite form of column lattices") {
  IMat A = {{2, 1}, {0, 2}};  // rows; columns are (2,0) and (1,2)
  IMat H = hnf_cols(A);
  REQUIRE(H.size() == 2);
  REQUIRE(H[0].size() == 2);
  // determinant preserved up to sign
  CHECK(std::abs(det_int(H)) == std::abs(det_int(A)));
  // lattice membership via reduction: columns of A reduce to zero
  for (int j = 0; j < 2; ++j) {
    std::vector<i64> v = {A[0][j], A[1][j]};
    auto rep = lattice_reduce(H, v);
    CHECK(rep == std::vector<i64>{0, 0});
  }
  std::vector<i64> off = {1, 0};
  CHECK(lattice_reduce(H, off) != std::vector<i64>{0, 0});
}

TEST_CASE("determinants") {
  CHECK(det_int({{2, 1}, {0, 2}}) == 4);
  CHECK(det_int({{1, 2}, {3, 4}}) == -2);
  CHECK(det_int({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}) == 30);
  CHECK(det_int({{1, 1}, {1, 1}}) == 0);
}

TEST_CASE("coset representatives") {
  auto reps = coset_reps(diag2(2, 2));
  REQUIRE(reps.size() == 4);
  CHECK(reps[0] == std::vector<i64>{0, 0});
  CHECK(reps[1] == std::vector<i64>{0, 1});
  CHECK(reps[2] == std::vector<i64>{1, 0});
  CHECK(reps[3] == std::vector<i64>{1, 1});

  auto sheared = coset_reps({{2, 1}, {0, 2}});
  CHECK(sheared.size() == 4);
  // representatives are pairwise distinct and reduced
  IMat H = hnf_cols({{2, 1}, {0, 2}});
  for (const auto& r : sheared) CHECK(lattice_reduce(H, r) == r);
}

TEST_CASE("lattice reduction with multiples") {
  IMat H = hnf_cols(diag2(2, 2));
  std::vector<i64> mult;
  auto rep = lattice_reduce(H, {3, 5}, &mult);
  CHECK(rep == std::vector<i64>{1, 1});
  // v = H*mult + rep
  for (int i = 0; i < 2; ++i) {
    i64 back = rep[i];
    for (int j = 0; j < 2; ++j) back += H[i][j] * mult[j];
    CHECK(back == (i == 0 ? 3 : 5));
  }
}

TEST_CASE("fnv1a64 known vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("ab") != fnv1a64("ba"));
}
