#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "stabmod/engine.hpp"

using namespace stabmod;
using namespace stabmod::eng;

static Term t(int comp, std::vector<int> e, u64 c) { return Term{{comp, std::move(e)}, c}; }

TEST_CASE("monomial order: lower component dominates, graded-lex within") {
  CHECK(mono_cmp({0, {0}}, {1, {5}}) > 0);
  CHECK(mono_cmp({1, {5}}, {0, {0}}) < 0);
  CHECK(mono_cmp({0, {2, 0}}, {0, {1, 1}}) > 0);  // same degree, lex
  CHECK(mono_cmp({0, {1, 1}}, {0, {3, 0}}) < 0);  // degree wins
  CHECK(mono_cmp({0, {1}}, {0, {1}}) == 0);
  CHECK(mono_divides({0, {1, 0}}, {0, {2, 3}}));
  CHECK(!mono_divides({0, {1, 0}}, {0, {0, 3}}));
  CHECK(!mono_divides({0, {1}}, {1, {2}}));
}

TEST_CASE("vector arithmetic normalizes") {
  Ring R{2, 1, 2, 1};
  Vec a = normalize(R, {t(0, {1}, 1), t(0, {0}, 1)});
  REQUIRE(a.size() == 2);
  CHECK(a[0].m.e == std::vector<int>{1});  // leading term first
  Vec sum = add(R, a, a);
  CHECK(sum.empty());  // characteristic 2
  Vec sc = scale(R, a, 0);
  CHECK(sc.empty());
  Vec sh = mul_term(R, a, {2}, 1);
  CHECK(sh[0].m.e == std::vector<int>{3});
}

TEST_CASE("unit discovery in a chain ring via S- and annihilator pairs") {
  // over Z_8[y], 1 + 2y is a unit: the completed basis must collapse to (1)
  Ring R{2, 3, 8, 1};
  Vec f = normalize(R, {t(0, {1}, 2), t(0, {0}, 1)});
  auto G = buchberger(R, {f});
  // everything reduces to zero, even a bare unit constant
  CHECK(normal_form(R, G, normalize(R, {t(0, {0}, 1)})).empty());
  CHECK(normal_form(R, G, normalize(R, {t(0, {3}, 5)})).empty());
}

TEST_CASE("proper chain-ring ideal keeps graded structure") {
  // (2y, y^2 + 2) over Z_4[y]
  Ring R{2, 2, 4, 1};
  Vec f = normalize(R, {t(0, {1}, 2)});
  Vec g = normalize(R, {t(0, {2}, 1), t(0, {0}, 2)});
  auto G = buchberger(R, {f, g});
  CHECK(normal_form(R, G, normalize(R, {t(0, {2}, 2)})).empty());   // 2y^2
  CHECK(normal_form(R, G, normalize(R, {t(0, {3}, 1), t(0, {1}, 2)})).empty());
  CHECK(!normal_form(R, G, normalize(R, {t(0, {0}, 2)})).empty());  // 2
  CHECK(!normal_form(R, G, normalize(R, {t(0, {1}, 1)})).empty());  // y
}

TEST_CASE("strong reduction respects coefficient valuations") {
  // in Z_4[y], the ideal (2) must not reduce the unit 3
  Ring R{2, 2, 4, 1};
  auto G = buchberger(R, {normalize(R, {t(0, {0}, 2)})});
  Vec three = normalize(R, {t(0, {0}, 3)});
  CHECK(normal_form(R, G, three) == three);
  CHECK(normal_form(R, G, normalize(R, {t(0, {5}, 2)})).empty());
}

TEST_CASE("module positions are independent unless coupled") {
  // submodule of Z_2[y]^2 generated by (y, 0) and (0, y+1)
  Ring R{2, 1, 2, 1};
  Vec a = normalize(R, {t(0, {1}, 1)});
  Vec b = normalize(R, {t(1, {1}, 1), t(1, {0}, 1)});
  auto G = buchberger(R, {a, b});
  CHECK(normal_form(R, G, normalize(R, {t(0, {4}, 1)})).empty());
  CHECK(!normal_form(R, G, normalize(R, {t(1, {1}, 1)})).empty());
  CHECK(normal_form(R, G, normalize(R, {t(1, {2}, 1), t(1, {0}, 1)})).empty());
}

TEST_CASE("budget exhaustion raises") {
  Ring R{2, 1, 2, 2};
  // x^3 - y (encoded over F_2) and y^2: enough to force a few pairs
  Vec f = normalize(R, {t(0, {3, 0}, 1), t(0, {0, 1}, 1)});
  Vec g = normalize(R, {t(0, {0, 2}, 1)});
  Budget tiny;
  tiny.pair_reductions = 0;
  CHECK_THROWS_AS(buchberger(R, {f, g}, &tiny), Error);
}
