#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <utility>
#include <vector>

#include "stabmod/boundary.hpp"
#include "stabmod/laurent_gb.hpp"
#include "stabmod/metric_group.hpp"
#include "stabmod/quasisym.hpp"
#include "stabmod/zoo.hpp"

using namespace stabmod;

namespace {

Poly P(RingCtx ctx, const std::string& s) { return parse_poly(ctx, s); }

ErrorKind catch_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  REQUIRE(false);
  return ErrorKind::internal_error;
}

PolyMat nonzero(const PolyMat& A) {
  PolyMat out;
  for (const auto& v : A) {
    if (!pv_is_zero(v)) out.push_back(v);
  }
  return out;
}

bool in_span(const RingCtx& ctx, int ambient, const PolyMat& gens,
             const PolyVec& v) {
  PolyMat nz = nonzero(gens);
  if (nz.empty()) return pv_is_zero(v);
  return GBModule(ctx, ambient, nz).contains(v);
}

// every generator pairs to zero with every inner translate (the form is
// well-defined on the quotient)
void check_gram_descends(const BoundaryModule& B) {
  for (const auto& g : B.generators) {
    for (const auto& d : B.inner) {
      CHECK(omega_boundary(B.m, g, d).is_zero());
      CHECK(omega_boundary(B.m, d, g).is_zero());
    }
  }
}

void check_gram_antihermitian(const BoundaryModule& B) {
  const int k = static_cast<int>(B.generators.size());
  for (int a = 0; a < k; ++a) {
    CHECK(B.gram[a][a].constant_term() == 0);
    for (int b = 0; b < k; ++b) {
      CHECK(B.gram[a][b] == -(B.gram[b][a].involuted()));
    }
  }
}

MetricGroup anyon_pair_f2() {
  MetricGroup g;
  g.n = 2;
  g.factors = {2, 2};
  g.q_gen = {0, 0};
  g.b_gram = {{0, 1}, {1, 0}};
  return g;
}

}  // namespace

TEST_CASE("rank-1 hyperbolic code: boundary generators, form, and widths") {
  StabilizerCode code = zoo_code("paper41");
  BoundaryModule B = boundary_module(code, {0, 1});
  RingCtx bx{2, 1};

  CHECK(B.ctx == bx);
  CHECK(B.m == 1);
  REQUIRE(B.heights == std::vector<int>{2});
  CHECK(B.shifts == std::vector<int>{1});
  CHECK(B.h_max == 2);
  CHECK(B.width == 2);
  CHECK(B.width_stable);
  CHECK(B.strip_stable);
  CHECK(B.strip.empty());

  REQUIRE(B.primary_index.size() == 2);
  CHECK(B.primary_index[0] == std::pair<int, int>(0, 2));
  CHECK(B.primary_index[1] == std::pair<int, int>(0, 1));
  REQUIRE(B.generators.size() == 3);
  CHECK(B.primary_flags == std::vector<bool>{true, true, false});
  CHECK(B.has_secondaries);

  // deepest truncation first: e1 = top layer alone, e2 = top two layers
  REQUIRE(B.slab_rank() == 6);
  PolyVec e1 = pv_zero(bx, 6);
  e1[0] = P(bx, "1+x1");
  CHECK(B.generators[0] == e1);
  PolyVec e2 = pv_zero(bx, 6);
  e2[1] = P(bx, "1");
  e2[2] = P(bx, "1+x1");
  CHECK(B.generators[1] == e2);

  CHECK(B.gram[0][0].is_zero());
  CHECK(B.gram[1][1].is_zero());
  CHECK(B.gram[0][1] == P(bx, "1+x1^-1"));
  CHECK(B.gram[1][0] == P(bx, "1+x1"));

  check_gram_descends(B);
  check_gram_antihermitian(B);

  // the primary pair is free: no relations against the inner translates
  CHECK(nonzero(B.primary_relations).empty());

  // e1 is a (1+x) multiple of a secondary class: it lies in the span of
  // (1+x) * generators plus the inner translates, but not of the inner
  // translates alone, and the secondary is not primary-expressible
  PolyMat scaled;
  for (const auto& g : B.generators) {
    scaled.push_back(pv_scale(g, P(bx, "1+x1")));
  }
  for (const auto& c : B.inner) scaled.push_back(c);
  CHECK(in_span(bx, 6, scaled, B.generators[0]));
  CHECK(!in_span(bx, 6, B.inner, B.generators[0]));
  PolyMat prims_and_inner = {B.generators[0], B.generators[1]};
  for (const auto& c : B.inner) prims_and_inner.push_back(c);
  CHECK(!in_span(bx, 6, prims_and_inner, B.generators[2]));
}

TEST_CASE("rank-1 hyperbolic code: boundary groups and truncation classes") {
  StabilizerCode code = zoo_code("paper41");
  BoundaryModule B = boundary_module(code, {0, 1});
  RingCtx bx{2, 1};

  // full quotient is unimodular: trivial defect group
  QuasiSymplectic1D full = boundary_qs(B, false);
  CHECK(qs_validate(full).valid);
  EModule em_full = e_module(full);
  CHECK(em_full.finite);
  CHECK(em_full.factors.empty());
  CHECK(em_full.group.order == 1);

  // primary submodule carries the hyperbolic plane over F_2[x^±]/(1+x)
  QuasiSymplectic1D prim = boundary_qs(B, true);
  CHECK(prim.k == 2);
  CHECK(qs_validate(prim).valid);
  EModule em_prim = e_module(prim);
  CHECK(em_prim.factors == std::vector<u64>{2, 2});
  MetricGroup g = metric_group_of(prim, &em_prim);
  CHECK(iso_check(g, anyon_pair_f2()).has_value());

  // the stabilizer itself truncates to the height-one primary
  PolyVec one_coeff = {Poly::constant(code.ctx, 1)};
  PolyVec y = q_map(B, one_coeff);
  REQUIRE(y.size() == 3);
  CHECK(y[0].is_zero());
  CHECK(y[1] == Poly::constant(bx, 1));
  CHECK(y[2].is_zero());

  // a translate deep inside the half-space truncates to zero
  PolyVec deep = {P(code.ctx, "x2^5")};
  CHECK(pv_is_zero(q_map(B, deep)));

  // x2^-2 sigma is supported below the wall except for its top layer
  PolyVec low = {P(code.ctx, "x2^-1")};
  PolyVec y_low = q_map(B, low);
  CHECK(y_low[0] == Poly::constant(bx, 1));
  CHECK(y_low[1].is_zero());

  // truncation classes are consistent: the representative built from the
  // coordinates differs from the truncated slab by inner translates
  PolyVec slab = pv_zero(bx, 6);
  slab[0] = P(bx, "1+x1");  // nonnegative part of x2^-2 * sigma~
  PolyVec rep = mat_apply(B.generators, y_low);
  CHECK(in_span(bx, 6, B.inner, pv_sub(slab, rep)));
}

TEST_CASE("plaquette-translation code: boundary is the twisted free line") {
  StabilizerCode code = zoo_code("wen");
  BoundaryModule B = boundary_module(code, {0, 1});
  RingCtx bx{2, 1};

  CHECK(B.heights == std::vector<int>{1});
  CHECK(B.width == 1);
  CHECK(B.width_stable);
  CHECK(B.strip_stable);
  CHECK(B.strip.empty());
  REQUIRE(B.generators.size() == 1);
  CHECK(B.primary_flags == std::vector<bool>{true});
  CHECK(!B.has_secondaries);

  PolyVec e = pv_zero(bx, 4);
  e[0] = P(bx, "x1");
  e[1] = P(bx, "1");
  CHECK(B.generators[0] == e);
  CHECK(B.gram[0][0] == P(bx, "x1+x1^-1"));
  CHECK(nonzero(B.relations).empty());
  check_gram_descends(B);

  QuasiSymplectic1D qs = boundary_qs(B, false);
  CHECK(qs_validate(qs).valid);
  EModule em = e_module(qs);
  CHECK(em.factors == std::vector<u64>{2, 2});
  MetricGroup g = metric_group_of(qs, &em);

  // two plain Lagrangians, but none stable under translation
  LagrangianSearch plain = lagrangian_search(g);
  CHECK(plain.complete);
  CHECK(plain.lagrangians.size() == 2);
  LagrangianSearch stable = lagrangian_search(g, 1u << 20, &em.x_action);
  CHECK(stable.complete);
  CHECK(stable.lagrangians.empty());
}

TEST_CASE("toric code: boundary anyons for several wall orientations") {
  StabilizerCode code = zoo_code("toric");
  BoundaryModule B = boundary_module(code, {0, 1});
  RingCtx bx{2, 1};

  CHECK(B.width_stable);
  CHECK(!B.has_secondaries);
  REQUIRE(B.generators.size() == 2);
  CHECK(nonzero(B.relations).empty());
  CHECK(nonzero(B.primary_relations).empty());
  CHECK(B.gram[0][1] == P(bx, "1+x1"));
  check_gram_descends(B);
  check_gram_antihermitian(B);

  QuasiSymplectic1D qs = boundary_qs(B, false);
  CHECK(qs_validate(qs).valid);
  EModule em = e_module(qs);
  CHECK(em.factors == std::vector<u64>{2, 2});
  MetricGroup g = metric_group_of(qs, &em);
  CHECK(is_nondegenerate(g));

  LagrangianSearch search = lagrangian_search(g);
  CHECK(search.complete);
  CHECK(search.lagrangians.size() == 2);
  int fermions = 0;
  for (const auto& a : mg_elements(g)) {
    if (q_eval(g, a) == 1) ++fermions;
  }
  CHECK(fermions == 1);

  for (const std::vector<i64>& v :
       {std::vector<i64>{1, 0}, std::vector<i64>{1, 1}}) {
    BoundaryModule Bv = boundary_module(code, v);
    CHECK(Bv.width_stable);
    MetricGroup gv = metric_group_of(boundary_qs(Bv, false));
    CHECK(iso_check(g, gv).has_value());
  }
}

TEST_CASE("boundary group matches the bulk charge group in two dimensions") {
  for (const char* name : {"toric", "toric3", "wen", "paper41"}) {
    StabilizerCode code = zoo_code(name);
    ChargeModule q = charge_module(code);
    REQUIRE(q.finite);
    BoundaryModule B = boundary_module(code, {0, 1});
    EModule em = e_module(boundary_qs(B, false));
    REQUIRE(em.finite);
    CHECK(em.group.order == q.order);
    CHECK(em.factors == q.invariant_factors);
  }
}

TEST_CASE("single-layer code: boundary module vanishes") {
  StabilizerCode code = zoo_code("trivial");
  BoundaryModule B = boundary_module(code, {0, 1});
  CHECK(B.h_max == 0);
  CHECK(B.width_stable);
  CHECK(B.strip.empty());
  CHECK(B.generators.empty());
  CHECK(!B.has_secondaries);
  CHECK(B.primary_index.empty());

  QuasiSymplectic1D qs = boundary_qs(B, false);
  CHECK(qs.k == 0);
  EModule em = e_module(qs);
  CHECK(em.finite);
  CHECK(em.group.order == 1);
}

TEST_CASE("prime-power coefficients: quartic toric boundary") {
  StabilizerCode code = zoo_code("toric4");
  BoundaryModule B = boundary_module(code, {0, 1});
  CHECK(B.width_stable);
  check_gram_descends(B);
  check_gram_antihermitian(B);
  QuasiSymplectic1D qs = boundary_qs(B, false);
  CHECK(qs_validate(qs).valid);
  EModule em = e_module(qs);
  CHECK(em.factors == std::vector<u64>{4, 4});
  CHECK(em.group.order == 16);
}

TEST_CASE("opposite half-spaces pair the truncations into a Lagrangian") {
  for (const char* name : {"trivial", "wen", "paper41", "toric"}) {
    CAPTURE(name);
    OppositeCheck oc = opposite_pair_check(zoo_code(name), {0, 1});
    CHECK(oc.isotropic);
    CHECK(oc.lagrangian);
    CHECK(oc.tier == CertTier::exact);
    CHECK(oc.plus.width_stable);
    CHECK(oc.minus.width_stable);

    // group level: the orthogonal sum of the two boundary groups is
    // metabolic (the diagonal witnesses it)
    MetricGroup gp = metric_group_of(boundary_qs(oc.plus, false));
    MetricGroup gm = metric_group_of(boundary_qs(oc.minus, false));
    MetricGroup ds = direct_sum(gp, gm);
    LagrangianSearch search = lagrangian_search(ds);
    CHECK(search.complete);
    CHECK(!search.lagrangians.empty());
  }
}

TEST_CASE("three-dimensional bulk: presentation without one-variable theory") {
  StabilizerCode code = zoo_code("xcube");
  BoundaryModule B = boundary_module(code, {0, 0, 1});
  CHECK(B.ctx == RingCtx{2, 2});
  CHECK(B.heights == std::vector<int>{1, 1, 0});
  REQUIRE(B.primary_index.size() == 2);
  CHECK(B.width_stable);
  CHECK(!B.generators.empty());
  check_gram_descends(B);
  check_gram_antihermitian(B);
  CHECK(catch_kind([&] { boundary_qs(B, false); }) ==
        ErrorKind::unsupported_ring);
}

TEST_CASE("ring support and input validation") {
  // composite coefficients are split by the caller, not here
  CHECK(catch_kind([&] { boundary_module(zoo_code("toric6"), {0, 1}); }) ==
        ErrorKind::unsupported_ring);

  // prime-power coefficients with a multivariate boundary ring are out of
  // the supported matrix
  StabilizerCode z4;
  z4.ctx = RingCtx{4, 3};
  z4.m = 1;
  z4.name = "z4-line";
  PolyVec col = pv_zero(z4.ctx, 2);
  col[1] = Poly::constant(z4.ctx, 1);
  z4.sigma = {col};
  CHECK(catch_kind([&] { boundary_module(z4, {0, 0, 1}); }) ==
        ErrorKind::unsupported_ring);

  // one-dimensional bulk has no boundary ring to present over
  StabilizerCode line;
  line.ctx = RingCtx{2, 1};
  line.m = 1;
  line.name = "line";
  PolyVec lcol = pv_zero(line.ctx, 2);
  lcol[1] = Poly::constant(line.ctx, 1);
  line.sigma = {lcol};
  CHECK(catch_kind([&] { boundary_module(line, {1}); }) ==
        ErrorKind::validation_error);

  // slab vectors must match the site count
  BoundaryModule B = boundary_module(zoo_code("wen"), {0, 1});
  CHECK(catch_kind([&] {
          omega_boundary(B.m, pv_zero(B.ctx, 3), pv_zero(B.ctx, 3));
        }) == ErrorKind::validation_error);
  CHECK(catch_kind([&] { q_map(B, PolyVec{}); }) ==
        ErrorKind::validation_error);
}
