#include "stabmod/qca.hpp"

#include <algorithm>
#include <utility>

#include "stabmod/laurent_gb.hpp"

namespace stabmod {

namespace {

// layer t of a bulk polynomial: the terms whose last exponent equals t,
// re-expressed over the boundary ring (last exponent dropped)
Poly bulk_layer(const RingCtx& bnd, const Poly& f, int t) {
  Poly out = Poly::zero(bnd);
  for (const auto& [e, c] : f.terms()) {
    if (e.back() != t) continue;
    out.set_coeff(Exp(e.begin(), e.end() - 1), c);
  }
  return out;
}

// a bulk vector split into boundary-ring layers [lo, lo + layers.size() - 1];
// the zero vector keeps an empty layer list
struct Band {
  int lo = 0;
  std::vector<PolyVec> layers;
  int hi() const { return lo + static_cast<int>(layers.size()) - 1; }
};

Band band_of(const RingCtx& bnd, const PolyVec& v) {
  Band out;
  bool any = false;
  int lo = 0, hi = -1;
  for (const auto& f : v) {
    for (const auto& [e, c] : f.terms()) {
      (void)c;
      int t = e.back();
      if (!any) {
        lo = hi = t;
        any = true;
      } else {
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    }
  }
  if (!any) return out;
  out.lo = lo;
  for (int t = lo; t <= hi; ++t) {
    PolyVec layer;
    layer.reserve(v.size());
    for (const auto& f : v) layer.push_back(bulk_layer(bnd, f, t));
    out.layers.push_back(std::move(layer));
  }
  return out;
}

// span over the boundary ring of { x_d^k * vecs[i] : k in [klo, khi] }
// intersected with the slab [0, W]: coefficient tuples are the kernel of the
// outside-layer extraction, assembled back into slab vectors of width W
PolyMat window_intersection(const RingCtx& bnd, int m2,
                            const std::vector<Band>& vecs, int klo, int khi,
                            int W) {
  struct Var {
    int i, k;
  };
  std::vector<Var> vars;
  int glo = 0, ghi = -1;
  bool any = false;
  for (int i = 0; i < static_cast<int>(vecs.size()); ++i) {
    if (vecs[i].layers.empty()) continue;
    for (int k = klo; k <= khi; ++k) vars.push_back({i, k});
    if (klo > khi) continue;
    int lo = klo + vecs[i].lo, hi = khi + vecs[i].hi();
    if (!any) {
      glo = lo;
      ghi = hi;
      any = true;
    } else {
      glo = std::min(glo, lo);
      ghi = std::max(ghi, hi);
    }
  }
  PolyMat out;
  if (vars.empty()) return out;
  std::vector<int> bads;
  for (int t = glo; t <= -1; ++t) bads.push_back(t);
  for (int t = W + 1; t <= ghi; ++t) bads.push_back(t);
  std::vector<PolyVec> coeffs;
  if (bads.empty()) {
    for (size_t u = 0; u < vars.size(); ++u) {
      PolyVec e = pv_zero(bnd, static_cast<int>(vars.size()));
      e[u] = Poly::constant(bnd, 1);
      coeffs.push_back(std::move(e));
    }
  } else {
    const int rank = static_cast<int>(bads.size()) * m2;
    PolyMat cols;
    for (const auto& v : vars) {
      PolyVec col = pv_zero(bnd, rank);
      const Band& B = vecs[v.i];
      for (int bi = 0; bi < static_cast<int>(bads.size()); ++bi) {
        int idx = bads[bi] - v.k - B.lo;
        if (idx < 0 || idx >= static_cast<int>(B.layers.size())) continue;
        for (int c = 0; c < m2; ++c) col[bi * m2 + c] = B.layers[idx][c];
      }
      cols.push_back(std::move(col));
    }
    coeffs = kernel_of_map(bnd, cols, rank);
  }
  const int base = std::min(glo, 0);
  const int top = std::max(ghi, W);
  for (const auto& y : coeffs) {
    std::vector<PolyVec> acc(top - base + 1, pv_zero(bnd, m2));
    for (size_t u = 0; u < vars.size(); ++u) {
      if (y[u].is_zero()) continue;
      const Band& B = vecs[vars[u].i];
      for (int idx = 0; idx < static_cast<int>(B.layers.size()); ++idx) {
        int t = vars[u].k + B.lo + idx;
        acc[t - base] = pv_add(acc[t - base], pv_scale(B.layers[idx], y[u]));
      }
    }
    for (int t = base; t <= top; ++t) {
      if ((t < 0 || t > W) && !pv_is_zero(acc[t - base])) {
        throw Error(ErrorKind::internal_error,
                    "window intersection leaked outside the slab");
      }
    }
    PolyVec slab = pv_zero(bnd, m2 * (W + 1));
    for (int t = 0; t <= W; ++t) {
      for (int c = 0; c < m2; ++c) slab[t * m2 + c] = acc[t - base][c];
    }
    if (!pv_is_zero(slab)) out.push_back(std::move(slab));
  }
  return out;
}

PolyMat identity_slab(const RingCtx& bnd, int rank) {
  PolyMat out;
  for (int i = 0; i < rank; ++i) {
    PolyVec e = pv_zero(bnd, rank);
    e[i] = Poly::constant(bnd, 1);
    out.push_back(std::move(e));
  }
  return out;
}

PolyMat nonzero_cols(const PolyMat& A) {
  PolyMat out;
  for (const auto& v : A) {
    if (!pv_is_zero(v)) out.push_back(v);
  }
  return out;
}

PolyVec pad_to(const RingCtx& bnd, const PolyVec& v, int len) {
  PolyVec out = pv_zero(bnd, len);
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

bool e_trivial(const EModule& em) {
  return em.finite && em.group.order == 1;
}

}  // namespace

QcaAutomaton qca_automaton(RingCtx ctx, int m, PolyMat cols,
                           std::string name) {
  if (m < 1) {
    throw Error(ErrorKind::validation_error,
                "automaton needs a positive rank");
  }
  const int m2 = 2 * m;
  if (static_cast<int>(cols.size()) != m2) {
    throw Error(ErrorKind::validation_error,
                "automaton matrix needs 2m columns");
  }
  for (const auto& col : cols) {
    if (static_cast<int>(col.size()) != m2) {
      throw Error(ErrorKind::validation_error,
                  "automaton matrix columns must have length 2m");
    }
    for (const auto& f : col) {
      if (f.ctx() != ctx) {
        throw Error(ErrorKind::ring_context_mismatch,
                    "automaton entries must live in the stated ring");
      }
    }
  }
  for (int a = 0; a < m2; ++a) {
    for (int b = 0; b < m2; ++b) {
      Poly want = Poly::zero(ctx);
      if (a == b + m) want = Poly::constant(ctx, 1);
      if (b == a + m) want = Poly::constant(ctx, ctx.n - 1);
      if (!(omega_form(m, cols[a], cols[b]) == want)) {
        throw Error(ErrorKind::validation_error,
                    "automaton matrix does not preserve the pairing");
      }
    }
  }
  QcaAutomaton out;
  out.ctx = ctx;
  out.m = m;
  out.spread = 0;
  for (const auto& col : cols) {
    for (const auto& f : col) {
      if (f.is_zero()) continue;
      auto [lo, hi] = f.support_box();
      out.spread = std::max(out.spread, std::abs(lo.back()));
      out.spread = std::max(out.spread, std::abs(hi.back()));
    }
  }
  out.cols = std::move(cols);
  out.name = std::move(name);
  return out;
}

QcaAutomaton qca_identity(RingCtx ctx, int m) {
  PolyMat cols;
  for (int c = 0; c < 2 * m; ++c) {
    PolyVec e = pv_zero(ctx, 2 * m);
    e[c] = Poly::constant(ctx, 1);
    cols.push_back(std::move(e));
  }
  return qca_automaton(ctx, m, std::move(cols), "identity");
}

QcaAutomaton qca_shift_last(RingCtx ctx, int m) {
  Exp sh(ctx.d, 0);
  sh.back() = 1;
  PolyMat cols;
  for (int c = 0; c < 2 * m; ++c) {
    PolyVec e = pv_zero(ctx, 2 * m);
    e[c] = Poly::monomial(ctx, sh, 1);
    cols.push_back(std::move(e));
  }
  return qca_automaton(ctx, m, std::move(cols), "shift");
}

QcaAutomaton qca_shear(RingCtx ctx, const Poly& f) {
  if (f.ctx() != ctx) {
    throw Error(ErrorKind::ring_context_mismatch,
                "shear multiplier must live in the stated ring");
  }
  if (!(f == f.involuted())) {
    throw Error(ErrorKind::validation_error,
                "shear multiplier must be fixed by the involution");
  }
  PolyMat cols;
  cols.push_back({Poly::constant(ctx, 1), Poly::zero(ctx)});
  cols.push_back({f, Poly::constant(ctx, 1)});
  return qca_automaton(ctx, 1, std::move(cols), "shear");
}

PolyMat qca_z_image(const QcaAutomaton& alpha) {
  return PolyMat(alpha.cols.begin() + alpha.m, alpha.cols.end());
}

bool qca_creates(const QcaAutomaton& alpha, const StabilizerCode& code) {
  if (alpha.ctx != code.ctx || alpha.m != code.m) {
    throw Error(ErrorKind::ring_context_mismatch,
                "automaton and code must share the ambient module");
  }
  require_gb_support(code.ctx, "automaton image comparison");
  PolyMat zi = qca_z_image(alpha);
  GBModule gz(code.ctx, 2 * alpha.m, zi);
  if (code.sigma.empty()) return false;
  GBModule gs(code.ctx, 2 * code.m, code.sigma);
  return gs.contains_all(zi) && gz.contains_all(code.sigma);
}

QcaBoundaryAlgebra qca_boundary_algebra(const QcaAutomaton& alpha, int r) {
  if (r < alpha.spread) {
    throw Error(ErrorKind::validation_error,
                "window parameter must be at least the automaton spread");
  }
  if (alpha.ctx.d < 2) {
    throw Error(ErrorKind::unsupported_ring,
                "slab algebras need at least two axes");
  }
  RingCtx bnd{alpha.ctx.n, alpha.ctx.d - 1};
  require_gb_support(bnd, "slab algebra");
  const int m2 = 2 * alpha.m;
  const int l = alpha.spread;

  QcaBoundaryAlgebra out;
  out.bulk_ctx = alpha.ctx;
  out.ctx = bnd;
  out.m = alpha.m;
  out.r = r;
  out.spread = l;
  out.width = r + l;

  std::vector<Band> bands;
  bands.reserve(alpha.cols.size());
  for (const auto& col : alpha.cols) bands.push_back(band_of(bnd, col));

  out.b_gens = window_intersection(bnd, m2, bands, -l, r, out.width);
  out.d_gens = window_intersection(bnd, m2, bands, r + 1, r + 2 * l, out.width);

  PolyMat both = out.b_gens;
  for (const auto& v : out.d_gens) both.push_back(v);
  if (!both.empty()) {
    GBModule gboth(bnd, out.slab_rank(), both);
    out.spans = gboth.contains_all(identity_slab(bnd, out.slab_rank()));
  }

  out.orthogonal = true;
  for (const auto& b : out.b_gens) {
    for (const auto& d : out.d_gens) {
      if (!omega_boundary(out.m, b, d).is_zero()) out.orthogonal = false;
    }
  }

  out.independent = true;
  if (!out.b_gens.empty() && !out.d_gens.empty()) {
    PolyMat inter =
        intersect_modules(bnd, out.b_gens, out.d_gens, out.slab_rank());
    out.independent = nonzero_cols(inter).empty();
  }

  if (!out.b_gens.empty()) {
    out.relations = kernel_of_map(bnd, out.b_gens, out.slab_rank());
  }
  const int k = static_cast<int>(out.b_gens.size());
  out.gram.assign(k, PolyVec());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.gram[a].push_back(omega_boundary(out.m, out.b_gens[a],
                                           out.b_gens[b]));
    }
  }
  return out;
}

QcaWittStability qca_witt_stability(const QcaAutomaton& alpha, int r,
                                    u64 budget) {
  if (alpha.ctx.d != 2) {
    throw Error(ErrorKind::unsupported_ring,
                "window stability needs a univariate boundary ring");
  }
  QcaBoundaryAlgebra A = qca_boundary_algebra(alpha, r);
  QcaBoundaryAlgebra B = qca_boundary_algebra(alpha, r + 1);
  QcaWittStability out;
  if (!A.decomposition() || !B.decomposition()) {
    out.detail = "slab decomposition failed";
    return out;
  }
  auto qs_of = [](const QcaBoundaryAlgebra& X) {
    QuasiSymplectic1D P;
    P.ctx = X.ctx;
    P.k = static_cast<int>(X.b_gens.size());
    P.relations = X.relations;
    P.gram = X.gram;
    return P;
  };
  QuasiSymplectic1D qa = qs_of(A), qb = qs_of(B);
  EModule ea = e_module(qa), eb = e_module(qb);
  out.order_r = ea.group.order;
  out.order_r1 = eb.group.order;
  if (!e_trivial(ea) || !e_trivial(eb)) {
    out.detail = "window module defect group is not trivial";
    return out;
  }
  // difference form: the two windows side by side, second pairing negated
  QuasiSymplectic1D diff;
  diff.ctx = qa.ctx;
  diff.k = qa.k + qb.k;
  for (const auto& y : qa.relations) {
    PolyVec row = pad_to(diff.ctx, y, diff.k);
    diff.relations.push_back(std::move(row));
  }
  for (const auto& y : qb.relations) {
    PolyVec row = pv_zero(diff.ctx, diff.k);
    for (int i = 0; i < qb.k; ++i) row[qa.k + i] = y[i];
    diff.relations.push_back(std::move(row));
  }
  diff.gram.assign(diff.k, PolyVec());
  for (int a = 0; a < diff.k; ++a) {
    for (int b = 0; b < diff.k; ++b) {
      Poly v = Poly::zero(diff.ctx);
      if (a < qa.k && b < qa.k) v = qa.gram[a][b];
      if (a >= qa.k && b >= qa.k) {
        v = qb.gram[a - qa.k][b - qa.k].scaled(diff.ctx.n - 1);
      }
      diff.gram[a].push_back(std::move(v));
    }
  }
  MetabolicityResult met = is_metabolic(diff, budget);
  out.complete = met.complete;
  out.stable = met.metabolic;
  if (!out.stable) out.detail = "difference form did not split";
  return out;
}

QcaBoundaryComparison qca_vs_boundary_check(const QcaAutomaton& alpha,
                                            const StabilizerCode& code,
                                            const BoundaryOptions& opt) {
  QcaBoundaryComparison out;
  out.creates = qca_creates(alpha, code);
  if (!out.creates) {
    throw Error(ErrorKind::validation_error,
                "the automaton does not create this code");
  }
  BoundaryModule Bm = boundary_module_std(code, opt);
  const int l = alpha.spread;
  const int r = Bm.width + l;
  out.r = r;
  QcaBoundaryAlgebra alg = qca_boundary_algebra(alpha, r);
  if (!alg.decomposition()) {
    out.detail = "slab decomposition failed";
    return out;
  }
  const RingCtx bnd = alg.ctx;
  const int m2 = 2 * alpha.m;
  const int W = alg.width;
  const int rank = alg.slab_rank();

  // the created-stabilizer part of the window: images of the phase-flip
  // translates that stay in the lower half, clipped to the slab
  std::vector<Band> zbands;
  for (const auto& col : qca_z_image(alpha)) zbands.push_back(band_of(bnd, col));
  PolyMat lb = window_intersection(bnd, m2, zbands, -l, r, W);

  // inside-the-slab stabilizer translates of the code at the same width
  PolyMat inner = (W == Bm.width) ? Bm.inner : slab_translates(Bm, W);

  bool lb_inside = true;
  if (!lb.empty()) {
    if (inner.empty()) {
      lb_inside = false;
    } else {
      GBModule ginner(bnd, rank, inner);
      lb_inside = ginner.contains_all(lb);
    }
  }

  // orthogonal complement of the created part inside the window module
  PolyMat lbperp;
  if (lb.empty()) {
    lbperp = alg.b_gens;
  } else {
    PolyMat cols;
    for (const auto& b : alg.b_gens) {
      PolyVec col;
      col.reserve(lb.size());
      for (const auto& g : lb) col.push_back(omega_boundary(alpha.m, b, g));
      cols.push_back(std::move(col));
    }
    for (const auto& w : kernel_of_map(bnd, cols, static_cast<int>(lb.size()))) {
      PolyVec b = mat_apply(alg.b_gens, pv_involute(w));
      if (!pv_is_zero(b)) lbperp.push_back(std::move(b));
    }
  }

  std::vector<PolyVec> cls;
  bool classes_ok = lb_inside;
  for (const auto& b : lbperp) {
    auto y = boundary_class(Bm, b);
    if (!y) {
      classes_ok = false;
      break;
    }
    cls.push_back(*y);
  }
  out.well_defined = classes_ok;
  if (!out.well_defined) {
    out.detail = "window classes do not land in the boundary module";
    return out;
  }

  // surjectivity: every boundary generator is a window class
  out.surjective = true;
  {
    PolyMat cols = lbperp;
    for (const auto& c : inner) cols.push_back(c);
    if (cols.empty()) {
      out.surjective = Bm.generators.empty();
    } else {
      GBModule gsur(bnd, rank, cols);
      for (const auto& g : Bm.generators) {
        if (!gsur.contains(pad_to(bnd, g, rank))) out.surjective = false;
      }
    }
  }

  // injectivity: the kernel of the class map is exactly the created part
  out.injective = true;
  {
    PolyMat ker;
    if (!lbperp.empty() && !inner.empty()) {
      ker = nonzero_cols(intersect_modules(bnd, lbperp, inner, rank));
    }
    if (lb.empty()) {
      out.injective = ker.empty();
    } else {
      GBModule glb(bnd, rank, lb);
      out.injective = glb.contains_all(ker);
      if (!lbperp.empty()) {
        GBModule gperp(bnd, rank, lbperp);
        if (!gperp.contains_all(lb)) out.injective = false;
      } else {
        out.injective = false;
      }
    }
  }

  // the pairing agrees through the class map
  out.gram_match = true;
  {
    const int k = static_cast<int>(lbperp.size());
    for (int s = 0; s < k; ++s) {
      for (int t = 0; t < k; ++t) {
        Poly through = Poly::zero(bnd);
        for (size_t a = 0; a < cls[s].size(); ++a) {
          if (cls[s][a].is_zero()) continue;
          for (size_t b = 0; b < cls[t].size(); ++b) {
            through =
                through + cls[s][a].involuted() * Bm.gram[a][b] * cls[t][b];
          }
        }
        if (!(omega_boundary(alpha.m, lbperp[s], lbperp[t]) == through)) {
          out.gram_match = false;
        }
      }
    }
  }

  // on a univariate boundary ring, compare the defect invariant factors of
  // the window subquotient and of the boundary module
  out.factors_match = true;
  if (code.ctx.d == 2) {
    QuasiSymplectic1D qc = boundary_qs(Bm, false);
    EModule ec = e_module(qc);
    out.code_factors = ec.factors;

    QuasiSymplectic1D qq;
    qq.ctx = bnd;
    qq.k = static_cast<int>(lbperp.size());
    if (!lbperp.empty()) {
      qq.relations = lb.empty() ? kernel_of_map(bnd, lbperp, rank)
                                : subquotient_relations(bnd, lbperp, lb, rank);
    }
    qq.gram.assign(qq.k, PolyVec());
    for (int a = 0; a < qq.k; ++a) {
      for (int b = 0; b < qq.k; ++b) {
        qq.gram[a].push_back(omega_boundary(alpha.m, lbperp[a], lbperp[b]));
      }
    }
    EModule eq = e_module(qq);
    out.qca_factors = eq.factors;
    out.factors_match = (ec.factors == eq.factors);
  }

  out.isomorphism = out.creates && out.well_defined && out.injective &&
                    out.surjective && out.gram_match && out.factors_match;
  if (!out.isomorphism && out.detail.empty()) {
    out.detail = "window subquotient does not match the boundary module";
  }
  return out;
}

}  // namespace stabmod
