// Half-space boundary operator modules. After rebasing so the half-space is
// {last exponent >= 0}, a boundary class is a slab vector (finitely many
// layers of the bulk module over the boundary ring) orthogonal, in the scalar
// symplectic form, to every nonnegative translate of the stabilizer
// generators; classes are taken modulo the translates themselves. The
// presentation carries the layer-0 anti-hermitian form, splits its generators
// into truncated-translate primaries and kernel secondaries, and certifies
// the slab width by re-running one layer wider with the same generators.
#include "stabmod/boundary.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "stabmod/laurent_gb.hpp"

namespace stabmod {

namespace {

// x_d-layer t of a bulk polynomial, as a polynomial over the boundary ring
// (the last exponent is dropped)
Poly poly_layer(const RingCtx& bnd, const Poly& f, int t) {
  Poly out(bnd);
  for (const auto& [e, c] : f.terms()) {
    if (e.back() == t) out.set_coeff(Exp(e.begin(), e.end() - 1), c);
  }
  return out;
}

// a bulk vector split into boundary-ring layers; empty for the zero vector
struct Layered {
  std::vector<PolyVec> layers;  // layers[h], each of length 2m
  int height() const { return static_cast<int>(layers.size()) - 1; }
};

// inclusive range of last-variable exponents; {0, -1} when v is zero
std::pair<int, int> layer_range(const PolyVec& v) {
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
  return {lo, hi};
}

// layers [0, height] of a vector already normalized to minimum layer zero
Layered layered_of(const RingCtx& bnd, const PolyVec& v, int height) {
  Layered L;
  for (int t = 0; t <= height; ++t) {
    PolyVec layer;
    layer.reserve(v.size());
    for (const auto& f : v) layer.push_back(poly_layer(bnd, f, t));
    L.layers.push_back(std::move(layer));
  }
  return L;
}

// slab vector of width M with L placed at layers [k, k + height]
PolyVec slab_of(const RingCtx& bnd, int m2, const Layered& L, int k, int M) {
  PolyVec s = pv_zero(bnd, m2 * (M + 1));
  for (int h = 0; h <= L.height(); ++h) {
    for (int c = 0; c < m2; ++c) s[(h + k) * m2 + c] = L.layers[h][c];
  }
  return s;
}

PolyVec pad_slab(const RingCtx& bnd, int m2, const PolyVec& s, int M) {
  PolyVec out = pv_zero(bnd, m2 * (M + 1));
  for (size_t i = 0; i < s.size(); ++i) out[i] = s[i];
  return out;
}

PolyMat nonzero_cols(const PolyMat& A) {
  PolyMat out;
  for (const auto& v : A) {
    if (!pv_is_zero(v)) out.push_back(v);
  }
  return out;
}

bool span_equal(const RingCtx& ctx, int ambient, const PolyMat& A,
                const PolyMat& B) {
  PolyMat a = nonzero_cols(A), b = nonzero_cols(B);
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  GBModule ga(ctx, ambient, a), gb(ctx, ambient, b);
  return ga.contains_all(b) && gb.contains_all(a);
}

PolyMat identity_cols(const RingCtx& ctx, int k) {
  PolyMat out;
  for (int i = 0; i < k; ++i) {
    PolyVec e = pv_zero(ctx, k);
    e[i] = Poly::constant(ctx, 1);
    out.push_back(std::move(e));
  }
  return out;
}

// working state shared by the slab computations
struct Builder {
  RingCtx bulk, bnd;
  int m = 0, m2 = 0;
  std::vector<Layered> gen;  // normalized generators
  std::vector<int> shifts, heights;
  int h_max = 0;
  std::vector<Layered> strip;
  std::vector<Layered> prims;
  std::vector<std::pair<int, int>> prim_index;
};

// stabilizer-module elements supported in layers [0, h_max - 1], found as the
// kernel of the bad-layer extraction over the translate window [-W, W]; each
// result is trimmed to its own layer range
std::vector<Layered> strip_at(const Builder& B, int W) {
  struct Var {
    int i, t;
  };
  std::vector<Var> vars;
  for (int i = 0; i < static_cast<int>(B.gen.size()); ++i) {
    if (B.heights[i] < 0) continue;
    for (int t = -W; t <= W; ++t) vars.push_back({i, t});
  }
  std::vector<Layered> out;
  if (vars.empty()) return out;
  const int s_max = B.h_max - 1;
  std::vector<int> bads;
  for (int l = -W; l <= -1; ++l) bads.push_back(l);
  for (int l = s_max + 1; l <= W + B.h_max; ++l) bads.push_back(l);
  const int rank = static_cast<int>(bads.size()) * B.m2;
  PolyMat cols;
  for (const auto& v : vars) {
    PolyVec col = pv_zero(B.bnd, rank);
    const Layered& L = B.gen[v.i];
    for (int bi = 0; bi < static_cast<int>(bads.size()); ++bi) {
      int h = bads[bi] - v.t;
      if (h < 0 || h > L.height()) continue;
      for (int c = 0; c < B.m2; ++c) col[bi * B.m2 + c] = L.layers[h][c];
    }
    cols.push_back(std::move(col));
  }
  for (const auto& k : kernel_of_map(B.bnd, cols, rank)) {
    std::vector<PolyVec> layers(s_max + 1, pv_zero(B.bnd, B.m2));
    for (int vi = 0; vi < static_cast<int>(vars.size()); ++vi) {
      if (k[vi].is_zero()) continue;
      const Layered& L = B.gen[vars[vi].i];
      for (int h = 0; h <= s_max; ++h) {
        int src = h - vars[vi].t;
        if (src < 0 || src > L.height()) continue;
        layers[h] = pv_add(layers[h], pv_scale(L.layers[src], k[vi]));
      }
    }
    int lo = 0, hi = s_max;
    while (hi >= lo && pv_is_zero(layers[hi])) --hi;
    while (lo <= hi && pv_is_zero(layers[lo])) ++lo;
    if (hi < lo) continue;
    Layered s;
    for (int h = lo; h <= hi; ++h) s.layers.push_back(std::move(layers[h]));
    out.push_back(std::move(s));
  }
  return out;
}

void compute_strip(Builder& B, const BoundaryOptions& opt, int& window,
                   bool& stable) {
  window = 0;
  stable = true;
  if (B.h_max == 0) return;
  auto slabs = [&](const std::vector<Layered>& S) {
    PolyMat M_;
    for (const auto& s : S) M_.push_back(slab_of(B.bnd, B.m2, s, 0, B.h_max - 1));
    return M_;
  };
  std::vector<Layered> prev = strip_at(B, 1);
  for (int W = 1; W < opt.max_strip_window; ++W) {
    std::vector<Layered> next = strip_at(B, W + 1);
    if (span_equal(B.bnd, B.m2 * B.h_max, slabs(prev), slabs(next))) {
      B.strip = std::move(prev);
      window = W;
      return;
    }
    prev = std::move(next);
  }
  B.strip = std::move(prev);
  window = opt.max_strip_window;
  stable = false;
}

// slab vectors of width M orthogonal to every nonnegative translate of the
// normalized generators and strip elements. The scalar-form conditions are
// conjugated into linear constraints: for each source G and depth k in
// [0, M], the layer -k of Omega(w, G) must vanish.
PolyMat vspace_at(const Builder& B, int M) {
  std::vector<const Layered*> gens;
  for (int i = 0; i < static_cast<int>(B.gen.size()); ++i) {
    if (B.heights[i] >= 0) gens.push_back(&B.gen[i]);
  }
  for (const auto& s : B.strip) gens.push_back(&s);
  const int nvars = B.m2 * (M + 1);
  if (gens.empty()) return identity_cols(B.bnd, nvars);
  const int rank = static_cast<int>(gens.size()) * (M + 1);
  PolyMat cols;
  for (int h = 0; h <= M; ++h) {
    for (int c = 0; c < B.m2; ++c) {
      PolyVec col = pv_zero(B.bnd, rank);
      for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
        const Layered& G = *gens[gi];
        for (int k = 0; k <= M; ++k) {
          int src = h - k;
          if (src < 0 || src > G.height()) continue;
          if (c < B.m) {
            col[gi * (M + 1) + k] = -(G.layers[src][B.m + c].involuted());
          } else {
            col[gi * (M + 1) + k] = G.layers[src][c - B.m].involuted();
          }
        }
      }
      cols.push_back(std::move(col));
    }
  }
  return kernel_of_map(B.bnd, cols, rank);
}

// translates of the normalized generators and strip elements inside [0, M]
PolyMat inner_at(const Builder& B, int M) {
  PolyMat out;
  for (int i = 0; i < static_cast<int>(B.gen.size()); ++i) {
    if (B.heights[i] < 0) continue;
    for (int k = 0; k + B.heights[i] <= M; ++k) {
      out.push_back(slab_of(B.bnd, B.m2, B.gen[i], k, M));
    }
  }
  for (const auto& s : B.strip) {
    for (int k = 0; k + s.height() <= M; ++k) {
      out.push_back(slab_of(B.bnd, B.m2, s, k, M));
    }
  }
  return out;
}

// nonnegative truncations of the negative translates x_d^{-k} sigma~_i,
// deepest truncation first within each generator
void compute_primaries(Builder& B) {
  for (int i = 0; i < static_cast<int>(B.gen.size()); ++i) {
    for (int k = B.heights[i]; k >= 1; --k) {
      Layered p;
      for (int h = 0; h + k <= B.heights[i]; ++h) {
        p.layers.push_back(B.gen[i].layers[h + k]);
      }
      B.prims.push_back(std::move(p));
      B.prim_index.emplace_back(i, k);
    }
  }
}

struct Built {
  int M = 0;
  PolyMat dprime;
  PolyMat gens;
  std::vector<bool> flags;
  PolyMat rel, prel;
  std::vector<PolyVec> gram;
};

Built build_at(const Builder& B, int M) {
  Built out;
  out.M = M;
  out.dprime = inner_at(B, M);
  const int amb = B.m2 * (M + 1);
  for (const auto& p : B.prims) {
    out.gens.push_back(slab_of(B.bnd, B.m2, p, 0, M));
    out.flags.push_back(true);
  }
  PolyMat span_set = out.dprime;
  for (const auto& g : out.gens) span_set.push_back(g);
  std::optional<GBModule> span;
  if (!nonzero_cols(span_set).empty()) {
    span.emplace(B.bnd, amb, nonzero_cols(span_set));
  }
  for (const auto& v : vspace_at(B, M)) {
    bool inside = span ? span->contains(v) : pv_is_zero(v);
    if (inside) continue;
    out.gens.push_back(v);
    out.flags.push_back(false);
    span_set.push_back(v);
    span.emplace(B.bnd, amb, nonzero_cols(span_set));
  }
  const int np = static_cast<int>(B.prims.size());
  PolyMat prim_slabs(out.gens.begin(), out.gens.begin() + np);
  out.rel = out.gens.empty()
                ? PolyMat{}
                : subquotient_relations(B.bnd, out.gens, out.dprime, amb);
  out.prel = prim_slabs.empty()
                 ? PolyMat{}
                 : subquotient_relations(B.bnd, prim_slabs, out.dprime, amb);
  const int k = static_cast<int>(out.gens.size());
  out.gram.assign(k, PolyVec());
  for (int a = 0; a < k; ++a) {
    out.gram[a] = pv_zero(B.bnd, k);
    for (int b = 0; b < k; ++b) {
      out.gram[a][b] = omega_boundary(B.m, out.gens[a], out.gens[b]);
    }
  }
  return out;
}

// does the width-M presentation survive at width M+1 with the same generator
// list? Padded generators stay orthogonal automatically (the new constraints
// only see layers below zero), so the checks are: the wider kernel stays in
// the span, and both relation modules are unchanged.
bool stable_check(const Builder& B, const Built& cur) {
  const int M1 = cur.M + 1;
  const int amb1 = B.m2 * (M1 + 1);
  PolyMat padded;
  for (const auto& g : cur.gens) padded.push_back(pad_slab(B.bnd, B.m2, g, M1));
  PolyMat dp1 = inner_at(B, M1);
  PolyMat all = dp1;
  for (const auto& g : padded) all.push_back(g);
  PolyMat nz = nonzero_cols(all);
  std::optional<GBModule> span;
  if (!nz.empty()) span.emplace(B.bnd, amb1, nz);
  for (const auto& v : vspace_at(B, M1)) {
    bool inside = span ? span->contains(v) : pv_is_zero(v);
    if (!inside) return false;
  }
  PolyMat rel1 = padded.empty()
                     ? PolyMat{}
                     : subquotient_relations(B.bnd, padded, dp1, amb1);
  if (!span_equal(B.bnd, static_cast<int>(cur.gens.size()), rel1, cur.rel)) {
    return false;
  }
  const int np = static_cast<int>(B.prims.size());
  PolyMat pp(padded.begin(), padded.begin() + np);
  PolyMat prel1 =
      pp.empty() ? PolyMat{} : subquotient_relations(B.bnd, pp, dp1, amb1);
  return span_equal(B.bnd, np, prel1, cur.prel);
}

int prim_pos(const BoundaryModule& B, int i, int k) {
  for (int p = 0; p < static_cast<int>(B.primary_index.size()); ++p) {
    if (B.primary_index[p].first == i && B.primary_index[p].second == k) {
      return p;
    }
  }
  throw Error(ErrorKind::internal_error, "missing primary generator index");
}

Poly pair_with_gram(const RingCtx& ctx, const std::vector<PolyVec>& gram,
                    const PolyVec& u, const PolyVec& v) {
  Poly out(ctx);
  for (size_t a = 0; a < gram.size(); ++a) {
    if (u[a].is_zero()) continue;
    Poly ua = u[a].involuted();
    for (size_t b = 0; b < gram.size(); ++b) {
      if (gram[a][b].is_zero() || v[b].is_zero()) continue;
      out = out + ua * gram[a][b] * v[b];
    }
  }
  return out;
}

}  // namespace

Poly omega_boundary(int m, const PolyVec& a, const PolyVec& b) {
  const int m2 = 2 * m;
  if (m <= 0 || a.empty() || b.empty() || a.size() % m2 || b.size() % m2) {
    throw Error(ErrorKind::validation_error,
                "slab vectors must have length a positive multiple of 2m");
  }
  Poly out(a[0].ctx());
  const size_t layers = std::min(a.size(), b.size()) / m2;
  for (size_t h = 0; h < layers; ++h) {
    for (int j = 0; j < m; ++j) {
      out = out + a[h * m2 + m + j].involuted() * b[h * m2 + j] -
            a[h * m2 + j].involuted() * b[h * m2 + m + j];
    }
  }
  return out;
}

BoundaryModule boundary_module_std(const StabilizerCode& code,
                                   const BoundaryOptions& opt) {
  code.validate_shapes();
  if (code.ctx.d < 2) {
    throw Error(ErrorKind::validation_error,
                "boundary construction needs at least two lattice dimensions");
  }
  const RingCtx bnd{code.ctx.n, code.ctx.d - 1};
  require_gb_support(bnd, "boundary_module");
  is_isotropic(code, /*throwing=*/true);

  Builder B;
  B.bulk = code.ctx;
  B.bnd = bnd;
  B.m = code.m;
  B.m2 = 2 * code.m;

  StabilizerCode normalized = code;
  B.shifts.assign(code.g(), 0);
  B.heights.assign(code.g(), -1);
  for (int i = 0; i < code.g(); ++i) {
    auto [lo, hi] = layer_range(code.sigma[i]);
    if (hi < lo) {
      B.gen.push_back(Layered{});
      continue;
    }
    B.shifts[i] = -lo;
    B.heights[i] = hi - lo;
    Exp sh(code.ctx.d, 0);
    sh.back() = B.shifts[i];
    for (auto& f : normalized.sigma[i]) f = f.shifted(sh);
    B.gen.push_back(layered_of(bnd, normalized.sigma[i], B.heights[i]));
  }
  B.h_max = 0;
  for (int h : B.heights) B.h_max = std::max(B.h_max, h);

  BoundaryModule out;
  compute_strip(B, opt, out.strip_window, out.strip_stable);
  compute_primaries(B);

  const int M0 = std::max(B.h_max, 1);
  const int max_width = std::max(opt.max_width, M0);
  int M = M0;
  Built cur = build_at(B, M);
  bool stable = false;
  while (M < max_width) {
    if (stable_check(B, cur)) {
      stable = true;
      break;
    }
    ++M;
    cur = build_at(B, M);
  }

  out.bulk_ctx = code.ctx;
  out.ctx = bnd;
  out.basis.normal.assign(code.ctx.d, 0);
  out.basis.normal.back() = 1;
  out.basis.to_new = imat_identity(code.ctx.d);
  out.basis.to_old = imat_identity(code.ctx.d);
  out.normalized = std::move(normalized);
  out.shifts = B.shifts;
  out.heights = B.heights;
  out.h_max = B.h_max;
  out.m = code.m;
  out.width = cur.M;
  out.width_stable = stable;
  if (B.h_max >= 1) {
    for (const auto& s : B.strip) {
      out.strip.push_back(slab_of(B.bnd, B.m2, s, 0, B.h_max - 1));
    }
  }
  out.inner = std::move(cur.dprime);
  out.generators = std::move(cur.gens);
  out.primary_flags = std::move(cur.flags);
  out.primary_index = std::move(B.prim_index);
  out.relations = std::move(cur.rel);
  out.primary_relations = std::move(cur.prel);
  out.gram = std::move(cur.gram);
  out.has_secondaries = false;
  for (bool f : out.primary_flags) {
    if (!f) out.has_secondaries = true;
  }
  return out;
}

BoundaryModule boundary_module(const StabilizerCode& code,
                               const std::vector<i64>& normal,
                               const BoundaryOptions& opt) {
  HalfSpaceBasis basis;
  StabilizerCode reb = rebase_halfspace(code, normal, &basis);
  BoundaryModule out = boundary_module_std(reb, opt);
  out.basis = basis;
  return out;
}

PolyMat slab_translates(const BoundaryModule& B, int width) {
  if (width < 0) {
    throw Error(ErrorKind::validation_error, "slab width must be nonnegative");
  }
  const int m2 = 2 * B.m;
  PolyMat out;
  for (int i = 0; i < B.normalized.g(); ++i) {
    if (B.heights[i] < 0 || B.heights[i] > width) continue;
    Layered L = layered_of(B.ctx, B.normalized.sigma[i], B.heights[i]);
    for (int k = 0; k + B.heights[i] <= width; ++k) {
      out.push_back(slab_of(B.ctx, m2, L, k, width));
    }
  }
  for (const auto& s : B.strip) {
    const int stored = static_cast<int>(s.size()) / m2;
    int hi = -1;
    for (int h = 0; h < stored; ++h) {
      for (int c = 0; c < m2; ++c) {
        if (!s[h * m2 + c].is_zero()) {
          hi = h;
          break;
        }
      }
    }
    if (hi < 0 || hi > width) continue;
    Layered L;
    for (int h = 0; h <= hi; ++h) {
      L.layers.emplace_back(s.begin() + h * m2, s.begin() + (h + 1) * m2);
    }
    for (int k = 0; k + hi <= width; ++k) {
      out.push_back(slab_of(B.ctx, m2, L, k, width));
    }
  }
  return out;
}

std::optional<PolyVec> boundary_class(const BoundaryModule& B,
                                      const PolyVec& slab) {
  const int m2 = 2 * B.m;
  if (slab.size() % m2) {
    throw Error(ErrorKind::validation_error,
                "slab vector length must be a multiple of the cell rank");
  }
  const int layers = static_cast<int>(slab.size()) / m2;
  const int W = std::max(B.width, layers - 1);
  PolyVec target = pad_slab(B.ctx, m2, slab, W);
  PolyMat cols;
  for (const auto& g : B.generators) cols.push_back(pad_slab(B.ctx, m2, g, W));
  const PolyMat inner = (W == B.width) ? B.inner : slab_translates(B, W);
  for (const auto& c : inner) cols.push_back(c);
  if (cols.empty()) {
    if (pv_is_zero(target)) return PolyVec{};
    return std::nullopt;
  }
  auto sol = solve_in_image(B.ctx, cols, m2 * (W + 1), target);
  if (!sol) return std::nullopt;
  return PolyVec(sol->begin(), sol->begin() + B.generators.size());
}

PolyVec q_map(const BoundaryModule& B, const PolyVec& coeffs) {
  if (static_cast<int>(coeffs.size()) != B.normalized.g()) {
    throw Error(ErrorKind::validation_error,
                "coefficient count must match the stabilizer generators");
  }
  PolyVec y = pv_zero(B.ctx, static_cast<int>(B.generators.size()));
  for (int i = 0; i < B.normalized.g(); ++i) {
    if (B.heights[i] < 1 || coeffs[i].is_zero()) continue;
    if (coeffs[i].ctx() != B.bulk_ctx) {
      throw Error(ErrorKind::ring_context_mismatch,
                  "coefficients must live in the bulk ring");
    }
    // pull the coefficient into the rebased frame; the class of
    // coeff * sigma_i only sees the layers of coeff * x_d^{-shift} below zero
    Poly f = poly_exp_transform(coeffs[i], B.basis.to_new);
    for (int k = 1; k <= B.heights[i]; ++k) {
      Poly a = poly_layer(B.ctx, f, B.shifts[i] - k);
      if (a.is_zero()) continue;
      int pos = prim_pos(B, i, k);
      y[pos] = y[pos] + a;
    }
  }
  return y;
}

QuasiSymplectic1D boundary_qs(const BoundaryModule& B, bool primary_only) {
  if (B.ctx.d != 1) {
    throw Error(ErrorKind::unsupported_ring,
                "the one-variable form theory needs a univariate boundary "
                "ring (two-dimensional bulk)");
  }
  QuasiSymplectic1D P;
  P.ctx = B.ctx;
  if (primary_only) {
    const int np = static_cast<int>(B.primary_index.size());
    P.k = np;
    P.relations = B.primary_relations;
    P.gram.assign(np, PolyVec());
    for (int a = 0; a < np; ++a) {
      P.gram[a] = PolyVec(B.gram[a].begin(), B.gram[a].begin() + np);
    }
  } else {
    P.k = static_cast<int>(B.generators.size());
    P.relations = B.relations;
    P.gram = B.gram;
  }
  return P;
}

Poly qs_pair(const QuasiSymplectic1D& P, const PolyVec& u, const PolyVec& v) {
  if (static_cast<int>(u.size()) != P.k || static_cast<int>(v.size()) != P.k) {
    throw Error(ErrorKind::validation_error,
                "coordinate vectors must match the presentation rank");
  }
  return pair_with_gram(P.ctx, P.gram, u, v);
}

OppositeCheck opposite_pair_check(const StabilizerCode& code,
                                  const std::vector<i64>& normal,
                                  const BoundaryOptions& opt) {
  OppositeCheck out;
  HalfSpaceBasis basis;
  StabilizerCode reb = rebase_halfspace(code, normal, &basis);
  out.plus = boundary_module_std(reb, opt);
  out.plus.basis = basis;

  const int d = reb.ctx.d;
  IMat T = imat_identity(d);
  T[d - 1][d - 1] = -1;
  StabilizerCode refl = reb;
  for (auto& col : refl.sigma) {
    for (auto& f : col) f = poly_exp_transform(f, T);
  }
  out.minus = boundary_module_std(refl, opt);
  out.minus.basis.normal = basis.normal;
  for (auto& c : out.minus.basis.normal) c = -c;
  out.minus.basis.to_new = imat_mul(T, basis.to_new);
  out.minus.basis.to_old = imat_mul(basis.to_old, T);

  const RingCtx& bnd = out.plus.ctx;
  const int kp = static_cast<int>(out.plus.generators.size());
  const int km = static_cast<int>(out.minus.generators.size());
  const int m2 = 2 * out.plus.m;

  // classes of the straddling translates x_d^t sigma~_i, t in [-H_i, -1]:
  // nonnegative truncation on the + side, reflected negative truncation on
  // the - side. These generate the image of the whole stabilizer module.
  // Reflection sends the open negative side {<0} onto {>0}, one layer above
  // the closed slab, so the minus-side representative is shifted down by one
  // (an isomorphism by translation invariance): layer h picks layer -h-1 of
  // the truncation.
  std::vector<std::pair<PolyVec, PolyVec>> diag;
  for (int i = 0; i < reb.g(); ++i) {
    const int H = out.plus.heights[i];
    if (H < 1) continue;
    Layered L = layered_of(bnd, out.plus.normalized.sigma[i], H);
    for (int t = -H; t <= -1; ++t) {
      PolyVec cp = pv_zero(bnd, kp);
      cp[prim_pos(out.plus, i, -t)] = Poly::constant(bnd, 1);
      PolyVec slab = pv_zero(bnd, out.minus.slab_rank());
      for (int h = 0; h <= -t - 1; ++h) {
        const PolyVec& lay = L.layers[-h - 1 - t];
        for (int c = 0; c < m2; ++c) slab[h * m2 + c] = lay[c];
      }
      auto cm = boundary_class(out.minus, slab);
      if (!cm) {
        throw Error(ErrorKind::internal_error,
                    "reflected truncation outside the opposite boundary "
                    "module");
      }
      diag.emplace_back(std::move(cp), std::move(*cm));
    }
  }

  out.isotropic = true;
  for (const auto& a : diag) {
    for (const auto& b : diag) {
      Poly s = pair_with_gram(bnd, out.plus.gram, a.first, b.first) +
               pair_with_gram(bnd, out.minus.gram, a.second, b.second);
      if (!s.is_zero()) out.isotropic = false;
    }
  }

  // maximality: within the orthogonal sum, the pairing-kernel of the
  // diagonal equals the diagonal span modulo both relation modules
  const int kc = kp + km;
  PolyMat rel_comb;
  for (const auto& r : out.plus.relations) {
    PolyVec v = r;
    for (int j = 0; j < km; ++j) v.push_back(Poly(bnd));
    rel_comb.push_back(std::move(v));
  }
  for (const auto& r : out.minus.relations) {
    PolyVec v = pv_zero(bnd, kp);
    for (const auto& e : r) v.push_back(e);
    rel_comb.push_back(std::move(v));
  }
  PolyMat diag_comb;
  for (const auto& dl : diag) {
    PolyVec v = dl.first;
    for (const auto& e : dl.second) v.push_back(e);
    diag_comb.push_back(std::move(v));
  }
  PolyMat perp;
  if (diag.empty()) {
    perp = identity_cols(bnd, kc);
  } else {
    PolyMat cols;
    for (int b = 0; b < kc; ++b) {
      PolyVec col = pv_zero(bnd, static_cast<int>(diag.size()));
      for (size_t l = 0; l < diag.size(); ++l) {
        Poly e(bnd);
        if (b < kp) {
          for (int a = 0; a < kp; ++a) {
            e = e + diag[l].first[a].involuted() * out.plus.gram[a][b];
          }
        } else {
          for (int a = 0; a < km; ++a) {
            e = e + diag[l].second[a].involuted() * out.minus.gram[a][b - kp];
          }
        }
        col[l] = std::move(e);
      }
      cols.push_back(std::move(col));
    }
    perp = kernel_of_map(bnd, cols, static_cast<int>(diag.size()));
  }
  PolyMat lhs = perp;
  for (const auto& r : rel_comb) lhs.push_back(r);
  PolyMat rhs = diag_comb;
  for (const auto& r : rel_comb) rhs.push_back(r);
  out.lagrangian = out.isotropic && span_equal(bnd, kc, lhs, rhs);
  out.tier = CertTier::exact;
  return out;
}

}  // namespace stabmod
