#include "stabmod/laurent_gb.hpp"

#include <algorithm>
#include <map>

#include "stabmod/smith.hpp"

namespace stabmod {

bool gb_ring_supported(u64 /*p*/, unsigned r, int d) {
  return r == 1 || d <= 1;
}

PrimePower require_prime_power(const RingCtx& ctx) {
  Modulus m(ctx.n);
  if (!m.is_prime_power())
    throw Error(ErrorKind::unsupported_ring,
                "Groebner layer requires a prime-power modulus; CRT-split "
                "composite moduli first");
  return m.factors[0];
}

void require_gb_support(const RingCtx& ctx, const char* what) {
  PrimePower pp = require_prime_power(ctx);
  if (!gb_ring_supported(pp.p, pp.r, ctx.d))
    throw Error(ErrorKind::unsupported_ring,
                std::string(what) +
                    ": unsupported ring Z_" + std::to_string(ctx.n) + "[x^±]^" +
                    std::to_string(ctx.d) +
                    " (exact Groebner theory implemented for prime moduli in "
                    "any dimension, or any prime power in dimension <= 1)");
}

namespace {

// internal variable layout: x_1..x_d then u (only when d >= 1)
int internal_nv(int d) { return d >= 1 ? d + 1 : 0; }

eng::Ring make_engine_ring(const RingCtx& ctx) {
  PrimePower pp = require_prime_power(ctx);
  return eng::Ring{pp.p, pp.r, pp.q, internal_nv(ctx.d)};
}

// exact, class-preserving internalization: each Laurent term x^e maps to
// u^t * x^{e + t*1} with t = max(0, -min_i e_i)
eng::Vec to_internal(const eng::Ring& R, const RingCtx& ctx, const PolyVec& v,
                     int comp_offset) {
  std::vector<eng::Term> raw;
  for (size_t c = 0; c < v.size(); ++c) {
    for (const auto& [e, coeff] : v[c].terms()) {
      int t = 0;
      for (int x : e) t = std::max(t, -x);
      eng::Term term;
      term.m.comp = comp_offset + static_cast<int>(c);
      term.m.e.assign(R.nv, 0);
      for (int i = 0; i < ctx.d; ++i) term.m.e[i] = e[i] + t;
      if (ctx.d >= 1) term.m.e[ctx.d] = t;
      term.c = coeff;
      raw.push_back(std::move(term));
    }
  }
  return eng::normalize(R, std::move(raw));
}

PolyVec from_internal(const eng::Ring& R, const RingCtx& ctx,
                      const eng::Vec& v, int ambient, int comp_offset = 0) {
  PolyVec out = pv_zero(ctx, ambient);
  for (const auto& t : v) {
    int c = t.m.comp - comp_offset;
    if (c < 0 || c >= ambient)
      throw Error(ErrorKind::internal_error, "component out of range");
    Exp e(ctx.d, 0);
    int ue = ctx.d >= 1 ? t.m.e[ctx.d] : 0;
    for (int i = 0; i < ctx.d; ++i) e[i] = t.m.e[i] - ue;
    out[c].set_coeff(e, add_mod(out[c].coeff(e), t.c, ctx.n));
  }
  return out;
}

// u * x_1...x_d - 1 times the basis vector of component c
eng::Vec laurent_relation(const eng::Ring& R, int comp) {
  eng::Term hi, lo;
  hi.m.comp = comp;
  hi.m.e.assign(R.nv, 1);
  hi.c = 1;
  lo.m.comp = comp;
  lo.m.e.assign(R.nv, 0);
  lo.c = R.q - 1;
  return eng::normalize(R, {hi, lo});
}

}  // namespace

struct GBModule::Impl {
  eng::Ring R;
  std::vector<eng::Vec> gb;
};

GBModule::GBModule(RingCtx ctx, int ambient, PolyMat gens)
    : ctx_(ctx), ambient_(ambient), gens_(std::move(gens)) {
  require_gb_support(ctx_, "groebner_basis");
  auto impl = std::make_shared<Impl>();
  impl->R = make_engine_ring(ctx_);
  std::vector<eng::Vec> input;
  for (const auto& g : gens_) {
    if (static_cast<int>(g.size()) != ambient_)
      throw Error(ErrorKind::ring_context_mismatch,
                  "generator length != ambient rank");
    auto v = to_internal(impl->R, ctx_, g, 0);
    if (!v.empty()) input.push_back(std::move(v));
  }
  if (ctx_.d >= 1)
    for (int c = 0; c < ambient_; ++c)
      input.push_back(laurent_relation(impl->R, c));
  impl->gb = eng::buchberger(impl->R, std::move(input));
  impl_ = std::move(impl);
}

const eng::Ring& GBModule::engine_ring() const { return impl_->R; }
const std::vector<eng::Vec>& GBModule::basis() const { return impl_->gb; }

bool GBModule::contains(const PolyVec& v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw Error(ErrorKind::ring_context_mismatch, "vector length mismatch");
  auto iv = to_internal(impl_->R, ctx_, v, 0);
  return eng::normal_form(impl_->R, impl_->gb, std::move(iv)).empty();
}

bool GBModule::contains_all(const PolyMat& vs) const {
  for (const auto& v : vs)
    if (!contains(v)) return false;
  return true;
}

PolyVec GBModule::normal_form(const PolyVec& v) const {
  auto iv = to_internal(impl_->R, ctx_, v, 0);
  auto nf = eng::normal_form(impl_->R, impl_->gb, std::move(iv));
  return from_internal(impl_->R, ctx_, nf, ambient_);
}

// Kernel/solve both go through the graph module {(A y, y)} with the image
// block dominant in the position-over-term order: Groebner elements whose
// image block vanishes have kernel elements as their coordinate block, and
// the normal form of (target, 0) reaches (0, -y) exactly when target = A y.
namespace {

struct GraphGB {
  eng::Ring R;
  std::vector<eng::Vec> gb;
  RingCtx ctx;
  int b = 0, a = 0;  // codomain rank, domain rank
};

GraphGB graph_gb(RingCtx ctx, const PolyMat& cols, int codomain_rank) {
  require_gb_support(ctx, "kernel/solve");
  GraphGB g;
  g.ctx = ctx;
  g.b = codomain_rank;
  g.a = static_cast<int>(cols.size());
  g.R = make_engine_ring(ctx);
  std::vector<eng::Vec> input;
  for (int j = 0; j < g.a; ++j) {
    if (static_cast<int>(cols[j].size()) != codomain_rank)
      throw Error(ErrorKind::ring_context_mismatch, "column length mismatch");
    PolyVec stacked = cols[j];
    stacked.resize(g.b + g.a, Poly::zero(ctx));
    stacked[g.b + j] = Poly::constant(ctx, 1);
    input.push_back(to_internal(g.R, ctx, stacked, 0));
  }
  if (ctx.d >= 1)
    for (int c = 0; c < g.b + g.a; ++c)
      input.push_back(laurent_relation(g.R, c));
  g.gb = eng::buchberger(g.R, std::move(input));
  return g;
}

}  // namespace

PolyMat kernel_of_map(RingCtx ctx, const PolyMat& cols, int codomain_rank) {
  if (cols.empty()) return PolyMat{};
  GraphGB g = graph_gb(ctx, cols, codomain_rank);
  PolyMat out;
  for (const auto& v : g.gb) {
    if (v.empty()) continue;
    if (v[0].m.comp < g.b) continue;  // image block present
    // all monomials live in components >= b: a kernel element
    PolyVec full = from_internal(g.R, ctx, v, g.b + g.a);
    PolyVec tail(full.begin() + g.b, full.end());
    if (!pv_is_zero(tail)) out.push_back(std::move(tail));
  }
  // deterministic order (largest first is engine order; keep as-is)
  return out;
}

std::optional<PolyVec> solve_in_image(RingCtx ctx, const PolyMat& cols,
                                      int codomain_rank,
                                      const PolyVec& target) {
  if (static_cast<int>(target.size()) != codomain_rank)
    throw Error(ErrorKind::ring_context_mismatch, "target length mismatch");
  if (pv_is_zero(target)) return pv_zero(ctx, static_cast<int>(cols.size()));
  if (cols.empty()) return std::nullopt;
  GraphGB g = graph_gb(ctx, cols, codomain_rank);
  PolyVec stacked = target;
  stacked.resize(g.b + g.a, Poly::zero(ctx));
  auto nf = eng::normal_form(g.R, g.gb, to_internal(g.R, ctx, stacked, 0));
  for (const auto& t : nf)
    if (t.m.comp < g.b) return std::nullopt;  // image block irreducible
  PolyVec full = from_internal(g.R, ctx, nf, g.b + g.a);
  PolyVec y(full.begin() + g.b, full.end());
  // target - A*(-y) reduced to zero, so target = A * (-y)
  for (auto& p : y) p = -p;
  return y;
}

PolyMat intersect_modules(RingCtx ctx, const PolyMat& A, const PolyMat& B,
                          int ambient) {
  if (A.empty() || B.empty()) return PolyMat{};
  PolyMat joint = A;
  joint.insert(joint.end(), B.begin(), B.end());
  PolyMat ker = kernel_of_map(ctx, joint, ambient);
  PolyMat out;
  for (const auto& yz : ker) {
    PolyVec el = pv_zero(ctx, ambient);
    for (size_t j = 0; j < A.size(); ++j)
      el = pv_add(el, pv_scale(A[j], yz[j]));
    if (!pv_is_zero(el)) out.push_back(std::move(el));
  }
  return out;
}

PolyMat subquotient_relations(RingCtx ctx, const PolyMat& gens,
                              const PolyMat& sub, int ambient) {
  if (gens.empty()) return PolyMat{};
  PolyMat joint = gens;
  joint.insert(joint.end(), sub.begin(), sub.end());
  PolyMat ker = kernel_of_map(ctx, joint, ambient);
  PolyMat out;
  for (const auto& yz : ker) {
    PolyVec y(yz.begin(), yz.begin() + static_cast<long>(gens.size()));
    if (!pv_is_zero(y)) out.push_back(std::move(y));
  }
  return out;
}

PolyMat mat_transpose(const PolyMat& cols, int rows) {
  PolyMat out;
  if (cols.empty()) return out;
  RingCtx ctx = cols[0][0].ctx();
  out.assign(rows, pv_zero(ctx, static_cast<int>(cols.size())));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i) out[i][j] = cols[j][i];
  return out;
}

PolyMat mat_conj_transpose(const PolyMat& cols, int rows) {
  PolyMat out = mat_transpose(cols, rows);
  for (auto& col : out)
    for (auto& p : col) p = p.involuted();
  return out;
}

bool ext_vanishes(RingCtx ctx, int g, const PolyMat& relations, int i) {
  require_gb_support(ctx, "ext");
  if (i < 1) throw Error(ErrorKind::validation_error, "ext index must be >= 1");
  // free resolution ... -> R^{s2} -> R^{s1} -> R^g -> M -> 0 by iterated
  // syzygies; Ext^i(M, R) = ker(C_{i+1}^T) / im(C_i^T)
  std::vector<PolyMat> maps;       // C_1 = relations, C_2 = syz C_1, ...
  std::vector<int> domains;        // rank of the domain of C_j
  PolyMat cur = relations;
  int cur_codomain = g;
  for (int lvl = 0; lvl <= i; ++lvl) {
    maps.push_back(cur);
    domains.push_back(static_cast<int>(cur.size()));
    if (lvl == i) break;
    cur = kernel_of_map(ctx, cur, cur_codomain);  // syzygies
    cur_codomain = domains.back();
  }
  const PolyMat& Ci = maps[i - 1];
  const PolyMat& Cip1 = maps[i];
  if (Ci.empty()) return true;  // module at level i-1 already free
  // test ker(C_{i+1}^T : R^{s_i} -> R^{s_{i+1}}) subseteq im(C_i^T)
  int cod_i = (i == 1) ? g : domains[i - 2];
  PolyMat ker;
  if (Cip1.empty()) {
    // next map zero: kernel is everything; Ext^i = R^{s_i}/im(C_i^T)
    // test each basis vector of R^{s_i}
    ker.clear();
    int rank = static_cast<int>(Ci.size());
    for (int j = 0; j < rank; ++j) {
      PolyVec e = pv_zero(ctx, rank);
      e[j] = Poly::constant(ctx, 1);
      ker.push_back(std::move(e));
    }
  } else {
    PolyMat Cip1T = mat_transpose(Cip1, static_cast<int>(Ci.size()));
    ker = kernel_of_map(ctx, Cip1T, static_cast<int>(Cip1.size()));
  }
  if (ker.empty()) return true;
  GBModule image(ctx, static_cast<int>(Ci.size()),
                 mat_transpose(Ci, cod_i));
  return image.contains_all(ker);
}

// ---------------------------------------------------------------------------
// finite quotient groups
// ---------------------------------------------------------------------------

struct FiniteQuotient::Impl {
  eng::Ring R;
  std::vector<eng::Vec> gb;
  std::vector<eng::Mono> staircase;          // monomials with v(m) > 0
  std::map<std::pair<int, std::vector<int>>, int> index;  // (comp, e) -> pos
  std::vector<unsigned> val;                 // v(m)
  IMat U;                                    // SNF row transform
  std::vector<int> kept_rows;                // rows with diag > 1
  std::vector<u64> diag_kept;
};

namespace {

// v(m) = min valuation among basis leads dividing m (r if none)
unsigned staircase_val(const eng::Ring& R, const std::vector<eng::Vec>& gb,
                       const eng::Mono& m) {
  unsigned best = R.r;
  for (const auto& g : gb) {
    if (g.empty()) continue;
    if (!eng::mono_divides(g[0].m, m)) continue;
    unsigned v = 0;
    u64 c = g[0].c;
    while (c % R.p == 0) {
      c /= R.p;
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

}  // namespace

FiniteQuotient finite_quotient(RingCtx ctx, int ambient,
                               const PolyMat& relations,
                               long staircase_budget) {
  require_gb_support(ctx, "finite_quotient");
  FiniteQuotient out;
  out.ctx = ctx;
  out.ambient = ambient;
  auto impl = std::make_shared<FiniteQuotient::Impl>();
  impl->R = make_engine_ring(ctx);

  std::vector<eng::Vec> input;
  for (const auto& rel : relations) {
    if (static_cast<int>(rel.size()) != ambient)
      throw Error(ErrorKind::ring_context_mismatch,
                  "relation length != ambient rank");
    auto v = to_internal(impl->R, ctx, rel, 0);
    if (!v.empty()) input.push_back(std::move(v));
  }
  if (ctx.d >= 1)
    for (int c = 0; c < ambient; ++c)
      input.push_back(laurent_relation(impl->R, c));
  impl->gb = eng::buchberger(impl->R, std::move(input));

  // finiteness: for each component, the unit-lead monomial ideal must contain
  // a pure power of every internal variable
  int nv = impl->R.nv;
  std::vector<std::vector<int>> caps(ambient, std::vector<int>(nv, -1));
  for (const auto& g : impl->gb) {
    u64 c = g[0].c;
    if (c % impl->R.p == 0) continue;  // not a unit lead
    int comp = g[0].m.comp;
    int nzvar = -1, nz = 0;
    for (int i = 0; i < nv; ++i)
      if (g[0].m.e[i] > 0) {
        ++nz;
        nzvar = i;
      }
    if (nz == 0) {
      // unit constant lead: the whole component collapses
      for (int i = 0; i < nv; ++i) caps[comp][i] = 0;
    } else if (nz == 1) {
      int cur = caps[comp][nzvar];
      int e = g[0].m.e[nzvar];
      caps[comp][nzvar] = cur < 0 ? e : std::min(cur, e);
    }
  }
  bool finite = true;
  for (int c = 0; c < ambient && finite; ++c) {
    bool collapsed =
        nv > 0 && std::all_of(caps[c].begin(), caps[c].end(),
                              [](int x) { return x == 0; });
    if (nv == 0) continue;  // the base ring Z_q is itself finite
    if (collapsed) continue;
    for (int i = 0; i < nv; ++i)
      if (caps[c][i] < 0) finite = false;
  }
  out.finite = finite;
  if (!finite) return out;

  // enumerate the staircase
  long count_guard = 0;
  for (int c = 0; c < ambient; ++c) {
    std::vector<int> cur(nv, 0);
    bool done = false;
    if (nv == 0) {
      eng::Mono m{c, {}};
      unsigned v = staircase_val(impl->R, impl->gb, m);
      if (v > 0) {
        impl->staircase.push_back(m);
        impl->val.push_back(v);
      }
      continue;
    }
    while (!done) {
      if (++count_guard > staircase_budget)
        throw Error(ErrorKind::budget_exhausted,
                    "staircase enumeration budget exhausted");
      eng::Mono m{c, cur};
      // skip monomials divisible by a unit lead; keep v(m) > 0
      unsigned v = staircase_val(impl->R, impl->gb, m);
      if (v > 0) {
        impl->staircase.push_back(m);
        impl->val.push_back(v);
      }
      // advance within the cap box
      int i = nv - 1;
      while (i >= 0) {
        cur[i] += 1;
        if (cur[i] < std::max(caps[c][i], 1)) break;
        cur[i] = 0;
        --i;
      }
      if (i < 0) done = true;
    }
  }
  int B = static_cast<int>(impl->staircase.size());
  for (int i = 0; i < B; ++i)
    impl->index[{impl->staircase[i].comp, impl->staircase[i].e}] = i;

  u64 order = 1;
  for (int i = 0; i < B; ++i)
    for (unsigned k = 0; k < impl->val[i]; ++k) {
      if (order > (u64(1) << 62) / impl->R.p)
        throw Error(ErrorKind::budget_exhausted, "quotient order overflow");
      order *= impl->R.p;
    }
  out.order = order;

  // integer relation matrix: columns p^{v(m)} e_m - NF(p^{v(m)} m), plus q e_m
  IMat A(B);
  for (int i = 0; i < B; ++i) A[i].assign(2 * B, 0);
  for (int i = 0; i < B; ++i) {
    u64 pv = 1;
    for (unsigned k = 0; k < impl->val[i]; ++k) pv *= impl->R.p;
    eng::Vec v{eng::Term{impl->staircase[i], pv % impl->R.q}};
    if (pv % impl->R.q == 0) v.clear();
    auto nf = eng::normal_form(impl->R, impl->gb, std::move(v));
    A[i][i] += static_cast<i64>(pv);
    for (const auto& t : nf) {
      auto it = impl->index.find({t.m.comp, t.m.e});
      if (it == impl->index.end())
        throw Error(ErrorKind::internal_error,
                    "normal form left the staircase");
      A[it->second][i] -= static_cast<i64>(t.c);
    }
    A[i][B + i] = static_cast<i64>(impl->R.q);
  }
  SmithInt snf = smith_int(A);
  for (int i = 0; i < B; ++i) {
    i64 d = i < static_cast<int>(snf.diag.size()) ? snf.diag[i] : 0;
    if (d < 0) d = -d;
    if (d == 0)
      throw Error(ErrorKind::internal_error,
                  "finite quotient produced a zero invariant factor");
    if (d > 1) {
      impl->kept_rows.push_back(i);
      impl->diag_kept.push_back(static_cast<u64>(d));
    }
  }
  impl->U = snf.U;
  out.factors = impl->diag_kept;

  // generator representatives: columns of U^{-1} at kept rows
  for (size_t gi = 0; gi < impl->kept_rows.size(); ++gi) {
    int row = impl->kept_rows[gi];
    PolyVec rep = pv_zero(ctx, ambient);
    for (int m = 0; m < B; ++m) {
      i64 coef = snf.Uinv[m][row];
      i64 q = static_cast<i64>(ctx.n);
      u64 cc = static_cast<u64>(((coef % q) + q) % q);
      if (cc == 0) continue;
      // externalize the staircase monomial
      const auto& mono = impl->staircase[m];
      Exp e(ctx.d, 0);
      int ue = ctx.d >= 1 ? mono.e[ctx.d] : 0;
      for (int i = 0; i < ctx.d; ++i) e[i] = mono.e[i] - ue;
      rep[mono.comp] =
          rep[mono.comp] + Poly::monomial(ctx, e, cc);
    }
    out.gen_reps.push_back(std::move(rep));
  }
  out.impl = std::move(impl);

  // verify the claimed order equals the product of the invariant factors
  u64 prod = 1;
  for (u64 f : out.factors) prod *= f;
  if (prod != out.order)
    throw Error(ErrorKind::internal_error,
                "invariant factor product mismatch against staircase order");
  return out;
}

std::vector<u64> FiniteQuotient::coords(const PolyVec& v) const {
  if (!finite)
    throw Error(ErrorKind::validation_error,
                "coordinates undefined for infinite quotient");
  const Impl& im = *impl;
  eng::Vec iv;
  {
    // internalize exactly (class-preserving)
    std::vector<eng::Term> raw;
    for (size_t c = 0; c < v.size(); ++c)
      for (const auto& [e, coeff] : v[c].terms()) {
        int t = 0;
        for (int x : e) t = std::max(t, -x);
        eng::Term term;
        term.m.comp = static_cast<int>(c);
        term.m.e.assign(im.R.nv, 0);
        for (int i = 0; i < ctx.d; ++i) term.m.e[i] = e[i] + t;
        if (ctx.d >= 1) term.m.e[ctx.d] = t;
        term.c = coeff;
        raw.push_back(std::move(term));
      }
    iv = eng::normalize(im.R, std::move(raw));
  }
  auto nf = eng::normal_form(im.R, im.gb, std::move(iv));
  int B = static_cast<int>(im.staircase.size());
  std::vector<i64> w(B, 0);
  for (const auto& t : nf) {
    auto it = im.index.find({t.m.comp, t.m.e});
    if (it == im.index.end())
      throw Error(ErrorKind::internal_error, "normal form left the staircase");
    w[it->second] = static_cast<i64>(t.c);
  }
  std::vector<u64> out(im.kept_rows.size(), 0);
  for (size_t gi = 0; gi < im.kept_rows.size(); ++gi) {
    int row = im.kept_rows[gi];
    i64 acc = 0;
    for (int m = 0; m < B; ++m) acc += im.U[row][m] * w[m];
    i64 d = static_cast<i64>(im.diag_kept[gi]);
    out[gi] = static_cast<u64>(((acc % d) + d) % d);
  }
  return out;
}

QuotientPresentation quotient_presentation(RingCtx ctx, int ambient,
                                           const PolyMat& sub) {
  require_gb_support(ctx, "quotient presentation");
  QuotientPresentation out;
  out.ctx = ctx;
  out.ambient = ambient;
  out.relations = sub;
  FiniteQuotient fq = finite_quotient(ctx, ambient, sub);
  out.finite = fq.finite;
  if (fq.finite) {
    out.order = fq.order;
    out.factors = fq.factors;
  }
  if (ctx.d == 1 && Modulus(ctx.n).is_prime()) {
    if (sub.empty()) {
      out.free_rank = ambient;
    } else {
      PolyRows rows(ambient, std::vector<Poly>(sub.size(), Poly::zero(ctx)));
      for (size_t j = 0; j < sub.size(); ++j) {
        for (int i = 0; i < ambient; ++i) rows[i][j] = sub[j][i];
      }
      SmithPolyResult s = smith_poly(ctx, std::move(rows));
      for (int t = 0; t < s.rank; ++t) {
        if (!(s.diag[t] == Poly::constant(ctx, 1))) {
          out.poly_factors.push_back(s.diag[t]);
        }
      }
      out.free_rank = ambient - s.rank;
    }
  }
  return out;
}

PolyMat dual_presentation(RingCtx ctx, int ambient, const PolyMat& relations) {
  require_gb_support(ctx, "dual presentation");
  if (relations.empty()) {
    PolyMat out;
    for (int i = 0; i < ambient; ++i) {
      PolyVec e = pv_zero(ctx, ambient);
      e[i] = Poly::constant(ctx, 1);
      out.push_back(std::move(e));
    }
    return out;
  }
  PolyMat at = mat_conj_transpose(relations, ambient);
  return kernel_of_map(ctx, at, static_cast<int>(relations.size()));
}

QuotientPresentation ext1(RingCtx ctx, int ambient, const PolyMat& relations) {
  require_gb_support(ctx, "ext presentation");
  if (relations.empty()) {
    QuotientPresentation out;
    out.ctx = ctx;
    out.finite = true;
    out.order = 1;
    return out;
  }
  const int r = static_cast<int>(relations.size());
  PolyMat syz = kernel_of_map(ctx, relations, ambient);
  PolyMat at = mat_conj_transpose(relations, ambient);
  PolyMat ker;
  if (syz.empty()) {
    for (int i = 0; i < r; ++i) {
      PolyVec e = pv_zero(ctx, r);
      e[i] = Poly::constant(ctx, 1);
      ker.push_back(std::move(e));
    }
  } else {
    PolyMat bt = mat_conj_transpose(syz, r);
    ker = kernel_of_map(ctx, bt, static_cast<int>(syz.size()));
  }
  if (ker.empty()) {
    QuotientPresentation out;
    out.ctx = ctx;
    out.finite = true;
    out.order = 1;
    return out;
  }
  return quotient_presentation(
      ctx, static_cast<int>(ker.size()),
      subquotient_relations(ctx, ker, at, r));
}

}  // namespace stabmod
