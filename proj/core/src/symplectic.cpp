#include "stabmod/symplectic.hpp"

#include <algorithm>
#include <sstream>

namespace stabmod {

void StabilizerCode::validate_shapes() const {
  if (m <= 0)
    throw Error(ErrorKind::validation_error, "site count m must be positive");
  for (const auto& col : sigma) {
    if (static_cast<int>(col.size()) != 2 * m)
      throw Error(ErrorKind::validation_error,
                  "sigma column length must be 2m");
    for (const auto& p : col)
      if (!(p.ctx() == ctx))
        throw Error(ErrorKind::ring_context_mismatch,
                    "sigma entry ring context mismatch");
  }
}

StabilizerCode StabilizerCode::component(const PrimePower& pp) const {
  StabilizerCode out;
  out.ctx = RingCtx{pp.q, ctx.d};
  out.m = m;
  out.name = name.empty() ? name : name + "@" + std::to_string(pp.q);
  for (const auto& col : sigma) {
    PolyVec c;
    c.reserve(col.size());
    for (const auto& p : col) c.push_back(p.with_modulus(pp.q));
    out.sigma.push_back(std::move(c));
  }
  return out;
}

std::string StabilizerCode::canonical_serialization() const {
  std::ostringstream os;
  os << "n=" << ctx.n << ";d=" << ctx.d << ";m=" << m << ";g=" << g() << ";";
  for (const auto& col : sigma) {
    os << "[";
    for (size_t i = 0; i < col.size(); ++i)
      os << (i ? "," : "") << col[i].str();
    os << "]";
  }
  return os.str();
}

Poly omega_form(int m, const PolyVec& p, const PolyVec& q) {
  if (p.size() != q.size() || static_cast<int>(p.size()) != 2 * m)
    throw Error(ErrorKind::ring_context_mismatch, "omega operand shape");
  Poly acc = Poly::zero(p[0].ctx());
  for (int j = 0; j < m; ++j) {
    acc = acc + p[m + j].involuted() * q[j];
    acc = acc - p[j].involuted() * q[m + j];
  }
  return acc;
}

u64 omega_scalar(int m, const PolyVec& p, const PolyVec& q) {
  return omega_form(m, p, q).constant_term();
}

bool is_isotropic(const StabilizerCode& code, bool throwing) {
  code.validate_shapes();
  for (int i = 0; i < code.g(); ++i)
    for (int j = i; j < code.g(); ++j) {
      Poly w = omega_form(code.m, code.sigma[i], code.sigma[j]);
      if (!w.is_zero()) {
        if (throwing)
          throw Error(ErrorKind::validation_error,
                      "generators " + std::to_string(i + 1) + " and " +
                          std::to_string(j + 1) +
                          " do not commute: Omega = " + w.str());
        return false;
      }
    }
  return true;
}

namespace {

// columns of the map p -> (Omega(sigma_i, p))_i, i.e. image of basis vectors
PolyMat omega_constraint_columns(const StabilizerCode& code) {
  PolyMat cols;
  RingCtx ctx = code.ctx;
  for (int c = 0; c < 2 * code.m; ++c) {
    PolyVec e = pv_zero(ctx, 2 * code.m);
    e[c] = Poly::constant(ctx, 1);
    PolyVec vals = pv_zero(ctx, code.g());
    for (int i = 0; i < code.g(); ++i)
      vals[i] = omega_form(code.m, code.sigma[i], e);
    cols.push_back(std::move(vals));
  }
  return cols;
}

}  // namespace

PolyMat symplectic_complement(const StabilizerCode& code) {
  require_gb_support(code.ctx, "symplectic_complement");
  return kernel_of_map(code.ctx, omega_constraint_columns(code), code.g());
}

LagrangianCertificate is_lagrangian(const StabilizerCode& code,
                                    int torus_budget) {
  LagrangianCertificate cert;
  cert.isotropic = is_isotropic(code);
  if (!cert.isotropic) {
    cert.tier = CertTier::exact;
    cert.detail = "not isotropic";
    return cert;
  }
  Modulus mod(code.ctx.n);
  bool all_supported = true;
  for (const auto& f : mod.factors)
    if (!gb_ring_supported(f.p, f.r, code.ctx.d)) all_supported = false;

  if (all_supported) {
    cert.tier = CertTier::exact;
    cert.lagrangian = true;
    for (const auto& f : mod.factors) {
      StabilizerCode comp = code.component(f);
      PolyMat perp = symplectic_complement(comp);
      GBModule L(comp.ctx, 2 * comp.m, comp.sigma);
      if (!L.contains_all(perp)) {
        cert.lagrangian = false;
        cert.detail = "complement strictly larger than L (component Z_" +
                      std::to_string(f.q) + ")";
        break;
      }
    }
    if (cert.lagrangian) cert.detail = "L^perp = L verified by Groebner bases";
    return cert;
  }

  // torus battery: necessary conditions |L_T^perp| = |L_T| on small tori
  cert.tier = CertTier::torus_verified;
  cert.lagrangian = true;
  for (int side = 1; side <= torus_budget; ++side) {
    std::vector<int> sides(code.ctx.d, side);
    TorusDiagnostics diag = torus_diagnostics(code, sides);
    // Lagrangian codes satisfy |L_T^perp/L_T| = (stabilized dim)^2
    FactoredCount sq = diag.stabilized_dim;
    for (auto& [p, e] : sq.exps) e *= 2;
    if (!(sq == diag.discrepancy)) {
      cert.lagrangian = false;
      cert.detail = "torus battery failed at side " + std::to_string(side);
      return cert;
    }
  }
  cert.detail = "torus battery up to side " + std::to_string(torus_budget) +
                " consistent (necessary conditions only)";
  return cert;
}

// ---------------------------------------------------------------------------
// charge module
// ---------------------------------------------------------------------------

ChargeModule charge_module(const StabilizerCode& code) {
  require_gb_support(code.ctx, "charge_module");
  code.validate_shapes();
  RingCtx ctx = code.ctx;
  int g = code.g();
  ChargeModule out;
  out.ctx = ctx;

  // syzygies of sigma; L* = ker(conj(Syz)^T : R^g -> R^s)
  PolyMat syz = kernel_of_map(ctx, code.sigma, 2 * code.m);
  if (syz.empty()) {
    out.lstar_gens.clear();
    for (int i = 0; i < g; ++i) {
      PolyVec e = pv_zero(ctx, g);
      e[i] = Poly::constant(ctx, 1);
      out.lstar_gens.push_back(std::move(e));
    }
  } else {
    // map h -> (sum_i conj(syz_s[i]) h_i)_s; columns are images of e_i
    PolyMat cols;
    for (int i = 0; i < g; ++i) {
      PolyVec vals = pv_zero(ctx, static_cast<int>(syz.size()));
      for (size_t s = 0; s < syz.size(); ++s)
        vals[s] = syz[s][i].involuted();
      cols.push_back(std::move(vals));
    }
    out.lstar_gens =
        kernel_of_map(ctx, cols, static_cast<int>(syz.size()));
  }

  // image of P: functional p |-> Omega(sigma_i, p) per basis vector of P
  out.image_cols = omega_constraint_columns(code);
  out.gen_count = static_cast<int>(out.lstar_gens.size());
  out.relations =
      subquotient_relations(ctx, out.lstar_gens, out.image_cols, g);
  out.image_gb = std::make_shared<GBModule>(ctx, g, out.image_cols);

  FiniteQuotient q = finite_quotient(ctx, out.gen_count, out.relations);
  out.finite = q.finite;
  if (q.finite) {
    out.order = q.order;
    out.invariant_factors = q.factors;
    out.group = std::move(q);
  }
  return out;
}

bool ChargeModule::class_is_zero(const PolyVec& h) const {
  return image_gb->contains(h);
}

PolyVec syndrome_of(const StabilizerCode& code, const PolyVec& p) {
  code.validate_shapes();
  if (static_cast<int>(p.size()) != 2 * code.m) {
    throw Error(ErrorKind::validation_error,
                "syndrome argument must have length 2m");
  }
  for (const auto& f : p) {
    if (f.ctx() != code.ctx) {
      throw Error(ErrorKind::ring_context_mismatch,
                  "syndrome argument must live in the code ring");
    }
  }
  PolyVec out;
  out.reserve(code.g());
  for (const auto& s : code.sigma) out.push_back(omega_form(code.m, s, p));
  return out;
}

DetectorGroup detectors_D0(const StabilizerCode& code) {
  ChargeModule q = charge_module(code);
  DetectorGroup out;
  out.ctx = q.ctx;
  out.gen_count = code.g();
  out.ql_finite = q.finite;
  if (!q.finite) return out;
  out.order = q.order;
  out.factors = q.invariant_factors;
  out.lstar_gens = q.lstar_gens;
  for (const auto& rep : q.group.gen_reps) {
    out.charge_reps.push_back(mat_apply(q.lstar_gens, rep));
  }
  out.group = q.group;
  return out;
}

u64 DetectorGroup::eval(int t, const PolyVec& h) const {
  if (!ql_finite) {
    throw Error(ErrorKind::validation_error,
                "detector evaluation needs a finite charge module");
  }
  if (t < 0 || t >= static_cast<int>(factors.size())) {
    throw Error(ErrorKind::validation_error, "detector index out of range");
  }
  if (static_cast<int>(h.size()) != gen_count) {
    throw Error(ErrorKind::validation_error,
                "charge tuple length must match the generator count");
  }
  auto y = solve_in_image(ctx, lstar_gens, gen_count, h);
  if (!y) {
    throw Error(ErrorKind::validation_error,
                "tuple is not a charge functional");
  }
  std::vector<u64> c = group.coords(*y);
  return mul_mod(ctx.n / factors[t], c[t], ctx.n);
}

// ---------------------------------------------------------------------------
// torus diagnostics
// ---------------------------------------------------------------------------

bool FactoredCount::fits_u64() const {
  long double acc = 1.0L;
  for (const auto& [p, e] : exps)
    for (long i = 0; i < e; ++i) {
      acc *= static_cast<long double>(p);
      if (acc > 1.8e19L) return false;
    }
  return true;
}

u64 FactoredCount::as_u64() const {
  if (!fits_u64())
    throw Error(ErrorKind::budget_exhausted, "count exceeds 64 bits");
  u64 acc = 1;
  for (const auto& [p, e] : exps)
    for (long i = 0; i < e; ++i) acc *= p;
  return acc;
}

std::string FactoredCount::str() const {
  if (fits_u64()) return std::to_string(as_u64());
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : exps) {
    if (e == 0) continue;
    os << (first ? "" : "*") << p << "^" << e;
    first = false;
  }
  return first ? "1" : os.str();
}

namespace {

// dense torus vectors over Z_q: index = (site component, lattice point)
struct TorusIndex {
  std::vector<int> sides;
  int cells = 1;
  explicit TorusIndex(const std::vector<int>& s) : sides(s) {
    for (int x : s) cells *= x;
  }
  int lattice_index(const Exp& e) const {
    int idx = 0;
    for (size_t i = 0; i < sides.size(); ++i) {
      int r = e[i] % sides[i];
      if (r < 0) r += sides[i];
      idx = idx * sides[i] + r;
    }
    return idx;
  }
  int dim(int comps) const { return comps * cells; }
};

// log_p of the size of the Z_q-span of the columns inside (Z_q)^rows, via
// the integer Smith form of [A | q*I]: |span| = q^rows / prod(diag), and all
// invariant factors divide q because q*I is in the lattice
long torus_span_log(const std::vector<std::vector<u64>>& cols, u64 p,
                    unsigned r, u64 q) {
  size_t rows = cols.empty() ? 0 : cols[0].size();
  if (rows == 0) return 0;
  IMat A(rows, std::vector<i64>(cols.size() + rows, 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < rows; ++i) A[i][j] = static_cast<i64>(cols[j][i]);
  for (size_t i = 0; i < rows; ++i)
    A[i][cols.size() + i] = static_cast<i64>(q);
  SmithInt s = smith_int(std::move(A));
  long log_size = static_cast<long>(r) * static_cast<long>(rows);
  for (size_t i = 0; i < rows; ++i) {
    i64 d = i < s.diag.size() ? s.diag[i] : 0;
    if (d < 0) d = -d;
    if (d == 0)
      throw Error(ErrorKind::internal_error, "torus lattice not full rank");
    log_size -= padic_val(static_cast<u64>(d) % q, p, r);
  }
  return log_size;
}

std::vector<std::vector<u64>> torus_translate_columns(
    const StabilizerCode& code, const TorusIndex& ti, u64 q) {
  std::vector<std::vector<u64>> cols;
  int comps = 2 * code.m;
  std::vector<int> cur(code.ctx.d, 0);
  for (;;) {
    for (const auto& gen : code.sigma) {
      std::vector<u64> col(ti.dim(comps), 0);
      for (int c = 0; c < comps; ++c)
        for (const auto& [e, coeff] : gen[c].terms()) {
          Exp shifted = e;
          for (int i = 0; i < code.ctx.d; ++i) shifted[i] += cur[i];
          int idx = c * ti.cells + ti.lattice_index(shifted);
          col[idx] = add_mod(col[idx], coeff % q, q);
        }
      cols.push_back(std::move(col));
    }
    int i = code.ctx.d - 1;
    while (i >= 0) {
      cur[i] += 1;
      if (cur[i] < ti.sides[i]) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return cols;
}

}  // namespace

TorusDiagnostics torus_diagnostics(const StabilizerCode& code,
                                   const std::vector<int>& sides) {
  code.validate_shapes();
  if (static_cast<int>(sides.size()) != code.ctx.d)
    throw Error(ErrorKind::validation_error, "torus side count != d");
  for (int s : sides)
    if (s < 1)
      throw Error(ErrorKind::validation_error, "torus sides must be >= 1");
  TorusIndex ti(sides);
  TorusDiagnostics out;
  out.sides = sides;

  Modulus mod(code.ctx.n);
  long cells = ti.cells;
  for (const auto& f : mod.factors) {
    StabilizerCode comp = code.component(f);
    auto cols = torus_translate_columns(comp, ti, f.q);
    long log_l = torus_span_log(std::move(cols), f.p, f.r, f.q);
    out.group_size.mul_prime(f.p, log_l);
    // n^{m Pi T}: contributes p^{r * m * cells}
    out.stabilized_dim.mul_prime(f.p, f.r * code.m * cells - log_l);
    out.discrepancy.mul_prime(f.p, 2 * f.r * code.m * cells - 2 * log_l);
  }
  return out;
}

bool torus_membership(const StabilizerCode& code, const std::vector<int>& sides,
                      const PolyVec& v) {
  TorusIndex ti(sides);
  Modulus mod(code.ctx.n);
  for (const auto& f : mod.factors) {
    StabilizerCode comp = code.component(f);
    auto cols = torus_translate_columns(comp, ti, f.q);
    // append v and compare span sizes
    std::vector<u64> vcol(ti.dim(2 * code.m), 0);
    for (int c = 0; c < 2 * code.m; ++c)
      for (const auto& [e, coeff] : v[c].terms()) {
        int idx = c * ti.cells + ti.lattice_index(e);
        vcol[idx] = add_mod(vcol[idx], coeff % f.q, f.q);
      }
    long base = torus_span_log(cols, f.p, f.r, f.q);
    cols.push_back(std::move(vcol));
    long ext = torus_span_log(std::move(cols), f.p, f.r, f.q);
    if (ext != base) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// coarse-graining
// ---------------------------------------------------------------------------

CoarseGrainResult coarse_grain(const StabilizerCode& code, const IMat& lambda) {
  code.validate_shapes();
  int d = code.ctx.d;
  if (static_cast<int>(lambda.size()) != d)
    throw Error(ErrorKind::validation_error, "lambda must be d x d");
  IMat H = hnf_cols(lambda);
  auto cosets = coset_reps(lambda);
  int D = static_cast<int>(cosets.size());
  std::map<std::vector<i64>, int> coset_index;
  for (int i = 0; i < D; ++i) coset_index[cosets[i]] = i;

  CoarseGrainResult out;
  out.cosets = cosets;
  out.code.ctx = code.ctx;  // same n and d; variables now index Lambda Z^d
  out.code.m = code.m * D;
  out.code.name = code.name.empty() ? "" : code.name + "-coarse";

  for (const auto& gen : code.sigma) {
    // one new generator per original generator per coset shift
    for (int ci = 0; ci < D; ++ci) {
      PolyVec ncol = pv_zero(code.ctx, 2 * out.code.m);
      for (int c = 0; c < 2 * code.m; ++c) {
        bool zpart = c >= code.m;
        int site = zpart ? c - code.m : c;
        for (const auto& [e, coeff] : gen[c].terms()) {
          // translate by the coset rep, then split lambda' = Lambda mu + rep
          std::vector<i64> lam(d);
          for (int i = 0; i < d; ++i) lam[i] = e[i] + cosets[ci][i];
          std::vector<i64> mult;
          std::vector<i64> rep = lattice_reduce(H, lam, &mult);
          auto it = coset_index.find(rep);
          if (it == coset_index.end())
            throw Error(ErrorKind::internal_error, "coset rep missing");
          Exp mu(d, 0);
          for (int i = 0; i < d && i < static_cast<int>(mult.size()); ++i)
            mu[i] = static_cast<int>(mult[i]);
          int nsite = site * D + it->second;
          int ncomp = zpart ? out.code.m + nsite : nsite;
          ncol[ncomp].set_coeff(
              mu, add_mod(ncol[ncomp].coeff(mu), coeff, code.ctx.n));
        }
      }
      out.code.sigma.push_back(std::move(ncol));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// split check
// ---------------------------------------------------------------------------

SplitCheckResult split_check(const StabilizerCode& code) {
  require_gb_support(code.ctx, "split_check");
  code.validate_shapes();
  RingCtx ctx = code.ctx;
  int g = code.g(), twoM = 2 * code.m;
  SplitCheckResult out;

  // sigma * T * sigma = sigma as a linear system in the g*2m entries of T:
  // unknown t_{i,c}; equation for (component c', generator j):
  //   sum_{i,c} sigma[i][c'] * t_{i,c} * sigma[j][c] = sigma[j][c']
  PolyMat cols;
  for (int i = 0; i < g; ++i)
    for (int c = 0; c < twoM; ++c) {
      PolyVec col = pv_zero(ctx, twoM * g);
      for (int cp = 0; cp < twoM; ++cp)
        for (int j = 0; j < g; ++j)
          col[cp * g + j] = code.sigma[i][cp] * code.sigma[j][c];
      cols.push_back(std::move(col));
    }
  PolyVec target = pv_zero(ctx, twoM * g);
  for (int cp = 0; cp < twoM; ++cp)
    for (int j = 0; j < g; ++j) target[cp * g + j] = code.sigma[j][cp];
  auto sol = solve_in_image(ctx, cols, twoM * g, target);
  out.split = sol.has_value();
  if (sol) {
    // repackage T as g columns of length 2m? store as 2m columns of length g:
    // retraction rho = sigma T : P -> P has matrix sigma * T
    PolyMat T;
    for (int c = 0; c < twoM; ++c) {
      PolyVec col = pv_zero(ctx, g);
      for (int i = 0; i < g; ++i) col[i] = (*sol)[i * twoM + c];
      T.push_back(std::move(col));
    }
    out.retraction = T;
  }

  ChargeModule q = charge_module(code);
  out.ql_zero = q.finite && q.order == 1;

  // L free: split => free; (not split and Q_L = 0) => not free; otherwise
  // syzygy vanishing or (prime n) Ext vanishing decides
  PolyMat syz = kernel_of_map(ctx, code.sigma, twoM);
  if (out.split) {
    out.l_free = true;
  } else if (out.ql_zero) {
    out.l_free = false;
  } else if (syz.empty()) {
    out.l_free = true;
  } else {
    Modulus mod(ctx.n);
    if (mod.is_prime()) {
      // L = R^g / syz; projective iff Ext^i(L, R) = 0 for i = 1..d
      bool all = true;
      for (int i = 1; i <= ctx.d && all; ++i)
        all = ext_vanishes(ctx, g, syz, i);
      out.l_free = all;
    } else {
      out.l_free = false;
      out.l_free_certified = false;
    }
  }
  return out;
}

}  // namespace stabmod
