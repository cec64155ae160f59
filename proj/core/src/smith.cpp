#include "stabmod/smith.hpp"

#include <algorithm>

namespace stabmod {

namespace {

void require_pid(const RingCtx& ctx) {
  Modulus m(ctx.n);
  if (!m.is_prime() || ctx.d != 1)
    throw Error(ErrorKind::unsupported_ring,
                "Smith form over F_p[x^±] requires prime modulus and d = 1");
}

// lowest and highest exponents of a nonzero univariate polynomial
int lo_exp(const Poly& f) { return f.support_box().first[0]; }
int hi_exp(const Poly& f) { return f.support_box().second[0]; }
int span(const Poly& f) { return hi_exp(f) - lo_exp(f); }

u64 lead_coeff(const Poly& f) {
  return f.coeff(Exp{hi_exp(f)});
}

}  // namespace

Poly normalize_univariate(const Poly& f) {
  if (f.is_zero()) return f;
  Poly g = f.shifted(Exp{-lo_exp(f)});
  auto inv = inv_mod(lead_coeff(g), g.ctx().n);
  if (!inv)
    throw Error(ErrorKind::internal_error, "leading coefficient not a unit");
  return g.scaled(*inv);
}

void laurent_divmod(const Poly& f, const Poly& g, Poly& q, Poly& r) {
  if (g.is_zero())
    throw Error(ErrorKind::validation_error, "division by zero polynomial");
  RingCtx ctx = f.ctx();
  q = Poly::zero(ctx);
  r = f;
  u64 ginv = *inv_mod(lead_coeff(g), ctx.n);
  int ghi = hi_exp(g), gspan = span(g);
  while (!r.is_zero() && span(r) >= gspan) {
    // cancel the highest term of r
    int rhi = hi_exp(r);
    u64 c = mul_mod(r.coeff(Exp{rhi}), ginv, ctx.n);
    Poly t = Poly::monomial(ctx, Exp{rhi - ghi}, c);
    q = q + t;
    r = r - t * g;
    // r's span can only shrink relative to its low end; terminate on degree
    if (!r.is_zero() && hi_exp(r) >= rhi)
      throw Error(ErrorKind::internal_error, "division did not reduce degree");
  }
}

Poly laurent_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    laurent_divmod(a, b, q, r);
    a = b;
    b = r;
  }
  return a.is_zero() ? a : normalize_univariate(a);
}

PolyRows poly_rows_identity(RingCtx ctx, int n) {
  PolyRows I(n, std::vector<Poly>(n, Poly::zero(ctx)));
  for (int i = 0; i < n; ++i) I[i][i] = Poly::constant(ctx, 1);
  return I;
}

PolyRows poly_rows_mul(const PolyRows& a, const PolyRows& b) {
  int n = static_cast<int>(a.size());
  int k = n ? static_cast<int>(a[0].size()) : 0;
  int m = b.empty() ? 0 : static_cast<int>(b[0].size());
  if (n == 0 || m == 0) return {};
  PolyRows c(n, std::vector<Poly>(m, Poly::zero(a[0][0].ctx())));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (int j = 0; j < m; ++j) c[i][j] = c[i][j] + a[i][t] * b[t][j];
    }
  return c;
}

SmithPolyResult smith_poly(RingCtx ctx, PolyRows A) {
  require_pid(ctx);
  int rows = static_cast<int>(A.size());
  int cols = rows ? static_cast<int>(A[0].size()) : 0;
  SmithPolyResult out;
  out.U = poly_rows_identity(ctx, rows);
  out.V = poly_rows_identity(ctx, cols);

  auto row_swap = [&](int i, int j) {
    std::swap(A[i], A[j]);
    std::swap(out.U[i], out.U[j]);
  };
  auto col_swap = [&](int i, int j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : out.V) std::swap(row[i], row[j]);
  };
  auto row_addmul = [&](int i, int j, const Poly& c) {  // row_i += c*row_j
    for (int t = 0; t < cols; ++t) A[i][t] = A[i][t] + c * A[j][t];
    for (int t = 0; t < rows; ++t) out.U[i][t] = out.U[i][t] + c * out.U[j][t];
  };
  auto col_addmul = [&](int i, int j, const Poly& c) {  // col_i += c*col_j
    for (auto& row : A) row[i] = row[i] + c * row[j];
    for (auto& row : out.V) row[i] = row[i] + c * row[j];
  };
  auto row_scale = [&](int i, const Poly& c) {
    for (auto& x : A[i]) x = x * c;
    for (auto& x : out.U[i]) x = x * c;
  };

  int lim = std::min(rows, cols);
  int k = 0;
  while (k < lim) {
    // pivot: minimal span nonzero entry in the trailing block
    int pi = -1, pj = -1, best = 0;
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j)
        if (!A[i][j].is_zero()) {
          int s = span(A[i][j]);
          if (pi < 0 || s < best) {
            best = s;
            pi = i;
            pj = j;
          }
        }
    if (pi < 0) break;
    row_swap(k, pi);
    col_swap(k, pj);
    bool clean = true;
    for (int i = k + 1; i < rows; ++i) {
      if (A[i][k].is_zero()) continue;
      Poly q, r;
      laurent_divmod(A[i][k], A[k][k], q, r);
      row_addmul(i, k, -q);
      if (!A[i][k].is_zero()) clean = false;
    }
    for (int j = k + 1; j < cols; ++j) {
      if (A[k][j].is_zero()) continue;
      Poly q, r;
      laurent_divmod(A[k][j], A[k][k], q, r);
      col_addmul(j, k, -q);
      if (!A[k][j].is_zero()) clean = false;
    }
    if (!clean) continue;
    // divisibility of the remaining block by the pivot
    bool fixed = true;
    for (int i = k + 1; i < rows && fixed; ++i)
      for (int j = k + 1; j < cols && fixed; ++j) {
        Poly q, r;
        laurent_divmod(A[i][j], A[k][k], q, r);
        if (!r.is_zero()) {
          row_addmul(k, i, Poly::constant(ctx, 1));
          fixed = false;
        }
      }
    if (!fixed) continue;
    // normalize the pivot to its canonical associate (unit scaling)
    Poly piv = A[k][k];
    Poly canon = normalize_univariate(piv);
    if (!(piv == canon)) {
      // canon = piv * unit, unit = x^{-lo} * lc^{-1}
      int lo = lo_exp(piv);
      u64 lc = piv.coeff(Exp{hi_exp(piv)});
      Poly unit = Poly::monomial(ctx, Exp{-lo}, *inv_mod(lc, ctx.n));
      row_scale(k, unit);
    }
    ++k;
  }
  out.rank = k;
  out.diag.assign(lim, Poly::zero(ctx));
  for (int i = 0; i < k; ++i) out.diag[i] = A[i][i];
  return out;
}

}  // namespace stabmod
