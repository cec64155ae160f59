#include "stabmod/series.hpp"

#include <algorithm>
#include <map>

#include "stabmod/laurent_gb.hpp"
#include "stabmod/smith.hpp"

namespace stabmod {
namespace {

void require_univariate(const RingCtx& ctx, const char* what) {
  if (ctx.d != 1) {
    throw Error(ErrorKind::unsupported_ring,
                std::string(what) + " requires a one-variable Laurent ring");
  }
}

// p-adic valuation of a polynomial: min over coefficients, r when zero
unsigned poly_val(const Poly& f, const PrimePower& pp) {
  unsigned v = pp.r;
  for (const auto& [e, c] : f.terms()) v = std::min(v, padic_val(c, pp.p, pp.r));
  return v;
}

// exact coefficient-wise division by p^s (least residues; throws if inexact)
Poly poly_div_ppow(const Poly& f, const PrimePower& pp, unsigned s) {
  u64 ps = 1;
  for (unsigned i = 0; i < s; ++i) ps *= pp.p;
  Poly out(f.ctx());
  for (const auto& [e, c] : f.terms()) {
    if (c % ps != 0) {
      throw Error(ErrorKind::internal_error,
                  "inexact p-power division in series arithmetic");
    }
    out.set_coeff(e, c / ps);
  }
  return out;
}

// trailing/leading exponents of a univariate polynomial
int trail_exp(const Poly& f) {
  int t = 0;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (first || e[0] < t) t = e[0];
    first = false;
  }
  return t;
}
int head_exp(const Poly& f) {
  int h = 0;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (first || e[0] > h) h = e[0];
    first = false;
  }
  return h;
}

// replace f/g by A/mu^r where mu keeps exactly the unit coefficients of g.
// mu == g mod p, so g = mu + nu with nu^r = 0 and
// 1/g = sum_{i<r} (-1)^i nu^i mu^{r-1-i} / mu^r. All nonzero coefficients of
// mu (hence of its leading and trailing terms) are units.
struct UnitDen {
  Poly num;
  Poly den;  // all nonzero coefficients are units mod p
};
UnitDen unit_denominator(const RationalFn& f, const PrimePower& pp) {
  Poly mu(f.den.ctx());
  for (const auto& [e, c] : f.den.terms()) {
    if (padic_val(c, pp.p, pp.r) == 0) mu.set_coeff(e, c);
  }
  if (mu.is_zero()) {
    throw Error(ErrorKind::validation_error,
                "series denominator vanishes mod p and is not invertible");
  }
  if (pp.r == 1) return {f.num, mu};
  Poly nu = f.den - mu;
  if (nu.is_zero()) return {f.num, mu};
  // corr = sum_{i<r} (-1)^i nu^i mu^{r-1-i}; then f = (num*corr) / mu^r
  Poly corr = Poly::constant(f.num.ctx(), 0);
  Poly nupow = Poly::constant(f.num.ctx(), 1);
  for (unsigned i = 0; i < pp.r; ++i) {
    Poly mupow = Poly::constant(f.num.ctx(), 1);
    for (unsigned j = 0; j + 1 + i < pp.r; ++j) mupow = mupow * mu;
    Poly term = nupow * mupow;
    corr = (i % 2 == 0) ? corr + term : corr - term;
    nupow = nupow * nu;
  }
  Poly den = Poly::constant(f.num.ctx(), 1);
  for (unsigned i = 0; i < pp.r; ++i) den = den * mu;
  return {f.num * corr, den};
}

u64 coeff_at(const Poly& f, long e) {
  return f.coeff(Exp{static_cast<int>(e)});
}

}  // namespace

RationalFn rf_make(const Poly& num, const Poly& den) {
  if (num.ctx().n != den.ctx().n || num.ctx().d != den.ctx().d) {
    throw Error(ErrorKind::ring_context_mismatch,
                "numerator and denominator live in different rings");
  }
  require_univariate(num.ctx(), "rational series arithmetic");
  PrimePower pp = require_prime_power(num.ctx());
  if (den.is_zero() || poly_val(den, pp) > 0) {
    throw Error(ErrorKind::validation_error,
                "series denominator must be nonzero mod p");
  }
  if (num.is_zero()) return {num, Poly::constant(num.ctx(), 1)};
  Poly n = num, d = den;
  if (pp.r == 1 && d.term_count() > 1) {
    Poly g = laurent_gcd(n, d);
    if (!(g.is_constant() && g.constant_term() == 1)) {
      Poly qn(n.ctx()), rn(n.ctx()), qd(n.ctx()), rd(n.ctx());
      laurent_divmod(n, g, qn, rn);
      laurent_divmod(d, g, qd, rd);
      if (rn.is_zero() && rd.is_zero()) {
        n = qn;
        d = qd;
      }
    }
  }
  // normalize the common monomial scale: shift so the denominator trails at 0
  int t = trail_exp(d);
  if (t != 0) {
    Exp sh{-t};
    n = n.shifted(sh);
    d = d.shifted(sh);
  }
  return {n, d};
}

RationalFn rf_from_poly(const Poly& p) {
  return rf_make(p, Poly::constant(p.ctx(), 1));
}

RationalFn rf_zero(RingCtx ctx) {
  return {Poly::constant(ctx, 0), Poly::constant(ctx, 1)};
}

bool rf_is_zero(const RationalFn& f) { return f.num.is_zero(); }

RationalFn rf_add(const RationalFn& a, const RationalFn& b) {
  return rf_make(a.num * b.den + b.num * a.den, a.den * b.den);
}
RationalFn rf_sub(const RationalFn& a, const RationalFn& b) {
  return rf_make(a.num * b.den - b.num * a.den, a.den * b.den);
}
RationalFn rf_mul(const RationalFn& a, const RationalFn& b) {
  return rf_make(a.num * b.num, a.den * b.den);
}
RationalFn rf_mul_poly(const RationalFn& a, const Poly& p) {
  return rf_make(a.num * p, a.den);
}
RationalFn rf_neg(const RationalFn& a) {
  return {a.num.scaled(a.num.ctx().n - 1), a.den};
}
RationalFn rf_conj(const RationalFn& a) {
  return rf_make(a.num.involuted(), a.den.involuted());
}

Poly series_window(const RationalFn& f, long lo, long hi, bool ascending) {
  require_univariate(f.num.ctx(), "series expansion");
  PrimePower pp = require_prime_power(f.num.ctx());
  RingCtx ctx = f.num.ctx();
  Poly out(ctx);
  if (f.num.is_zero() || lo > hi) return out;
  UnitDen ud = unit_denominator(f, pp);
  const Poly& A = ud.num;
  const Poly& D = ud.den;
  if (A.is_zero()) return out;
  std::map<long, u64> s;  // computed expansion coefficients
  if (ascending) {
    long t = trail_exp(D);
    u64 u = inv_mod(coeff_at(D, t), ctx.n).value();
    long start = trail_exp(A) - t;
    for (long e = start; e <= hi; ++e) {
      u64 acc = coeff_at(A, e + t);
      for (const auto& [ep, sc] : s) {
        // D contributes at exponent (e + t - ep)
        u64 dc = coeff_at(D, e + t - ep);
        if (dc) acc = sub_mod(acc, mul_mod(sc, dc, ctx.n), ctx.n);
      }
      u64 v = mul_mod(acc, u, ctx.n);
      if (v) s[e] = v;
    }
  } else {
    long h = head_exp(D);
    u64 u = inv_mod(coeff_at(D, h), ctx.n).value();
    long start = head_exp(A) - h;
    for (long e = start; e >= lo; --e) {
      u64 acc = coeff_at(A, e + h);
      for (const auto& [ep, sc] : s) {
        u64 dc = coeff_at(D, e + h - ep);
        if (dc) acc = sub_mod(acc, mul_mod(sc, dc, ctx.n), ctx.n);
      }
      u64 v = mul_mod(acc, u, ctx.n);
      if (v) s[e] = v;
    }
  }
  for (const auto& [e, c] : s) {
    if (e >= lo && e <= hi) out.set_coeff(Exp{static_cast<int>(e)}, c);
  }
  return out;
}

u64 series_coeff(const RationalFn& f, long e, bool ascending) {
  return coeff_at(series_window(f, e, e, ascending), e);
}

u64 series_ct(const RationalFn& f, bool ascending) {
  return series_coeff(f, 0, ascending);
}

std::optional<Poly> rf_to_poly(const RationalFn& f) {
  if (f.num.is_zero()) return Poly::constant(f.num.ctx(), 0);
  // exact support bounds need a denominator whose extreme coefficients are
  // units; the raw one may carry nilpotent top/bottom terms
  PrimePower pp = require_prime_power(f.num.ctx());
  UnitDen ud = unit_denominator(f, pp);
  if (ud.num.is_zero()) return std::nullopt;
  long lo = trail_exp(ud.num) - trail_exp(ud.den);
  long hi = head_exp(ud.num) - head_exp(ud.den);
  if (hi < lo) return std::nullopt;
  Poly q = series_window(f, lo, hi, /*ascending=*/true);
  if (q * f.den == f.num) return q;
  return std::nullopt;
}

std::vector<RationalFn> solve_series_system(RingCtx ctx,
                                            const std::vector<PolyVec>& G_rows,
                                            const PolyVec& a) {
  require_univariate(ctx, "series linear solve");
  PrimePower pp = require_prime_power(ctx);
  const int k = static_cast<int>(G_rows.size());
  if (static_cast<int>(a.size()) != k) {
    throw Error(ErrorKind::internal_error, "series solve shape mismatch");
  }
  std::vector<std::vector<RationalFn>> M(k);
  std::vector<RationalFn> rhs(k, rf_zero(ctx));
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(G_rows[i].size()) != k) {
      throw Error(ErrorKind::internal_error, "series solve shape mismatch");
    }
    for (int j = 0; j < k; ++j) M[i].push_back(rf_from_poly(G_rows[i][j]));
    rhs[i] = rf_from_poly(a[i]);
  }
  std::vector<int> pivot_row(k, -1);  // per column
  std::vector<bool> used(k, false);
  auto frac_val = [&](const RationalFn& f) -> unsigned {
    return f.num.is_zero() ? pp.r : poly_val(f.num, pp);
  };
  // exact quotient num/den of fractions with val(num.num) >= val(den.num)
  auto frac_div = [&](const RationalFn& num, const RationalFn& den) {
    unsigned s = frac_val(den);
    Poly dn = poly_div_ppow(den.num, pp, s);
    Poly nn = poly_div_ppow(num.num, pp, s);
    return rf_make(nn * den.den, dn * num.den);
  };
  for (int j = 0; j < k; ++j) {
    int best = -1;
    unsigned best_val = pp.r;
    for (int i = 0; i < k; ++i) {
      if (used[i]) continue;
      unsigned v = frac_val(M[i][j]);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best < 0) continue;  // column is zero on the remaining rows
    pivot_row[j] = best;
    used[best] = true;
    for (int i = 0; i < k; ++i) {
      if (i == best || rf_is_zero(M[i][j])) continue;
      if (frac_val(M[i][j]) < best_val) {
        throw Error(ErrorKind::internal_error,
                    "series solve pivot valuation violated");
      }
      RationalFn factor = frac_div(M[i][j], M[best][j]);
      for (int c = 0; c < k; ++c) {
        if (rf_is_zero(M[best][c])) continue;
        M[i][c] = rf_sub(M[i][c], rf_mul(factor, M[best][c]));
      }
      rhs[i] = rf_sub(rhs[i], rf_mul(factor, rhs[best]));
    }
  }
  for (int i = 0; i < k; ++i) {
    if (!used[i] && !rf_is_zero(rhs[i])) {
      throw Error(ErrorKind::internal_error,
                  "series system is inconsistent (value not in the image)");
    }
  }
  std::vector<RationalFn> c(k, rf_zero(ctx));
  for (int j = k - 1; j >= 0; --j) {
    if (pivot_row[j] < 0) continue;
    int i = pivot_row[j];
    RationalFn t = rhs[i];
    for (int c2 = j + 1; c2 < k; ++c2) {
      if (!rf_is_zero(M[i][c2]) && !rf_is_zero(c[c2])) {
        t = rf_sub(t, rf_mul(M[i][c2], c[c2]));
      }
    }
    if (rf_is_zero(t)) continue;
    if (frac_val(t) < frac_val(M[i][j])) {
      throw Error(ErrorKind::internal_error,
                  "series system is inconsistent (value not in the image)");
    }
    c[j] = frac_div(t, M[i][j]);
  }
  return c;
}

}  // namespace stabmod
