#include "stabmod/quasisym.hpp"

#include <algorithm>
#include <set>

namespace stabmod {
namespace {

void require_qs_ring(const RingCtx& ctx) {
  if (ctx.d != 1) {
    throw Error(ErrorKind::unsupported_ring,
                "quasi-symplectic module theory requires one variable");
  }
  require_prime_power(ctx);
}

Poly conj(const Poly& p) { return p.involuted(); }

// columns of the Gram matrix: col j = (gram[i][j])_i
PolyMat gram_cols(const QuasiSymplectic1D& P) {
  PolyMat cols;
  for (int j = 0; j < P.k; ++j) {
    PolyVec col;
    for (int i = 0; i < P.k; ++i) col.push_back(P.gram[i][j]);
    cols.push_back(col);
  }
  return cols;
}

// exact coefficient-wise division by p^s
Poly div_ppow(const Poly& f, u64 p, unsigned s) {
  u64 ps = 1;
  for (unsigned i = 0; i < s; ++i) ps *= p;
  Poly out(f.ctx());
  for (const auto& [e, c] : f.terms()) {
    if (c % ps != 0) {
      throw Error(ErrorKind::internal_error,
                  "pairing value is not divisible by the expected p-power");
    }
    out.set_coeff(e, c / ps);
  }
  return out;
}

}  // namespace

QuasiSymplectic1D qs_free(RingCtx ctx, std::vector<PolyVec> gram) {
  QuasiSymplectic1D P;
  P.ctx = ctx;
  P.k = static_cast<int>(gram.size());
  P.gram = std::move(gram);
  return P;
}

QsValidation qs_validate(const QuasiSymplectic1D& P) {
  QsValidation out;
  auto fail = [&](const std::string& s) { out.failures.push_back(s); };
  require_qs_ring(P.ctx);
  if (static_cast<int>(P.gram.size()) != P.k) {
    fail("Gram matrix has the wrong number of rows");
    return out;
  }
  for (int i = 0; i < P.k; ++i) {
    if (static_cast<int>(P.gram[i].size()) != P.k) {
      fail("Gram row " + std::to_string(i) + " has the wrong length");
      return out;
    }
  }
  for (const auto& col : P.relations) {
    if (static_cast<int>(col.size()) != P.k) {
      fail("relation column has the wrong length");
      return out;
    }
  }
  for (int i = 0; i < P.k; ++i) {
    for (int j = 0; j < P.k; ++j) {
      Poly lhs = P.gram[j][i];
      Poly rhs = Poly::constant(P.ctx, 0) - conj(P.gram[i][j]);
      if (!(lhs == rhs)) {
        fail("pairing is not anti-hermitian at generators (" +
             std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
    if (P.gram[i][i].constant_term() != 0) {
      fail("diagonal pairing at generator " + std::to_string(i) +
           " has a nonzero constant term");
    }
  }
  for (size_t r = 0; r < P.relations.size(); ++r) {
    for (int j = 0; j < P.k; ++j) {
      Poly v(P.ctx);
      for (int i = 0; i < P.k; ++i) {
        v = v + conj(P.relations[r][i]) * P.gram[i][j];
      }
      if (!v.is_zero()) {
        fail("pairing is not well defined: relation " + std::to_string(r) +
             " pairs nontrivially with generator " + std::to_string(j));
      }
    }
  }
  if (!out.failures.empty()) return out;
  // zero radical: ker(Gram) must lie in the relation span
  PolyMat rad = kernel_of_map(P.ctx, gram_cols(P), P.k);
  GBModule rel(P.ctx, P.k, P.relations);
  for (size_t i = 0; i < rad.size(); ++i) {
    if (!rel.contains(rad[i])) {
      fail("nonzero radical: kernel vector " + std::to_string(i) +
           " of the Gram matrix is not a relation");
    }
  }
  out.valid = out.failures.empty();
  return out;
}

std::vector<u64> EModule::coords(const EClass& alpha) const {
  auto y = solve_in_image(ctx, dual_gens, static_cast<int>(alpha.size()),
                          alpha);
  if (!y) {
    throw Error(ErrorKind::validation_error,
                "functional does not lie in the dual module");
  }
  return group.coords(*y);
}

EClass EModule::class_from_coords(const std::vector<u64>& c) const {
  if (c.size() != factors.size()) {
    throw Error(ErrorKind::validation_error,
                "coordinate vector does not match the generator count");
  }
  if (gen_reps.empty()) {
    throw Error(ErrorKind::validation_error,
                "the defect group is trivial; no coordinates to lift");
  }
  size_t k = gen_reps[0].size();
  EClass out(k, Poly(ctx));
  for (size_t j = 0; j < c.size(); ++j) {
    for (size_t i = 0; i < k; ++i) {
      out[i] = out[i] + gen_reps[j][i].scaled(c[j] % ctx.n);
    }
  }
  return out;
}

EModule e_module(const QuasiSymplectic1D& P) {
  require_qs_ring(P.ctx);
  EModule em;
  em.ctx = P.ctx;
  if (P.k == 0) {
    em.finite = true;
    em.group = finite_quotient(P.ctx, 0, {});
    return em;
  }
  if (P.relations.empty()) {
    for (int i = 0; i < P.k; ++i) {
      PolyVec e(P.k, Poly(P.ctx));
      e[i] = Poly::constant(P.ctx, 1);
      em.dual_gens.push_back(e);
    }
  } else {
    em.dual_gens =
        kernel_of_map(P.ctx, mat_conj_transpose(P.relations, P.k),
                      static_cast<int>(P.relations.size()));
  }
  PolyMat img = gram_cols(P);
  em.relations = subquotient_relations(P.ctx, em.dual_gens, img, P.k);
  em.group = finite_quotient(P.ctx, static_cast<int>(em.dual_gens.size()),
                             em.relations);
  em.finite = em.group.finite;
  em.factors = em.group.factors;
  if (!em.finite) return em;
  for (const auto& rep : em.group.gen_reps) {
    EClass a(P.k, Poly(P.ctx));
    for (size_t c = 0; c < em.dual_gens.size(); ++c) {
      if (rep[c].is_zero()) continue;
      for (int i = 0; i < P.k; ++i) {
        a[i] = a[i] + rep[c] * em.dual_gens[c][i];
      }
    }
    em.gen_reps.push_back(a);
  }
  Poly x = Poly::variable(P.ctx, 1);
  for (const auto& rep : em.gen_reps) {
    EClass shifted;
    for (const auto& v : rep) shifted.push_back(v * x);
    em.x_action.push_back(em.coords(shifted));
  }
  return em;
}

std::vector<RationalFn> arrow_solution(const QuasiSymplectic1D& P,
                                       const EClass& alpha) {
  require_qs_ring(P.ctx);
  if (static_cast<int>(alpha.size()) != P.k) {
    throw Error(ErrorKind::validation_error,
                "functional has the wrong number of values");
  }
  return solve_series_system(P.ctx, P.gram, alpha);
}

namespace {

// constant term of Omega(alpha_right, beta_left) given the two rational
// arrow solutions: sum over ij of ct_desc(conj(a_i) * G[i][j] * b_j)
u64 omega_ct(const QuasiSymplectic1D& P, const std::vector<RationalFn>& a,
             const std::vector<RationalFn>& b) {
  u64 acc = 0;
  for (int i = 0; i < P.k; ++i) {
    if (rf_is_zero(a[i])) continue;
    RationalFn ci = rf_conj(a[i]);
    for (int j = 0; j < P.k; ++j) {
      if (P.gram[i][j].is_zero() || rf_is_zero(b[j])) continue;
      RationalFn term = rf_mul(rf_mul_poly(ci, P.gram[i][j]), b[j]);
      acc = add_mod(acc, series_ct(term, /*ascending=*/false), P.ctx.n);
    }
  }
  return acc;
}

}  // namespace

u64 q_form(const QuasiSymplectic1D& P, const EClass& alpha) {
  auto c = arrow_solution(P, alpha);
  return omega_ct(P, c, c);
}

u64 b_form(const QuasiSymplectic1D& P, const EClass& alpha,
           const EClass& beta) {
  auto ca = arrow_solution(P, alpha);
  auto cb = arrow_solution(P, beta);
  return add_mod(omega_ct(P, ca, cb), omega_ct(P, cb, ca), P.ctx.n);
}

MetricGroup metric_group_of(const QuasiSymplectic1D& P, const EModule* em) {
  EModule local;
  if (!em) {
    local = e_module(P);
    em = &local;
  }
  if (!em->finite) {
    throw Error(ErrorKind::validation_error,
                "the defect group is infinite; the pairing has a radical or "
                "the module is not quasi-symplectic");
  }
  MetricGroup g;
  g.n = P.ctx.n;
  g.factors = em->factors;
  const size_t k = g.factors.size();
  g.q_gen.assign(k, 0);
  g.b_gram.assign(k, std::vector<u64>(k, 0));
  std::vector<std::vector<RationalFn>> arrows;
  for (size_t i = 0; i < k; ++i) {
    arrows.push_back(arrow_solution(P, em->gen_reps[i]));
  }
  for (size_t i = 0; i < k; ++i) {
    g.q_gen[i] = omega_ct(P, arrows[i], arrows[i]);
    for (size_t j = i; j < k; ++j) {
      u64 b = add_mod(omega_ct(P, arrows[i], arrows[j]),
                      omega_ct(P, arrows[j], arrows[i]), P.ctx.n);
      g.b_gram[i][j] = b;
      g.b_gram[j][i] = b;
    }
  }
  auto v = mg_validate(g);
  if (!v.valid) {
    std::string msg = "computed metric group violates the compatibility laws:";
    for (const auto& f : v.failures) msg += " " + f + ";";
    throw Error(ErrorKind::internal_error, msg);
  }
  if (!is_nondegenerate(g)) {
    throw Error(ErrorKind::internal_error,
                "computed metric group is degenerate");
  }
  return g;
}

QuasiSymplectic1D extend_by_isotropic(const QuasiSymplectic1D& P,
                                      const EModule& em,
                                      const std::vector<std::vector<u64>>& T) {
  require_qs_ring(P.ctx);
  MetricGroup mg = metric_group_of(P, &em);
  // isotropy of the whole subgroup generated by T
  std::vector<GrpElt> tgens;
  for (const auto& t : T) tgens.push_back(t);
  auto closure = mg_closure(mg, tgens);
  for (const auto& e : closure) {
    if (q_eval(mg, e) != 0) {
      throw Error(ErrorKind::validation_error,
                  "subgroup is not isotropic: q does not vanish on it");
    }
  }
  std::set<GrpElt> closure_set(closure.begin(), closure.end());
  for (const auto& t : closure) {
    GrpElt xt = mg_zero(mg);
    for (size_t j = 0; j < t.size(); ++j) {
      if (t[j] % mg.factors[j] == 0) continue;
      GrpElt img(em.x_action[j]);
      xt = mg_add(mg, xt, mg_scale(mg, t[j], img));
    }
    if (!closure_set.count(xt)) {
      throw Error(ErrorKind::validation_error,
                  "subgroup is not stable under translation");
    }
  }
  std::vector<EClass> reps;
  std::vector<std::vector<RationalFn>> arrows;
  for (const auto& t : T) {
    reps.push_back(em.class_from_coords(t));
    arrows.push_back(arrow_solution(P, reps.back()));
  }
  const int kt = static_cast<int>(T.size());
  QuasiSymplectic1D out;
  out.ctx = P.ctx;
  out.k = P.k + kt;
  out.gram.assign(out.k, PolyVec(out.k, Poly(P.ctx)));
  for (int i = 0; i < P.k; ++i) {
    for (int j = 0; j < P.k; ++j) out.gram[i][j] = P.gram[i][j];
  }
  for (int b = 0; b < kt; ++b) {
    for (int i = 0; i < P.k; ++i) {
      out.gram[i][P.k + b] = reps[b][i];
      out.gram[P.k + b][i] = Poly(P.ctx) - conj(reps[b][i]);
    }
  }
  for (int a = 0; a < kt; ++a) {
    for (int b = 0; b < kt; ++b) {
      // Omega(alpha_left, beta_right) as an exact rational function; the
      // isotropy of T makes it a Laurent polynomial
      RationalFn acc = rf_zero(P.ctx);
      for (int i = 0; i < P.k; ++i) {
        if (rf_is_zero(arrows[a][i])) continue;
        RationalFn ci = rf_conj(arrows[a][i]);
        for (int j = 0; j < P.k; ++j) {
          if (P.gram[i][j].is_zero() || rf_is_zero(arrows[b][j])) continue;
          acc = rf_add(acc,
                       rf_mul(rf_mul_poly(ci, P.gram[i][j]), arrows[b][j]));
        }
      }
      auto poly = rf_to_poly(acc);
      if (!poly) {
        throw Error(ErrorKind::validation_error,
                    "extension pairing is not polynomial; the subgroup is "
                    "not isotropic and translation-stable");
      }
      out.gram[P.k + a][P.k + b] = *poly;
    }
  }
  PolyMat cols = gram_cols(P);
  for (const auto& rep : reps) cols.push_back(rep);
  out.relations = kernel_of_map(P.ctx, cols, P.k);
  return out;
}

PolyMat qs_perp(const QuasiSymplectic1D& P, const PolyMat& M_gens) {
  require_qs_ring(P.ctx);
  if (M_gens.empty()) {
    PolyMat all;
    for (int i = 0; i < P.k; ++i) {
      PolyVec e(P.k, Poly(P.ctx));
      e[i] = Poly::constant(P.ctx, 1);
      all.push_back(e);
    }
    return all;
  }
  PolyMat cols;
  for (int b = 0; b < P.k; ++b) {
    PolyVec col;
    for (const auto& m : M_gens) {
      Poly v(P.ctx);
      for (int a = 0; a < P.k; ++a) v = v + conj(m[a]) * P.gram[a][b];
      col.push_back(v);
    }
    cols.push_back(col);
  }
  PolyMat ker = kernel_of_map(P.ctx, cols, static_cast<int>(M_gens.size()));
  for (const auto& r : P.relations) ker.push_back(r);
  return ker;
}

bool qs_same_submodule(const QuasiSymplectic1D& P, const PolyMat& A,
                       const PolyMat& B) {
  PolyMat a = A, b = B;
  for (const auto& r : P.relations) {
    a.push_back(r);
    b.push_back(r);
  }
  GBModule ga(P.ctx, P.k, a), gb(P.ctx, P.k, b);
  return ga.contains_all(b) && gb.contains_all(a);
}

std::vector<std::vector<u64>> ker_rho(const QuasiSymplectic1D& P,
                                      const EModule& em,
                                      const PolyMat& M_gens) {
  require_qs_ring(P.ctx);
  PolyMat mpp = qs_perp(P, qs_perp(P, M_gens));
  if (!qs_same_submodule(P, M_gens, mpp)) {
    throw Error(ErrorKind::validation_error,
                "submodule is not biorthogonally closed (M != M^perp-perp)");
  }
  // functionals vanishing on the relations and on M
  const size_t rows = P.relations.size() + M_gens.size();
  PolyMat cols;
  for (int i = 0; i < P.k; ++i) {
    PolyVec col;
    for (const auto& rel : P.relations) col.push_back(conj(rel[i]));
    for (const auto& m : M_gens) col.push_back(conj(m[i]));
    cols.push_back(col);
  }
  PolyMat km = kernel_of_map(P.ctx, cols, static_cast<int>(rows));
  if (!em.finite) {
    throw Error(ErrorKind::validation_error,
                "ker_rho requires a finite defect group");
  }
  // subgroup of E_P generated by the images, closed under translation
  std::vector<std::vector<u64>> gens;
  for (const auto& g : km) gens.push_back(em.coords(g));
  auto add = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
      out[i] = (a[i] + b[i]) % em.factors[i];
    }
    return out;
  };
  auto act = [&](const std::vector<u64>& a) {
    std::vector<u64> out(a.size(), 0);
    for (size_t j = 0; j < a.size(); ++j) {
      for (size_t i = 0; i < a.size(); ++i) {
        out[i] = (out[i] + a[j] * (em.x_action[j][i] % em.factors[i])) %
                 em.factors[i];
      }
    }
    return out;
  };
  std::set<std::vector<u64>> elems;
  std::vector<u64> zero(em.factors.size(), 0);
  bool grew = true;
  while (grew) {
    elems.clear();
    elems.insert(zero);
    std::vector<std::vector<u64>> frontier = {zero};
    while (!frontier.empty()) {
      std::vector<std::vector<u64>> next;
      for (const auto& a : frontier) {
        for (const auto& g : gens) {
          auto b = add(a, g);
          if (elems.insert(b).second) next.push_back(b);
        }
      }
      frontier = std::move(next);
    }
    grew = false;
    for (const auto& e : elems) {
      auto img = act(e);
      if (!elems.count(img)) {
        gens.push_back(img);
        grew = true;
        break;
      }
    }
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

WittReduction witt_reduce(const QuasiSymplectic1D& P) {
  require_qs_ring(P.ctx);
  PrimePower pp = require_prime_power(P.ctx);
  WittReduction out;
  if (pp.r == 1) {
    out.reduced = P;
    return out;
  }
  QuasiSymplectic1D cur = P;
  for (unsigned iter = 0; iter <= pp.r + 2; ++iter) {
    // s = least exponent with p^s * (every generator) a relation
    GBModule rel(cur.ctx, cur.k, cur.relations);
    unsigned s = pp.r;
    for (unsigned cand = 0; cand <= pp.r; ++cand) {
      u64 ps = 1;
      for (unsigned i = 0; i < cand; ++i) ps *= pp.p;
      bool all = true;
      for (int i = 0; i < cur.k && all; ++i) {
        PolyVec v(cur.k, Poly(cur.ctx));
        v[i] = Poly::constant(cur.ctx, ps % cur.ctx.n);
        if (!rel.contains(v)) all = false;
      }
      if (all) {
        s = cand;
        break;
      }
    }
    if (s <= 1) {
      // re-express over F_p: relations reduce mod p, pairing values (all in
      // p^{r-1} Z_{p^r}) divide down by p^{r-1}
      RingCtx fctx{pp.p, 1};
      QuasiSymplectic1D red;
      red.ctx = fctx;
      red.k = (s == 0) ? 0 : cur.k;
      if (s != 0) {
        for (const auto& col : cur.relations) {
          PolyVec c;
          bool zero = true;
          for (const auto& v : col) {
            Poly w = v.with_modulus(pp.p);
            if (!w.is_zero()) zero = false;
            c.push_back(w);
          }
          if (!zero) red.relations.push_back(c);
        }
        red.gram.assign(red.k, PolyVec(red.k, Poly(fctx)));
        for (int i = 0; i < red.k; ++i) {
          for (int j = 0; j < red.k; ++j) {
            red.gram[i][j] =
                div_ppow(cur.gram[i][j], pp.p, pp.r - 1).with_modulus(pp.p);
          }
        }
      }
      out.reduced = red;
      return out;
    }
    unsigned t = (s + 1) / 2;
    u64 pt = 1;
    for (unsigned i = 0; i < t; ++i) pt *= pp.p;
    // N = p^t P; N^perp = kernel of w -> p^t Gram w
    PolyMat cols;
    for (int j = 0; j < cur.k; ++j) {
      PolyVec col;
      for (int i = 0; i < cur.k; ++i) {
        col.push_back(cur.gram[i][j].scaled(pt % cur.ctx.n));
      }
      cols.push_back(col);
    }
    PolyMat W = kernel_of_map(cur.ctx, cols, cur.k);
    PolyMat W2;
    {
      PolyMat pcols;
      for (int b = 0; b < cur.k; ++b) {
        PolyVec col;
        for (const auto& w : W) {
          Poly v(cur.ctx);
          for (int a = 0; a < cur.k; ++a) v = v + conj(w[a]) * cur.gram[a][b];
          col.push_back(v);
        }
        pcols.push_back(col);
      }
      W2 = kernel_of_map(cur.ctx, pcols, static_cast<int>(W.size()));
    }
    QuasiSymplectic1D next;
    next.ctx = cur.ctx;
    next.k = static_cast<int>(W.size());
    next.relations = subquotient_relations(cur.ctx, W, W2, cur.k);
    next.gram.assign(next.k, PolyVec(next.k, Poly(cur.ctx)));
    for (int a = 0; a < next.k; ++a) {
      for (int b = 0; b < next.k; ++b) {
        Poly v(cur.ctx);
        for (int i = 0; i < cur.k; ++i) {
          if (W[a][i].is_zero()) continue;
          Poly ci = conj(W[a][i]);
          for (int j = 0; j < cur.k; ++j) {
            v = v + ci * cur.gram[i][j] * W[b][j];
          }
        }
        next.gram[a][b] = v;
      }
    }
    out.trace.push_back({s, t, cur.k, next.k});
    cur = next;
  }
  throw Error(ErrorKind::internal_error,
              "Witt reduction did not terminate within the expected steps");
}

MetabolicityResult is_metabolic(const QuasiSymplectic1D& P, u64 budget) {
  MetabolicityResult out;
  EModule em = e_module(P);
  out.group = metric_group_of(P, &em);
  auto search = lagrangian_search(out.group, budget);
  out.complete = search.complete;
  if (!search.lagrangians.empty()) {
    out.metabolic = true;
    out.witness = search.lagrangians.front();
  }
  return out;
}

}  // namespace stabmod
