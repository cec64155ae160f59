#include "stabmod/mobility.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <utility>

#include "stabmod/halfspace.hpp"
#include "stabmod/laurent_gb.hpp"

namespace stabmod {

namespace {

// ---------------------------------------------------------------------------
// dense linear solving over a prime field
// ---------------------------------------------------------------------------

// rows are augmented (length cols+1); returns one solution with the free
// variables set to zero, or nullopt when the system is inconsistent
std::optional<std::vector<u64>> solve_mod_p(u64 p, int cols,
                                            std::vector<std::vector<u64>> M) {
  const int R = static_cast<int>(M.size());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < cols && rank < R; ++col) {
    int piv = -1;
    for (int r = rank; r < R; ++r) {
      if (M[r][col] % p != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(M[rank], M[piv]);
    u64 inv = *inv_mod(M[rank][col] % p, p);
    for (auto& x : M[rank]) x = mul_mod(x % p, inv, p);
    for (int r = 0; r < R; ++r) {
      if (r == rank) continue;
      u64 c = M[r][col] % p;
      if (c == 0) continue;
      for (int j = col; j <= cols; ++j)
        M[r][j] = sub_mod(M[r][j] % p, mul_mod(c, M[rank][j], p), p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < R; ++r) {
    if (M[r][cols] % p != 0) return std::nullopt;
  }
  std::vector<u64> x(cols, 0);
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = M[r][cols] % p;
  return x;
}

// sparse accumulation of tuple coefficients into shared row ids, so systems
// over several charge generators stack into one coefficient matrix
struct RowIndexer {
  std::map<std::pair<int, Exp>, int> ids;
  int id(int slot, const Exp& e) {
    auto [it, fresh] =
        ids.emplace(std::make_pair(slot, e), static_cast<int>(ids.size()));
    (void)fresh;
    return it->second;
  }
};

void scatter(RowIndexer& ix, const PolyVec& v, int slot_base,
             std::vector<std::pair<int, u64>>& out) {
  for (int j = 0; j < static_cast<int>(v.size()); ++j) {
    for (const auto& [e, c] : v[j].terms())
      out.emplace_back(ix.id(slot_base + j, e), c);
  }
}

// all exponents with sum of absolute values at most D
void ball_rec(int pos, int remaining, Exp& cur, std::vector<Exp>& out) {
  if (pos == static_cast<int>(cur.size())) {
    out.push_back(cur);
    return;
  }
  for (int t = -remaining; t <= remaining; ++t) {
    cur[pos] = t;
    ball_rec(pos + 1, remaining - std::abs(t), cur, out);
  }
}

std::vector<Exp> l1_ball(int d, int D) {
  std::vector<Exp> out;
  Exp cur(d, 0);
  ball_rec(0, D, cur, out);
  return out;
}

i64 dot(const std::vector<i64>& v, const Exp& e) {
  i64 s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += v[i] * e[i];
  return s;
}

Exp imat_apply_exp(const IMat& T, const Exp& e) {
  const int n = static_cast<int>(T.size());
  Exp out(n, 0);
  for (int i = 0; i < n; ++i) {
    i64 s = 0;
    for (int j = 0; j < n; ++j) s += T[i][j] * e[j];
    out[i] = static_cast<int>(s);
  }
  return out;
}

}  // namespace

PolyVec v_map(const BoundaryModule& B, const PolyVec& alpha) {
  if (alpha.size() != B.generators.size())
    throw Error(ErrorKind::validation_error,
                "expected one value per boundary generator, got " +
                    std::to_string(alpha.size()));
  for (const Poly& a : alpha) {
    if (!a.is_zero() && !(a.ctx() == B.ctx))
      throw Error(ErrorKind::ring_context_mismatch,
                  "functional values must live in the boundary ring");
  }
  const int d = B.bulk_ctx.d;
  PolyVec out = pv_zero(B.bulk_ctx, B.normalized.g());
  for (size_t pos = 0; pos < B.primary_index.size(); ++pos) {
    const auto& [i, depth] = B.primary_index[pos];
    const Poly& val = alpha[pos];
    if (val.is_zero()) continue;
    const int wall = B.shifts[i] - depth;
    Poly emb = Poly::zero(B.bulk_ctx);
    for (const auto& [e, c] : val.terms()) {
      Exp full(d, 0);
      for (int a = 0; a + 1 < d; ++a) full[a] = e[a];
      full[d - 1] = wall;
      emb = emb + Poly::monomial(B.bulk_ctx, full, c);
    }
    out[i] = out[i] + poly_exp_transform(emb, B.basis.to_old);
  }
  return out;
}

PolyMat boundary_functional_gens(const BoundaryModule& B) {
  const int k = static_cast<int>(B.generators.size());
  if (k == 0) return {};
  PolyMat rel;
  for (const auto& y : B.relations) {
    if (!pv_is_zero(y)) rel.push_back(y);
  }
  if (rel.empty()) {
    PolyMat out;
    for (int a = 0; a < k; ++a) {
      PolyVec e = pv_zero(B.ctx, k);
      e[a] = Poly::constant(B.ctx, 1);
      out.push_back(std::move(e));
    }
    return out;
  }
  // a tuple alpha is well defined exactly when sum_a conj(y_a) alpha_a = 0
  // for every relation y; the columns below are the images of unit tuples
  PolyMat cols;
  for (int a = 0; a < k; ++a) {
    PolyVec vals = pv_zero(B.ctx, static_cast<int>(rel.size()));
    for (size_t s = 0; s < rel.size(); ++s) vals[s] = rel[s][a].involuted();
    cols.push_back(std::move(vals));
  }
  return kernel_of_map(B.ctx, cols, static_cast<int>(rel.size()));
}

MobilityResult mobility_annihilators(const StabilizerCode& code,
                                     const std::vector<i64>& normal,
                                     const MobilityOptions& opt) {
  code.validate_shapes();
  const RingCtx ctx = code.ctx;
  if (static_cast<int>(normal.size()) != ctx.d)
    throw Error(ErrorKind::validation_error,
                "half-space normal must have one entry per variable");
  if (std::all_of(normal.begin(), normal.end(),
                  [](i64 v) { return v == 0; }))
    throw Error(ErrorKind::validation_error,
                "half-space normal must be nonzero");
  Modulus mod(ctx.n);
  if (!mod.is_prime())
    throw Error(ErrorKind::unsupported_ring,
                "annihilator search requires a prime modulus");
  const u64 p = ctx.n;

  ChargeModule charges = charge_module(code);
  MobilityResult out;
  out.degree = opt.degree;
  out.f = Poly::zero(ctx);
  out.g = Poly::zero(ctx);

  const PolyMat& gens = charges.lstar_gens;
  const int g = code.g();
  if (gens.empty()) {
    out.status = SearchStatus::found;
    out.detail = "charge module has no generators";
    return out;
  }

  const std::vector<Exp> ball = l1_ball(ctx.d, opt.degree);
  std::vector<Poly> parts(2, Poly::zero(ctx));
  for (int side = 0; side < 2; ++side) {
    const int sgn = side == 0 ? 1 : -1;
    std::vector<Exp> mons;
    for (const Exp& e : ball) {
      if (sgn * dot(normal, e) > 0) mons.push_back(e);
    }
    const int C = static_cast<int>(mons.size());
    if (static_cast<u64>(C) + 1 > opt.budget) {
      out.status = SearchStatus::inconclusive;
      out.detail = "candidate monomial count exceeds the budget";
      return out;
    }

    RowIndexer ix;
    std::vector<std::vector<std::pair<int, u64>>> col_entries(C);
    std::vector<std::pair<int, u64>> rhs_entries;
    for (size_t t = 0; t < gens.size(); ++t) {
      const int base = static_cast<int>(t) * g;
      scatter(ix, charges.image_gb->normal_form(gens[t]), base, rhs_entries);
      for (int c = 0; c < C; ++c) {
        scatter(ix,
                charges.image_gb->normal_form(pv_shift(gens[t], mons[c])),
                base, col_entries[c]);
      }
    }
    const int R = static_cast<int>(ix.ids.size());
    if (static_cast<u64>(R + 1) * static_cast<u64>(C + 1) > opt.budget) {
      out.status = SearchStatus::inconclusive;
      out.detail = "linear system exceeds the budget (" + std::to_string(R) +
                   " rows, " + std::to_string(C) + " columns)";
      return out;
    }
    std::vector<std::vector<u64>> M(R, std::vector<u64>(C + 1, 0));
    for (int c = 0; c < C; ++c) {
      for (const auto& [row, val] : col_entries[c])
        M[row][c] = add_mod(M[row][c], val, p);
    }
    for (const auto& [row, val] : rhs_entries)
      M[row][C] = add_mod(M[row][C], val, p);

    auto sol = solve_mod_p(p, C, std::move(M));
    if (!sol) {
      out.status = SearchStatus::not_found;
      out.detail =
          std::string("no annihilator with total degree <= ") +
          std::to_string(opt.degree) + " on the " +
          (sgn > 0 ? "inner" : "outer") + " side (search exhaustive)";
      return out;
    }
    Poly fg = Poly::zero(ctx);
    for (int c = 0; c < C; ++c) {
      if ((*sol)[c] % p != 0)
        fg = fg + Poly::monomial(ctx, mons[c], (*sol)[c]);
    }
    parts[side] = fg;
  }

  const Poly one = Poly::constant(ctx, 1);
  for (const PolyVec& h : gens) {
    for (const Poly& fg : parts) {
      if (!charges.class_is_zero(pv_scale(h, one - fg)))
        throw Error(ErrorKind::internal_error,
                    "annihilator verification failed");
    }
  }
  out.f = parts[0];
  out.g = parts[1];
  out.status = SearchStatus::found;
  out.detail = "verified against " + std::to_string(gens.size()) +
               " charge generators";
  return out;
}

VSurjectivity v_surjective_on_generators(const StabilizerCode& code,
                                         const BoundaryModule& B,
                                         const ChargeModule& charges,
                                         int window, u64 budget) {
  if (!(B.bulk_ctx == code.ctx) || !(charges.ctx == code.ctx))
    throw Error(ErrorKind::ring_context_mismatch,
                "boundary module and charge module must match the code");
  Modulus mod(code.ctx.n);
  if (!mod.is_prime())
    throw Error(ErrorKind::unsupported_ring,
                "windowed surjectivity check requires a prime modulus");
  const u64 p = code.ctx.n;
  const int g = code.g();

  VSurjectivity out;
  out.window = window;
  if (charges.lstar_gens.empty()) {
    out.status = SearchStatus::found;
    out.detail = "charge module has no generators";
    return out;
  }

  const PolyMat kappa = boundary_functional_gens(B);
  std::vector<std::pair<PolyVec, PolyVec>> images;  // (functional, V value)
  for (const PolyVec& k : kappa) {
    PolyVec v = v_map(B, k);
    if (!pv_is_zero(v)) images.emplace_back(k, std::move(v));
  }

  // columns: boundary-monomial translates of each functional generator
  const std::vector<Exp> box = l1_ball(code.ctx.d - 1, window);
  struct Column {
    int kappa_index;
    Exp shift;  // boundary exponent
  };
  std::vector<Column> cols;
  std::vector<PolyVec> col_tuples;
  for (size_t b = 0; b < images.size(); ++b) {
    for (const Exp& mu : box) {
      Exp full(code.ctx.d, 0);
      for (int a = 0; a + 1 < code.ctx.d; ++a) full[a] = mu[a];
      Exp bulk = imat_apply_exp(B.basis.to_old, full);
      cols.push_back({static_cast<int>(b), mu});
      col_tuples.push_back(pv_shift(images[b].second, bulk));
    }
  }
  const int C = static_cast<int>(cols.size());

  // shared row indexing across the per-generator solves
  RowIndexer ix;
  std::vector<std::vector<std::pair<int, u64>>> col_entries(C);
  for (int c = 0; c < C; ++c)
    scatter(ix, charges.image_gb->normal_form(col_tuples[c]), 0,
            col_entries[c]);
  std::vector<std::vector<std::pair<int, u64>>> rhs_entries;
  for (const PolyVec& h : charges.lstar_gens) {
    rhs_entries.emplace_back();
    scatter(ix, charges.image_gb->normal_form(h), 0, rhs_entries.back());
  }
  const int R = static_cast<int>(ix.ids.size());
  if (static_cast<u64>(R + 1) * static_cast<u64>(C + 1) > budget) {
    out.status = SearchStatus::inconclusive;
    out.detail = "linear system exceeds the budget (" + std::to_string(R) +
                 " rows, " + std::to_string(C) + " columns)";
    return out;
  }
  std::vector<std::vector<u64>> base(R, std::vector<u64>(C + 1, 0));
  for (int c = 0; c < C; ++c) {
    for (const auto& [row, val] : col_entries[c])
      base[row][c] = add_mod(base[row][c], val, p);
  }

  for (size_t t = 0; t < charges.lstar_gens.size(); ++t) {
    std::vector<std::vector<u64>> M = base;
    for (const auto& [row, val] : rhs_entries[t])
      M[row][C] = add_mod(M[row][C], val, p);
    auto sol = solve_mod_p(p, C, std::move(M));
    if (!sol) {
      out.status = SearchStatus::not_found;
      out.witnesses.clear();
      out.detail = "charge generator " + std::to_string(t) +
                   " has no preimage within the monomial window";
      return out;
    }
    PolyVec alpha = pv_zero(B.ctx, static_cast<int>(B.generators.size()));
    for (int c = 0; c < C; ++c) {
      u64 cv = (*sol)[c] % p;
      if (cv == 0) continue;
      const PolyVec& k = images[cols[c].kappa_index].first;
      alpha = pv_add(alpha,
                     pv_scale(pv_shift(k, cols[c].shift),
                              Poly::constant(B.ctx, cv)));
    }
    if (!charges.class_is_zero(
            pv_sub(charges.lstar_gens[t], v_map(B, alpha))))
      throw Error(ErrorKind::internal_error,
                  "surjectivity witness verification failed");
    out.witnesses.push_back(std::move(alpha));
  }
  out.status = SearchStatus::found;
  out.detail = "all " + std::to_string(charges.lstar_gens.size()) +
               " charge generators have verified preimages";
  return out;
}

}  // namespace stabmod
