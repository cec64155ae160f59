#include "stabmod/engine.hpp"

#include <algorithm>
#include <tuple>

namespace stabmod::eng {

int mono_cmp(const Mono& a, const Mono& b) {
  if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;  // low comp dominates
  int da = 0, db = 0;
  for (int x : a.e) da += x;
  for (int x : b.e) db += x;
  if (da != db) return da > db ? 1 : -1;
  if (a.e != b.e) return a.e > b.e ? 1 : -1;
  return 0;
}

bool mono_divides(const Mono& a, const Mono& b) {
  if (a.comp != b.comp) return false;
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Vec normalize(const Ring& R, std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) {
    return mono_cmp(x.m, y.m) > 0;
  });
  Vec out;
  for (auto& t : raw) {
    t.c %= R.q;
    if (!out.empty() && mono_cmp(out.back().m, t.m) == 0) {
      out.back().c = add_mod(out.back().c, t.c, R.q);
      if (out.back().c == 0) out.pop_back();
    } else if (t.c != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

Vec add(const Ring& R, const Vec& a, const Vec& b) {
  Vec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = mono_cmp(a[i].m, b[j].m);
    if (c > 0)
      out.push_back(a[i++]);
    else if (c < 0)
      out.push_back(b[j++]);
    else {
      u64 s = add_mod(a[i].c, b[j].c, R.q);
      if (s) out.push_back(Term{a[i].m, s});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

Vec scale(const Ring& R, const Vec& a, u64 c) {
  c %= R.q;
  Vec out;
  out.reserve(a.size());
  for (const auto& t : a) {
    u64 cc = mul_mod(t.c, c, R.q);
    if (cc) out.push_back(Term{t.m, cc});
  }
  return out;
}

Vec mul_term(const Ring& R, const Vec& a, const std::vector<int>& e, u64 c) {
  c %= R.q;
  Vec out;
  out.reserve(a.size());
  for (const auto& t : a) {
    u64 cc = mul_mod(t.c, c, R.q);
    if (!cc) continue;
    Term nt = t;
    nt.c = cc;
    for (size_t i = 0; i < e.size(); ++i) nt.m.e[i] += e[i];
    out.push_back(std::move(nt));
  }
  return out;
}

namespace {

// split c = p^val * unit
void val_unit(const Ring& R, u64 c, unsigned& val, u64& unit) {
  val = 0;
  unit = c % R.q;
  if (unit == 0) {
    val = R.r;
    unit = 1;
    return;
  }
  while (unit % R.p == 0) {
    unit /= R.p;
    ++val;
  }
}

struct GElem {
  Vec v;
  unsigned lead_val = 0;
  u64 lead_unit_inv = 1;
};

GElem make_elem(const Ring& R, Vec v) {
  GElem g;
  unsigned val;
  u64 unit;
  val_unit(R, v[0].c, val, unit);
  auto inv = inv_mod(unit, R.q);
  if (!inv)
    throw Error(ErrorKind::internal_error, "unit part not invertible");
  // normalize so the leading coefficient is exactly p^val
  g.v = scale(R, v, *inv);
  g.lead_val = val;
  g.lead_unit_inv = 1;
  return g;
}

void charge(Budget* b) {
  if (!b) return;
  if (++b->used > b->pair_reductions)
    throw Error(ErrorKind::budget_exhausted,
                "Groebner budget exhausted (pair reductions)");
}

// reduce the largest reducible term of f once; returns false if none
bool reduce_step(const Ring& R, const std::vector<GElem>& G, Vec& f,
                 size_t start_at, size_t& touched) {
  for (size_t ti = start_at; ti < f.size(); ++ti) {
    unsigned tval;
    u64 tunit;
    val_unit(R, f[ti].c, tval, tunit);
    for (const auto& g : G) {
      if (g.lead_val > tval) continue;
      if (!mono_divides(g.v[0].m, f[ti].m)) continue;
      std::vector<int> shift(f[ti].m.e.size());
      for (size_t i = 0; i < shift.size(); ++i)
        shift[i] = f[ti].m.e[i] - g.v[0].m.e[i];
      // coefficient so the term cancels exactly: lead of g is p^{s}
      u64 factor = f[ti].c;
      for (unsigned k = 0; k < g.lead_val; ++k) factor /= R.p;
      f = add(R, f, mul_term(R, g.v, shift, R.q - factor % R.q));
      touched = ti;
      return true;
    }
  }
  return false;
}

Vec normal_form_impl(const Ring& R, const std::vector<GElem>& G, Vec f,
                     Budget* budget) {
  size_t pos = 0;
  while (pos < f.size()) {
    size_t touched = pos;
    if (reduce_step(R, G, f, pos, touched)) {
      charge(budget);
      // terms before the reduced position were scanned irreducible and are
      // unchanged (reduction only introduces strictly smaller monomials)
      pos = touched;
    } else {
      break;  // no reducible term remains
    }
  }
  return f;
}

}  // namespace

Vec normal_form(const Ring& R, const std::vector<Vec>& G, Vec f,
                Budget* budget) {
  std::vector<GElem> gs;
  gs.reserve(G.size());
  for (const auto& g : G)
    if (!g.empty()) gs.push_back(make_elem(R, g));
  return normal_form_impl(R, gs, std::move(f), budget);
}

std::vector<Vec> buchberger(const Ring& R, std::vector<Vec> gens,
                            Budget* budget) {
  std::vector<GElem> G;
  std::sort(gens.begin(), gens.end(), [](const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return b.empty() < a.empty();
    return mono_cmp(a[0].m, b[0].m) > 0;
  });
  for (auto& g : gens) {
    if (g.empty()) continue;
    G.push_back(make_elem(R, std::move(g)));
  }

  struct Pair {
    int i, j;  // j == -1 means annihilator pair of i
    int deg;   // total degree of the lcm (selection key)
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    return std::tie(a.deg, a.i, a.j) < std::tie(b.deg, b.i, b.j);
  };
  std::vector<Pair> queue;

  auto push_pairs_for = [&](int idx) {
    const auto& gi = G[idx];
    if (gi.lead_val > 0 && gi.lead_val < R.r) {
      int deg = 0;
      for (int x : gi.v[0].m.e) deg += x;
      queue.push_back(Pair{idx, -1, deg});
    }
    for (int j = 0; j < idx; ++j) {
      if (G[j].v[0].m.comp != gi.v[0].m.comp) continue;
      int deg = 0;
      for (size_t t = 0; t < gi.v[0].m.e.size(); ++t)
        deg += std::max(gi.v[0].m.e[t], G[j].v[0].m.e[t]);
      queue.push_back(Pair{j, idx, deg});
    }
  };
  for (int i = 0; i < static_cast<int>(G.size()); ++i) push_pairs_for(i);

  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), pair_less);
    Pair pr = *it;
    queue.erase(it);
    charge(budget);

    Vec s;
    if (pr.j < 0) {
      // annihilator pair: p^{r - s} * g kills the lead
      const auto& g = G[pr.i];
      u64 ann = 1;
      for (unsigned k = 0; k < R.r - g.lead_val; ++k) ann *= R.p;
      s = scale(R, g.v, ann);
    } else {
      const auto& f = G[pr.i];
      const auto& g = G[pr.j];
      unsigned s_max = std::max(f.lead_val, g.lead_val);
      std::vector<int> ef(f.v[0].m.e.size()), eg(f.v[0].m.e.size());
      for (size_t t = 0; t < ef.size(); ++t) {
        int l = std::max(f.v[0].m.e[t], g.v[0].m.e[t]);
        ef[t] = l - f.v[0].m.e[t];
        eg[t] = l - g.v[0].m.e[t];
      }
      u64 cf = 1, cg = 1;
      for (unsigned k = 0; k < s_max - f.lead_val; ++k) cf *= R.p;
      for (unsigned k = 0; k < s_max - g.lead_val; ++k) cg *= R.p;
      s = add(R, mul_term(R, f.v, ef, cf),
              mul_term(R, g.v, eg, R.q - cg % R.q));
    }
    Vec h = normal_form_impl(R, G, std::move(s), budget);
    if (h.empty()) continue;
    G.push_back(make_elem(R, std::move(h)));
    push_pairs_for(static_cast<int>(G.size()) - 1);
  }

  // inter-reduce: drop elements reducible to zero by the others, fully reduce
  // tails; repeat to a fixpoint
  bool changed = true;
  int guard = 0;
  while (changed) {
    if (++guard > 10000)
      throw Error(ErrorKind::internal_error, "inter-reduction did not settle");
    changed = false;
    for (size_t i = 0; i < G.size(); ++i) {
      std::vector<GElem> others;
      others.reserve(G.size() - 1);
      for (size_t j = 0; j < G.size(); ++j)
        if (j != i) others.push_back(G[j]);
      Vec h = normal_form_impl(R, others, G[i].v, budget);
      if (h.empty()) {
        G.erase(G.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
      if (h != G[i].v) {
        G[i] = make_elem(R, std::move(h));
        changed = true;
        break;
      }
    }
  }

  std::sort(G.begin(), G.end(), [](const GElem& a, const GElem& b) {
    return mono_cmp(a.v[0].m, b.v[0].m) > 0;
  });
  std::vector<Vec> out;
  out.reserve(G.size());
  for (auto& g : G) out.push_back(std::move(g.v));
  return out;
}

}  // namespace stabmod::eng
