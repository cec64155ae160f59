#include "stabmod/metric_group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace stabmod {
namespace {

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void check_elt(const MetricGroup& g, const GrpElt& a) {
  if (a.size() != g.factors.size()) {
    throw Error(ErrorKind::validation_error,
                "group element has the wrong number of coordinates");
  }
}

}  // namespace

u64 MetricGroup::order() const {
  u64 o = 1;
  for (u64 f : factors) {
    if (f == 0 || o > (u64(1) << 62) / f) {
      throw Error(ErrorKind::budget_exhausted, "group order overflows");
    }
    o *= f;
  }
  return o;
}

MgValidation mg_validate(const MetricGroup& g) {
  MgValidation out;
  const size_t k = g.factors.size();
  auto fail = [&](const std::string& s) { out.failures.push_back(s); };
  if (g.n < 2) fail("modulus must be at least 2");
  for (size_t i = 0; i < k; ++i) {
    if (g.factors[i] < 2) fail("factor " + std::to_string(i) + " is not > 1");
    else if (g.n % g.factors[i] != 0)
      fail("factor " + std::to_string(i) + " does not divide the modulus");
  }
  if (g.q_gen.size() != k) fail("q values do not match the generator count");
  if (g.b_gram.size() != k) fail("b Gram has the wrong number of rows");
  for (size_t i = 0; i < k && i < g.b_gram.size(); ++i) {
    if (g.b_gram[i].size() != k) {
      fail("b Gram row " + std::to_string(i) + " has the wrong length");
      continue;
    }
    for (size_t j = 0; j < k; ++j) {
      if (g.b_gram[i][j] != g.b_gram[j][i]) {
        fail("b is not symmetric at (" + std::to_string(i) + "," +
             std::to_string(j) + ")");
      }
      if (mul_mod(g.factors[i] % g.n, g.b_gram[i][j] % g.n, g.n) != 0) {
        fail("b(g_" + std::to_string(i) + ",g_" + std::to_string(j) +
             ") is not killed by the generator order");
      }
    }
    if (i < g.q_gen.size()) {
      u64 q = g.q_gen[i] % g.n;
      if (g.b_gram[i][i] % g.n != (2 * q) % g.n) {
        fail("b(g,g) != 2q(g) at generator " + std::to_string(i));
      }
      u64 f = g.factors[i] % g.n;
      if (mul_mod(mul_mod(f, f, g.n), q, g.n) != 0) {
        fail("n_i^2 q(g_i) != 0 at generator " + std::to_string(i));
      }
      if (mul_mod(mul_mod(2 % g.n, f, g.n), q, g.n) != 0) {
        fail("2 n_i q(g_i) != 0 at generator " + std::to_string(i));
      }
    }
  }
  out.valid = out.failures.empty();
  return out;
}

u64 q_eval(const MetricGroup& g, const GrpElt& a) {
  check_elt(g, a);
  u64 acc = 0;
  const size_t k = g.factors.size();
  for (size_t i = 0; i < k; ++i) {
    u64 c = (a[i] % g.factors[i]) % g.n;
    acc = add_mod(acc, mul_mod(mul_mod(c, c, g.n), g.q_gen[i] % g.n, g.n), g.n);
    for (size_t j = i + 1; j < k; ++j) {
      u64 cj = (a[j] % g.factors[j]) % g.n;
      acc = add_mod(acc, mul_mod(mul_mod(c, cj, g.n), g.b_gram[i][j] % g.n, g.n),
                    g.n);
    }
  }
  return acc;
}

u64 b_eval(const MetricGroup& g, const GrpElt& a, const GrpElt& b) {
  check_elt(g, a);
  check_elt(g, b);
  u64 acc = 0;
  const size_t k = g.factors.size();
  for (size_t i = 0; i < k; ++i) {
    u64 ci = (a[i] % g.factors[i]) % g.n;
    if (ci == 0) continue;
    for (size_t j = 0; j < k; ++j) {
      u64 cj = (b[j] % g.factors[j]) % g.n;
      acc = add_mod(acc,
                    mul_mod(mul_mod(ci, cj, g.n), g.b_gram[i][j] % g.n, g.n),
                    g.n);
    }
  }
  return acc;
}

GrpElt mg_zero(const MetricGroup& g) { return GrpElt(g.factors.size(), 0); }

GrpElt mg_add(const MetricGroup& g, const GrpElt& a, const GrpElt& b) {
  check_elt(g, a);
  check_elt(g, b);
  GrpElt out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % g.factors[i];
  return out;
}

GrpElt mg_scale(const MetricGroup& g, u64 c, const GrpElt& a) {
  check_elt(g, a);
  GrpElt out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] = mul_mod(c % g.factors[i], a[i] % g.factors[i], g.factors[i]);
  }
  return out;
}

u64 mg_elt_order(const MetricGroup& g, const GrpElt& a) {
  check_elt(g, a);
  u64 ord = 1;
  for (size_t i = 0; i < a.size(); ++i) {
    u64 oi = g.factors[i] / gcd_u64(g.factors[i], a[i] % g.factors[i]);
    ord = ord / gcd_u64(ord, oi) * oi;
  }
  return ord;
}

std::vector<GrpElt> mg_elements(const MetricGroup& g, u64 budget) {
  u64 o = g.order();
  if (o > budget) {
    throw Error(ErrorKind::budget_exhausted,
                "group order " + std::to_string(o) +
                    " exceeds the enumeration budget");
  }
  std::vector<GrpElt> out;
  out.reserve(o);
  GrpElt cur = mg_zero(g);
  out.push_back(cur);
  for (u64 c = 1; c < o; ++c) {
    for (size_t i = cur.size(); i-- > 0;) {
      if (++cur[i] < g.factors[i]) break;
      cur[i] = 0;
    }
    out.push_back(cur);
  }
  return out;
}

bool is_nondegenerate(const MetricGroup& g, u64 budget) {
  auto elems = mg_elements(g, budget);
  const size_t k = g.factors.size();
  for (const auto& a : elems) {
    bool in_radical = true;
    for (size_t j = 0; j < k && in_radical; ++j) {
      GrpElt gen = mg_zero(g);
      gen[j] = 1;
      if (b_eval(g, a, gen) != 0) in_radical = false;
    }
    if (in_radical && a != mg_zero(g)) return false;
  }
  return true;
}

std::vector<GrpElt> mg_closure(const MetricGroup& g,
                               const std::vector<GrpElt>& gens, u64 budget) {
  std::set<GrpElt> seen;
  seen.insert(mg_zero(g));
  std::vector<GrpElt> frontier = {mg_zero(g)};
  while (!frontier.empty()) {
    std::vector<GrpElt> next;
    for (const auto& a : frontier) {
      for (const auto& gen : gens) {
        GrpElt b = mg_add(g, a, gen);
        if (seen.insert(b).second) {
          next.push_back(b);
          if (seen.size() > budget) {
            throw Error(ErrorKind::budget_exhausted,
                        "subgroup closure exceeds the budget");
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

GrpElt mg_apply_action(const MetricGroup& g, const std::vector<GrpElt>& action,
                       const GrpElt& a) {
  check_elt(g, a);
  if (action.size() != g.factors.size()) {
    throw Error(ErrorKind::validation_error,
                "action must give an image per generator");
  }
  GrpElt out = mg_zero(g);
  for (size_t j = 0; j < action.size(); ++j) {
    if (a[j] % g.factors[j] == 0) continue;
    out = mg_add(g, out, mg_scale(g, a[j], action[j]));
  }
  return out;
}

LagrangianSearch lagrangian_search(const MetricGroup& g, u64 budget,
                                   const std::vector<GrpElt>* action) {
  LagrangianSearch out;
  std::vector<GrpElt> elems;
  try {
    elems = mg_elements(g, budget);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::budget_exhausted) {
      out.complete = false;
      return out;
    }
    throw;
  }
  std::vector<GrpElt> iso;
  for (const auto& a : elems) {
    if (q_eval(g, a) == 0) iso.push_back(a);
  }
  std::sort(iso.begin(), iso.end());
  u64 steps = 0;
  std::set<std::vector<GrpElt>> seen;
  std::set<std::vector<GrpElt>> found;
  auto perp_of = [&](const std::vector<GrpElt>& sub) {
    std::vector<GrpElt> p;
    for (const auto& a : elems) {
      bool ok = true;
      for (const auto& s : sub) {
        if (b_eval(g, a, s) != 0) {
          ok = false;
          break;
        }
      }
      if (ok) p.push_back(a);
    }
    std::sort(p.begin(), p.end());
    return p;
  };
  auto stable = [&](const std::vector<GrpElt>& sub) {
    if (!action) return true;
    std::set<GrpElt> in(sub.begin(), sub.end());
    for (const auto& s : sub) {
      if (!in.count(mg_apply_action(g, *action, s))) return false;
    }
    return true;
  };
  // depth-first search over q-isotropic subgroups, each represented by its
  // sorted element list; Lagrangians are exactly the self-orthogonal ones
  std::function<void(const std::vector<GrpElt>&, size_t)> dfs =
      [&](const std::vector<GrpElt>& sub, size_t start) {
        if (!out.complete) return;
        if (++steps > budget) {
          out.complete = false;
          return;
        }
        if (perp_of(sub) == sub) {
          if (stable(sub)) found.insert(sub);
          return;  // self-orthogonal isotropics are maximal
        }
        std::set<GrpElt> in(sub.begin(), sub.end());
        for (size_t idx = start; idx < iso.size(); ++idx) {
          if (!out.complete) return;
          if (in.count(iso[idx])) continue;
          std::vector<GrpElt> gens(sub.begin(), sub.end());
          gens.push_back(iso[idx]);
          std::vector<GrpElt> bigger;
          try {
            bigger = mg_closure(g, gens, budget);
          } catch (const Error& e) {
            if (e.kind() == ErrorKind::budget_exhausted) {
              out.complete = false;
              return;
            }
            throw;
          }
          bool isotropic = true;
          for (const auto& a : bigger) {
            if (q_eval(g, a) != 0) {
              isotropic = false;
              break;
            }
          }
          if (!isotropic) continue;
          if (seen.insert(bigger).second) dfs(bigger, idx + 1);
        }
      };
  dfs({mg_zero(g)}, 0);
  out.lagrangians.assign(found.begin(), found.end());
  std::sort(out.lagrangians.begin(), out.lagrangians.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

MetricGroup direct_sum(const MetricGroup& a, const MetricGroup& b) {
  if (a.n != b.n) {
    throw Error(ErrorKind::ring_context_mismatch,
                "direct sum requires matching moduli");
  }
  MetricGroup out;
  out.n = a.n;
  out.factors = a.factors;
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  out.q_gen = a.q_gen;
  out.q_gen.insert(out.q_gen.end(), b.q_gen.begin(), b.q_gen.end());
  const size_t ka = a.factors.size(), kb = b.factors.size();
  out.b_gram.assign(ka + kb, std::vector<u64>(ka + kb, 0));
  for (size_t i = 0; i < ka; ++i)
    for (size_t j = 0; j < ka; ++j) out.b_gram[i][j] = a.b_gram[i][j];
  for (size_t i = 0; i < kb; ++i)
    for (size_t j = 0; j < kb; ++j) out.b_gram[ka + i][ka + j] = b.b_gram[i][j];
  return out;
}

MetricGroup opposite(const MetricGroup& a) {
  MetricGroup out = a;
  for (auto& q : out.q_gen) q = (a.n - q % a.n) % a.n;
  for (auto& row : out.b_gram)
    for (auto& v : row) v = (a.n - v % a.n) % a.n;
  return out;
}

std::optional<std::vector<GrpElt>> iso_check(const MetricGroup& a,
                                             const MetricGroup& b,
                                             u64 budget) {
  if (a.n != b.n) return std::nullopt;
  u64 oa = a.order(), ob = b.order();
  if (oa != ob) return std::nullopt;
  auto ea = mg_elements(a, budget);
  auto eb = mg_elements(b, budget);
  // invariant multiset: (element order, q value)
  std::multiset<std::pair<u64, u64>> ma, mb;
  for (const auto& x : ea) ma.insert({mg_elt_order(a, x), q_eval(a, x)});
  for (const auto& x : eb) mb.insert({mg_elt_order(b, x), q_eval(b, x)});
  if (ma != mb) return std::nullopt;
  const size_t k = a.factors.size();
  std::vector<GrpElt> images(k, mg_zero(b));
  std::function<bool(size_t)> place = [&](size_t i) -> bool {
    if (i == k) {
      // verify bijectivity: the images must generate all of b
      auto cl = mg_closure(b, images, budget);
      return cl.size() == ob;
    }
    for (const auto& cand : eb) {
      if (mg_scale(b, a.factors[i], cand) != mg_zero(b)) continue;
      if (q_eval(b, cand) != a.q_gen[i] % a.n) continue;
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) {
        if (b_eval(b, images[j], cand) != a.b_gram[j][i] % a.n) ok = false;
      }
      if (!ok) continue;
      images[i] = cand;
      if (place(i + 1)) return true;
    }
    return false;
  };
  if (k == 0) return images;
  if (place(0)) return images;
  return std::nullopt;
}

MetricGroup mg_crt_combine(const std::vector<MetricGroup>& parts, u64 n) {
  Modulus m(n);
  if (parts.size() != m.factors.size()) {
    throw Error(ErrorKind::validation_error,
                "component count does not match the modulus factorization");
  }
  size_t len = 0;
  for (size_t c = 0; c < parts.size(); ++c) {
    if (parts[c].n != m.factors[c].q) {
      throw Error(ErrorKind::validation_error,
                  "component modulus does not match the factorization order");
    }
    len = std::max(len, parts[c].factors.size());
  }
  // align ascending factor chains at the large end, padding with 1s
  auto padded = [&](const MetricGroup& g, size_t i) -> u64 {
    size_t off = len - g.factors.size();
    return i >= off ? g.factors[i - off] : 1;
  };
  MetricGroup out;
  out.n = n;
  for (size_t i = 0; i < len; ++i) {
    u64 f = 1;
    for (const auto& g : parts) f *= padded(g, i);
    out.factors.push_back(f);
  }
  auto lift = [&](std::vector<u64> residues) {
    return crt_combine_residue(residues, m);
  };
  out.q_gen.assign(len, 0);
  out.b_gram.assign(len, std::vector<u64>(len, 0));
  for (size_t i = 0; i < len; ++i) {
    std::vector<u64> qres;
    for (const auto& g : parts) {
      size_t off = len - g.factors.size();
      qres.push_back(i >= off ? g.q_gen[i - off] % g.n : 0);
    }
    out.q_gen[i] = lift(qres);
    for (size_t j = 0; j < len; ++j) {
      std::vector<u64> bres;
      for (const auto& g : parts) {
        size_t off = len - g.factors.size();
        bres.push_back(i >= off && j >= off ? g.b_gram[i - off][j - off] % g.n
                                            : 0);
      }
      out.b_gram[i][j] = lift(bres);
    }
  }
  return out;
}

}  // namespace stabmod
