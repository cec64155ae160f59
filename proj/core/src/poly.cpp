#include "stabmod/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace stabmod {

int total_degree(const Exp& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

bool ExpGrlexDesc::operator()(const Exp& a, const Exp& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;  // lexicographic on the exponent tuples
}

Poly Poly::constant(RingCtx ctx, u64 c) {
  Poly p(ctx);
  p.set_coeff(Exp(ctx.d, 0), c);
  return p;
}

Poly Poly::monomial(RingCtx ctx, const Exp& e, u64 c) {
  if (static_cast<int>(e.size()) != ctx.d)
    throw Error(ErrorKind::ring_context_mismatch, "exponent length != d");
  Poly p(ctx);
  p.set_coeff(e, c);
  return p;
}

Poly Poly::variable(RingCtx ctx, int var, int power) {
  if (var < 1 || var > ctx.d)
    throw Error(ErrorKind::parse_error,
                "variable index out of range: x" + std::to_string(var));
  Exp e(ctx.d, 0);
  e[var - 1] = power;
  return monomial(ctx, e, 1);
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0 &&
         terms_.begin()->first == Exp(ctx_.d, 0);
}

u64 Poly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

u64 Poly::constant_term() const { return coeff(Exp(ctx_.d, 0)); }

void Poly::set_coeff(const Exp& e, u64 c) {
  if (static_cast<int>(e.size()) != ctx_.d)
    throw Error(ErrorKind::ring_context_mismatch, "exponent length != d");
  c %= ctx_.n;
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

void Poly::check_ctx(const Poly& o) const {
  if (!(ctx_ == o.ctx_))
    throw Error(ErrorKind::ring_context_mismatch,
                "polynomial ring contexts differ");
}

Poly Poly::operator+(const Poly& o) const {
  check_ctx(o);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.set_coeff(e, add_mod(r.coeff(e), c, ctx_.n));
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  check_ctx(o);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.set_coeff(e, sub_mod(r.coeff(e), c, ctx_.n));
  return r;
}

Poly Poly::operator-() const {
  Poly r(ctx_);
  for (const auto& [e, c] : terms_) r.set_coeff(e, ctx_.n - c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_ctx(o);
  Poly r(ctx_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exp e(ctx_.d);
      for (int i = 0; i < ctx_.d; ++i) e[i] = ea[i] + eb[i];
      r.set_coeff(e, add_mod(r.coeff(e), mul_mod(ca, cb, ctx_.n), ctx_.n));
    }
  return r;
}

Poly Poly::scaled(u64 c) const {
  Poly r(ctx_);
  for (const auto& [e, cc] : terms_) r.set_coeff(e, mul_mod(cc, c, ctx_.n));
  return r;
}

Poly Poly::shifted(const Exp& s) const {
  if (static_cast<int>(s.size()) != ctx_.d)
    throw Error(ErrorKind::ring_context_mismatch, "shift length != d");
  Poly r(ctx_);
  for (const auto& [e, c] : terms_) {
    Exp e2(ctx_.d);
    for (int i = 0; i < ctx_.d; ++i) e2[i] = e[i] + s[i];
    r.set_coeff(e2, c);
  }
  return r;
}

Poly Poly::involuted() const {
  Poly r(ctx_);
  for (const auto& [e, c] : terms_) {
    Exp e2(ctx_.d);
    for (int i = 0; i < ctx_.d; ++i) e2[i] = -e[i];
    r.set_coeff(e2, c);
  }
  return r;
}

Poly Poly::with_modulus(u64 new_n) const {
  Poly r(RingCtx{new_n, ctx_.d});
  for (const auto& [e, c] : terms_) r.set_coeff(e, c % new_n);
  return r;
}

std::pair<Exp, Exp> Poly::support_box() const {
  if (terms_.empty())
    throw Error(ErrorKind::validation_error,
                "support_box of the zero polynomial");
  Exp lo(ctx_.d, 0), hi(ctx_.d, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      lo = hi = e;
      first = false;
      continue;
    }
    for (int i = 0; i < ctx_.d; ++i) {
      lo[i] = std::min(lo[i], e[i]);
      hi[i] = std::max(hi[i], e[i]);
    }
  }
  return {lo, hi};
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < ctx_.d; ++i)
      if (e[i] != 0) os << "*x" << (i + 1) << "^" << e[i];
  }
  return os.str();
}

std::vector<Poly> Poly::crt_split(const Modulus& m) const {
  if (m.n != ctx_.n)
    throw Error(ErrorKind::ring_context_mismatch, "modulus mismatch in CRT");
  std::vector<Poly> parts;
  parts.reserve(m.factors.size());
  for (const auto& f : m.factors) parts.push_back(with_modulus(f.q));
  return parts;
}

Poly Poly::crt_combine(const std::vector<Poly>& parts, const Modulus& m,
                       int d) {
  if (parts.size() != m.factors.size())
    throw Error(ErrorKind::validation_error, "CRT component count mismatch");
  Poly r(RingCtx{m.n, d});
  // union of supports; combine residues pointwise
  std::map<Exp, std::vector<u64>, ExpGrlexDesc> stacked;
  for (size_t i = 0; i < parts.size(); ++i)
    for (const auto& [e, c] : parts[i].terms()) {
      auto& v = stacked[e];
      v.resize(parts.size(), 0);
      v[i] = c;
    }
  for (auto& [e, v] : stacked) {
    v.resize(parts.size(), 0);
    r.set_coeff(e, crt_combine_residue(v, m));
  }
  return r;
}

namespace {

struct Parser {
  RingCtx ctx;
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::parse_error, "polynomial parse error at position " +
                                            std::to_string(i) + ": " + what +
                                            " in \"" + s + "\"");
  }
  long long integer() {
    skip_ws();
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      fail("expected integer");
    long long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > (1ll << 40)) fail("integer literal too large");
      ++i;
    }
    return neg ? -v : v;
  }

  // factor := 'x' INT ('^' INT)?
  void factor(Exp& e) {
    skip_ws();
    if (i >= s.size() || s[i] != 'x') fail("expected variable");
    ++i;
    long long var = integer();
    if (var < 1 || var > ctx.d)
      fail("variable x" + std::to_string(var) + " outside ring with d = " +
           std::to_string(ctx.d));
    long long pw = 1;
    if (eat('^')) pw = integer();
    if (pw < -1'000'000 || pw > 1'000'000) fail("exponent out of range");
    e[var - 1] += static_cast<int>(pw);
  }

  Poly term() {
    skip_ws();
    u64 coeff = 1;
    Exp e(ctx.d, 0);
    bool saw_any = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      long long c = integer();
      coeff = static_cast<u64>(((c % static_cast<long long>(ctx.n)) +
                                static_cast<long long>(ctx.n))) %
              ctx.n;
      saw_any = true;
      if (!eat('*')) return Poly::monomial(ctx, e, coeff);
    }
    while (true) {
      factor(e);
      saw_any = true;
      if (!eat('*')) break;
    }
    if (!saw_any) fail("empty term");
    return Poly::monomial(ctx, e, coeff);
  }

  Poly parse() {
    Poly acc(ctx);
    skip_ws();
    if (i >= s.size()) fail("empty polynomial");
    bool neg = false;
    if (eat('-')) neg = true;
    while (true) {
      Poly t = term();
      acc = neg ? acc - t : acc + t;
      skip_ws();
      if (i >= s.size()) break;
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        fail("expected '+' or '-'");
    }
    return acc;
  }
};

}  // namespace

Poly parse_poly(RingCtx ctx, const std::string& text) {
  Parser p{ctx, text};
  return p.parse();
}

PolyVec pv_zero(RingCtx ctx, int k) { return PolyVec(k, Poly::zero(ctx)); }

PolyVec pv_add(const PolyVec& a, const PolyVec& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::ring_context_mismatch, "vector length mismatch");
  PolyVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

PolyVec pv_sub(const PolyVec& a, const PolyVec& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::ring_context_mismatch, "vector length mismatch");
  PolyVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

PolyVec pv_scale(const PolyVec& a, const Poly& c) {
  PolyVec r(a.size(), c);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

PolyVec pv_shift(const PolyVec& a, const Exp& e) {
  PolyVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].shifted(e);
  return r;
}

PolyVec pv_involute(const PolyVec& a) {
  PolyVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].involuted();
  return r;
}

bool pv_is_zero(const PolyVec& a) {
  for (const auto& p : a)
    if (!p.is_zero()) return false;
  return true;
}

std::pair<Exp, Exp> pv_support_box(const PolyVec& a) {
  bool first = true;
  Exp lo, hi;
  for (const auto& p : a) {
    if (p.is_zero()) continue;
    auto [l, h] = p.support_box();
    if (first) {
      lo = l;
      hi = h;
      first = false;
      continue;
    }
    for (size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], l[i]);
      hi[i] = std::max(hi[i], h[i]);
    }
  }
  if (first)
    throw Error(ErrorKind::validation_error, "support_box of zero vector");
  return {lo, hi};
}

PolyVec mat_apply(const PolyMat& cols, const PolyVec& coords) {
  if (cols.size() != coords.size())
    throw Error(ErrorKind::ring_context_mismatch, "matrix/vector mismatch");
  if (cols.empty())
    throw Error(ErrorKind::validation_error, "empty matrix apply");
  PolyVec r = pv_zero(cols[0][0].ctx(), static_cast<int>(cols[0].size()));
  for (size_t j = 0; j < cols.size(); ++j)
    r = pv_add(r, pv_scale(cols[j], coords[j]));
  return r;
}

}  // namespace stabmod
