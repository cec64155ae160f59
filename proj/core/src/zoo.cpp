#include "stabmod/zoo.hpp"

#include <algorithm>

namespace stabmod {

namespace {

StabilizerCode make_trivial() {
  StabilizerCode c;
  c.ctx = RingCtx{2, 2};
  c.m = 1;
  c.name = "trivial";
  PolyVec col = pv_zero(c.ctx, 2);
  col[1] = Poly::constant(c.ctx, 1);  // single Z generator per site
  c.sigma.push_back(col);
  return c;
}

// toric code over Z_n: vertex generator (1 - xbar, 1 - ybar | 0, 0),
// plaquette generator (0, 0 | 1 - y, x - 1); the signs make the pair
// commute for every n (mod 2 they reduce to the standard CSS toric code)
StabilizerCode make_toric(u64 n) {
  StabilizerCode c;
  c.ctx = RingCtx{n, 2};
  c.m = 2;
  c.name = n == 2 ? "toric" : "toric" + std::to_string(n);
  Poly one = Poly::constant(c.ctx, 1);
  Poly x = Poly::variable(c.ctx, 1), y = Poly::variable(c.ctx, 2);
  Poly xb = Poly::variable(c.ctx, 1, -1), yb = Poly::variable(c.ctx, 2, -1);
  PolyVec a = pv_zero(c.ctx, 4), b = pv_zero(c.ctx, 4);
  a[0] = one - xb;
  a[1] = one - yb;
  b[2] = one - y;
  b[3] = x - one;
  c.sigma = {a, b};
  return c;
}

StabilizerCode make_wen() {
  StabilizerCode c;
  c.ctx = RingCtx{2, 2};
  c.m = 1;
  c.name = "wen";
  Poly one = Poly::constant(c.ctx, 1);
  Poly x = Poly::variable(c.ctx, 1), y = Poly::variable(c.ctx, 2);
  PolyVec s = pv_zero(c.ctx, 2);
  s[0] = one + x * y;
  s[1] = x + y;
  c.sigma = {s};
  return c;
}

// rank-1 hyperbolic example: sigma = ((1 + xbar_1) xbar_2 + (1 + x_1) x_2, 1)
StabilizerCode make_paper41() {
  StabilizerCode c;
  c.ctx = RingCtx{2, 2};
  c.m = 1;
  c.name = "paper41";
  Poly one = Poly::constant(c.ctx, 1);
  Poly x = Poly::variable(c.ctx, 1), xb = Poly::variable(c.ctx, 1, -1);
  Poly y = Poly::variable(c.ctx, 2), yb = Poly::variable(c.ctx, 2, -1);
  PolyVec s = pv_zero(c.ctx, 2);
  s[0] = (one + xb) * yb + (one + x) * y;
  s[1] = one;
  c.sigma = {s};
  return c;
}

StabilizerCode make_xcube() {
  StabilizerCode c;
  c.ctx = RingCtx{2, 3};
  c.m = 3;
  c.name = "xcube";
  Poly one = Poly::constant(c.ctx, 1);
  auto v = [&](int i, int p) { return Poly::variable(c.ctx, i, p); };
  Poly x = v(1, 1), y = v(2, 1), z = v(3, 1);
  Poly xb = v(1, -1), yb = v(2, -1), zb = v(3, -1);
  PolyVec s1 = pv_zero(c.ctx, 6), s2 = pv_zero(c.ctx, 6), s3 = pv_zero(c.ctx, 6);
  s1[0] = (one + xb) * (one + yb);
  s1[1] = (one + yb) * (one + zb);
  s1[2] = (one + xb) * (one + zb);
  s2[3] = one + z;
  s2[4] = one + x;
  s3[4] = one + x;
  s3[5] = one + y;
  c.sigma = {s1, s2, s3};
  return c;
}

}  // namespace

std::vector<std::string> zoo_names() {
  return {"trivial", "toric", "toric3", "toric4", "toric6", "wen", "paper41",
          "xcube"};
}

StabilizerCode zoo_code(const std::string& name) {
  StabilizerCode c;
  if (name == "trivial")
    c = make_trivial();
  else if (name == "toric")
    c = make_toric(2);
  else if (name == "toric3")
    c = make_toric(3);
  else if (name == "toric4")
    c = make_toric(4);
  else if (name == "toric6")
    c = make_toric(6);
  else if (name == "wen")
    c = make_wen();
  else if (name == "paper41")
    c = make_paper41();
  else if (name == "xcube")
    c = make_xcube();
  else
    throw Error(ErrorKind::validation_error, "unknown zoo code: " + name);
  is_isotropic(c, /*throwing=*/true);
  return c;
}

}  // namespace stabmod
