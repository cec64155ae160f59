#include "stabmod/halfspace.hpp"

#include <numeric>
#include <string>

namespace stabmod {

namespace {

std::string vec_str(const std::vector<i64>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace

HalfSpaceBasis complete_basis(const std::vector<i64>& v) {
  const int d = static_cast<int>(v.size());
  i64 g = 0;
  for (i64 x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (d == 0 || g == 0) {
    throw Error(ErrorKind::validation_error,
                "half-space normal must be a nonzero integer vector, got " +
                    vec_str(v));
  }
  HalfSpaceBasis basis;
  basis.normal.resize(d);
  for (int i = 0; i < d; ++i) basis.normal[i] = v[i] / g;

  // Smith form of the single row: U [normal] V = [1 0 ... 0] with U = [u],
  // u = ±1, so normal . (u V) = e_1^T and normal = u * (first row of Vinv)
  SmithInt s = smith_int({basis.normal});
  const i64 u = s.U[0][0];
  // move the distinguished column to the last position
  basis.to_old.assign(d, std::vector<i64>(d, 0));
  basis.to_new.assign(d, std::vector<i64>(d, 0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      int src = (j == d - 1) ? 0 : j + 1;  // column permutation
      basis.to_old[i][j] = u * s.V[i][src];
    }
  }
  for (int i = 0; i < d; ++i) {
    int dst = (i == 0) ? d - 1 : i - 1;  // matching row permutation
    for (int j = 0; j < d; ++j) basis.to_new[dst][j] = u * s.Vinv[i][j];
  }
  if (imat_mul(basis.to_new, basis.to_old) != imat_identity(d) ||
      basis.to_new[d - 1] != basis.normal) {
    throw Error(ErrorKind::internal_error, "half-space basis completion");
  }
  return basis;
}

Poly poly_exp_transform(const Poly& f, const IMat& T) {
  const int d = f.ctx().d;
  Poly out(f.ctx());
  for (const auto& [e, c] : f.terms()) {
    Exp ne(d, 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        ne[i] += static_cast<int>(T[i][j]) * e[j];
    out.set_coeff(ne, c);
  }
  return out;
}

StabilizerCode rebase_halfspace(const StabilizerCode& code,
                                const std::vector<i64>& v,
                                HalfSpaceBasis* basis_out) {
  if (static_cast<int>(v.size()) != code.ctx.d) {
    throw Error(ErrorKind::validation_error,
                "half-space normal has " + std::to_string(v.size()) +
                    " entries; the code has " + std::to_string(code.ctx.d) +
                    " variables");
  }
  HalfSpaceBasis basis = complete_basis(v);
  StabilizerCode out = code;
  for (auto& col : out.sigma)
    for (auto& entry : col) entry = poly_exp_transform(entry, basis.to_new);
  if (basis_out) *basis_out = basis;
  return out;
}

}  // namespace stabmod
