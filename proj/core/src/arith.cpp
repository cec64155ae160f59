#include "stabmod/arith.hpp"

#include <algorithm>
#include <numeric>

namespace stabmod {

u64 add_mod(u64 a, u64 b, u64 n) { return (a + b) % n; }
u64 sub_mod(u64 a, u64 b, u64 n) { return (a + n - b % n) % n; }
u64 mul_mod(u64 a, u64 b, u64 n) {
  // n <= 2^32 so the product of two residues fits in 64 bits
  return (a % n) * (b % n) % n;
}
u64 pow_mod(u64 a, u64 e, u64 n) {
  u64 r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mul_mod(r, a, n);
    a = mul_mod(a, a, n);
    e >>= 1;
  }
  return r;
}

i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  i64 x1, y1;
  i64 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::optional<u64> inv_mod(u64 a, u64 n) {
  i64 x, y;
  i64 g = egcd(static_cast<i64>(a % n), static_cast<i64>(n), x, y);
  if (g != 1) return std::nullopt;
  i64 r = x % static_cast<i64>(n);
  if (r < 0) r += static_cast<i64>(n);
  return static_cast<u64>(r);
}

Modulus::Modulus(u64 n_) : n(n_) {
  if (n < 2) throw Error(ErrorKind::validation_error, "modulus must be >= 2");
  if (n > (u64(1) << 32))
    throw Error(ErrorKind::validation_error, "modulus must be <= 2^32");
  u64 m = n;
  for (u64 p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      PrimePower pp{p, 0, 1};
      while (m % p == 0) {
        m /= p;
        pp.r += 1;
        pp.q *= p;
      }
      factors.push_back(pp);
    }
  }
  if (m > 1) factors.push_back(PrimePower{m, 1, m});
}

unsigned padic_val(u64 a, u64 p, unsigned r) {
  u64 q = 1;
  for (unsigned i = 0; i < r; ++i) q *= p;
  a %= q;
  if (a == 0) return r;
  unsigned s = 0;
  while (a % p == 0) {
    a /= p;
    ++s;
  }
  return s;
}

std::vector<u64> crt_split_residue(u64 a, const Modulus& m) {
  std::vector<u64> out;
  out.reserve(m.factors.size());
  for (const auto& f : m.factors) out.push_back(a % f.q);
  return out;
}

u64 crt_combine_residue(const std::vector<u64>& residues, const Modulus& m) {
  if (residues.size() != m.factors.size())
    throw Error(ErrorKind::validation_error, "CRT component count mismatch");
  u64 result = 0;
  for (size_t i = 0; i < m.factors.size(); ++i) {
    u64 q = m.factors[i].q;
    u64 rest = m.n / q;
    // idempotent e_i = rest * (rest^{-1} mod q), equal to 1 mod q, 0 mod others
    auto inv = inv_mod(rest % q, q);
    if (!inv) throw Error(ErrorKind::internal_error, "CRT factors not coprime");
    u64 e = mul_mod(rest % m.n, *inv % m.n, m.n);
    result = add_mod(result, mul_mod(e, residues[i] % q, m.n), m.n);
  }
  return result;
}

IMat imat_identity(int n) {
  IMat I(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  int n = static_cast<int>(a.size());
  int k = n ? static_cast<int>(a[0].size()) : 0;
  int m = b.empty() ? 0 : static_cast<int>(b[0].size());
  IMat c(n, std::vector<i64>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

namespace {

// elementary row/column operations tracking transforms and their inverses
struct SmithWork {
  IMat A, U, Uinv, V, Vinv;
  int rows, cols;

  void row_swap(int i, int j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
    for (auto& row : Uinv) std::swap(row[i], row[j]);
  }
  void row_add(int i, int j, i64 c) {  // row_i += c * row_j
    for (int t = 0; t < cols; ++t) A[i][t] += c * A[j][t];
    for (size_t t = 0; t < U[i].size(); ++t) U[i][t] += c * U[j][t];
    for (auto& row : Uinv) row[j] -= c * row[i];
  }
  void row_neg(int i) {
    for (auto& x : A[i]) x = -x;
    for (auto& x : U[i]) x = -x;
    for (auto& row : Uinv) row[i] = -row[i];
  }
  void col_swap(int i, int j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : V) std::swap(row[i], row[j]);
    std::swap(Vinv[i], Vinv[j]);
  }
  void col_add(int i, int j, i64 c) {  // col_i += c * col_j
    for (auto& row : A) row[i] += c * row[j];
    for (auto& row : V) row[i] += c * row[j];
    for (size_t t = 0; t < Vinv[i].size(); ++t) Vinv[j][t] -= c * Vinv[i][t];
  }
  void col_neg(int i) {
    for (auto& row : A) row[i] = -row[i];
    for (auto& row : V) row[i] = -row[i];
    for (auto& x : Vinv[i]) x = -x;
  }
};

}  // namespace

SmithInt smith_int(IMat A) {
  int rows = static_cast<int>(A.size());
  int cols = rows ? static_cast<int>(A[0].size()) : 0;
  SmithWork w{std::move(A), imat_identity(rows), imat_identity(rows),
              imat_identity(cols), imat_identity(cols), rows, cols};
  int k = 0;
  int lim = std::min(rows, cols);
  while (k < lim) {
    // find pivot: smallest nonzero |entry| in the remaining block
    int pi = -1, pj = -1;
    i64 best = 0;
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j) {
        i64 v = w.A[i][j] < 0 ? -w.A[i][j] : w.A[i][j];
        if (v != 0 && (pi < 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // remaining block zero
    w.row_swap(k, pi);
    w.col_swap(k, pj);
    if (w.A[k][k] < 0) w.row_neg(k);
    bool clean = true;
    for (int i = k + 1; i < rows; ++i) {
      i64 qt = w.A[i][k] / w.A[k][k];
      if (qt) w.row_add(i, k, -qt);
      if (w.A[i][k] != 0) clean = false;
    }
    for (int j = k + 1; j < cols; ++j) {
      i64 qt = w.A[k][j] / w.A[k][k];
      if (qt) w.col_add(j, k, -qt);
      if (w.A[k][j] != 0) clean = false;
    }
    if (!clean) continue;  // re-pivot on smaller remainders
    // divisibility fix: pivot must divide every remaining entry
    bool fixed = true;
    for (int i = k + 1; i < rows && fixed; ++i)
      for (int j = k + 1; j < cols && fixed; ++j)
        if (w.A[i][j] % w.A[k][k] != 0) {
          w.row_add(k, i, 1);
          fixed = false;
        }
    if (!fixed) continue;
    ++k;
  }
  SmithInt out;
  out.diag.resize(lim);
  for (int i = 0; i < lim; ++i) out.diag[i] = w.A[i][i];
  out.U = std::move(w.U);
  out.Uinv = std::move(w.Uinv);
  out.V = std::move(w.V);
  out.Vinv = std::move(w.Vinv);
  return out;
}

IMat hnf_cols(IMat A) {
  int rows = static_cast<int>(A.size());
  int cols = rows ? static_cast<int>(A[0].size()) : 0;
  int c = 0;
  for (int r = 0; r < rows && c < cols; ++r) {
    // gcd the entries of row r across columns c..cols-1 into column c
    while (true) {
      int nz = -1;
      i64 best = 0;
      for (int j = c; j < cols; ++j) {
        i64 v = A[r][j] < 0 ? -A[r][j] : A[r][j];
        if (v != 0 && (nz < 0 || v < best)) {
          best = v;
          nz = j;
        }
      }
      if (nz < 0) break;  // row r is zero in the working block
      for (auto& row : A) std::swap(row[c], row[nz]);
      if (A[r][c] < 0)
        for (auto& row : A) row[c] = -row[c];
      bool done = true;
      for (int j = c + 1; j < cols; ++j) {
        i64 qt = A[r][j] / A[r][c];
        if (qt)
          for (int i = 0; i < rows; ++i) A[i][j] -= qt * A[i][c];
        if (A[r][j] != 0) done = false;
      }
      if (done) break;
    }
    if (A[r][c] != 0) {
      // reduce earlier columns against this pivot
      for (int j = 0; j < c; ++j) {
        i64 qt = A[r][j] / A[r][c];
        if (A[r][j] % A[r][c] < 0) qt -= 1;  // floor division for canonical range
        if (qt)
          for (int i = 0; i < rows; ++i) A[i][j] -= qt * A[i][c];
      }
      ++c;
    }
  }
  // drop zero columns beyond c
  for (auto& row : A) row.resize(c);
  return A;
}

i64 det_int(IMat A) {
  int n = static_cast<int>(A.size());
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  i64 sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A[k][k] == 0) {
      int s = -1;
      for (int i = k + 1; i < n; ++i)
        if (A[i][k] != 0) {
          s = i;
          break;
        }
      if (s < 0) return 0;
      std::swap(A[k], A[s]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

std::vector<std::vector<i64>> coset_reps(const IMat& lambda) {
  int d = static_cast<int>(lambda.size());
  IMat H = hnf_cols(lambda);
  if (static_cast<int>(H.empty() ? 0 : H[0].size()) != d)
    throw Error(ErrorKind::validation_error,
                "coarse-graining matrix must have full rank");
  // HNF pivots are diagonal after column HNF of a full-rank square matrix
  std::vector<i64> diag(d);
  for (int i = 0; i < d; ++i) {
    if (H[i][i] <= 0)
      throw Error(ErrorKind::internal_error, "HNF pivot not positive");
    diag[i] = H[i][i];
  }
  std::vector<std::vector<i64>> reps;
  std::vector<i64> cur(d, 0);
  // lexicographic enumeration of the fundamental box, then normal-form
  // reduction keeps representatives canonical
  while (true) {
    reps.push_back(lattice_reduce(H, cur));
    int i = d - 1;
    while (i >= 0) {
      cur[i] += 1;
      if (cur[i] < diag[i]) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

std::vector<i64> lattice_reduce(const IMat& hnf, const std::vector<i64>& v,
                                std::vector<i64>* multiples) {
  int d = static_cast<int>(v.size());
  std::vector<i64> out = v;
  if (multiples) multiples->assign(hnf.empty() ? 0 : hnf[0].size(), 0);
  // lower-triangular back-reduction from the top row down
  int cols = hnf.empty() ? 0 : static_cast<int>(hnf[0].size());
  for (int j = 0; j < cols && j < d; ++j) {
    i64 piv = hnf[j][j];
    if (piv == 0) continue;
    i64 q = out[j] / piv;
    if (out[j] % piv < 0) q -= 1;
    if (q) {
      for (int i = 0; i < d; ++i) out[i] -= q * hnf[i][j];
      if (multiples) (*multiples)[j] = q;
    }
  }
  return out;
}

u64 fnv1a64(const std::string& bytes) {
  u64 h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace stabmod
