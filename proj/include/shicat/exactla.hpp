#pragma once

// Exact linear algebra over the rationals. Kernels are searched modulo a
// large prime, lifted by rational reconstruction (with CRT escalation), and
// re-verified against the exact integer matrix; a plain mpq elimination is
// the deterministic fallback. Rank bounds from a modular run are used only in
// the sound direction (nullity mod p >= nullity over Q).

#include "shicat/numeric.hpp"

#include <cassert>
#include <optional>
#include <vector>

namespace shicat {

using IntMat = std::vector<std::vector<Int>>;
using RatVec = std::vector<Rat>;

namespace modp {

inline const std::vector<uint64_t>& primes() {
  static const std::vector<uint64_t> ps = {
      2305843009213693951ull,  // 2^61 - 1
      4611686018427387847ull, 4611686018427387817ull, 4611686018427387787ull,
      4611686018427387761ull, 4611686018427387751ull};
  return ps;
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline uint64_t invmod(uint64_t a, uint64_t p) { return powmod(a % p, p - 2, p); }

inline uint64_t reduce_int(const Int& x, uint64_t p) {
  Int m = x % Int(p);
  if (m < 0) m += Int(p);
  return m.get_ui();
}

struct KernelModP {
  long rank = 0;
  std::vector<int> pivot_cols;          // sorted
  std::vector<int> free_cols;           // sorted
  std::vector<std::vector<uint64_t>> basis;  // one vector per free column
};

// Row-reduce (mod p) and read off the kernel; basis vector for free column f
// has 1 at f and pivot entries filled by back-substitution.
inline KernelModP kernel_mod_p(const IntMat& m, uint64_t p) {
  long rows = static_cast<long>(m.size());
  long cols = rows ? static_cast<long>(m[0].size()) : 0;
  std::vector<std::vector<uint64_t>> a(rows, std::vector<uint64_t>(cols));
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) a[i][j] = reduce_int(m[i][j], p);

  KernelModP out;
  std::vector<int> pivot_of_row;
  long r = 0;
  for (long col = 0; col < cols && r < rows; ++col) {
    long sel = -1;
    for (long i = r; i < rows; ++i)
      if (a[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[r]);
    uint64_t inv = invmod(a[r][col], p);
    for (long j = col; j < cols; ++j) a[r][j] = mulmod(a[r][j], inv, p);
    for (long i = 0; i < rows; ++i) {
      if (i == r || a[i][col] == 0) continue;
      uint64_t f = a[i][col];
      for (long j = col; j < cols; ++j) {
        uint64_t s = mulmod(f, a[r][j], p);
        a[i][j] = (a[i][j] >= s) ? a[i][j] - s : a[i][j] + p - s;
      }
    }
    out.pivot_cols.push_back(static_cast<int>(col));
    pivot_of_row.push_back(static_cast<int>(col));
    ++r;
  }
  out.rank = r;
  std::vector<bool> is_pivot(cols, false);
  for (int c : out.pivot_cols) is_pivot[c] = true;
  for (long j = 0; j < cols; ++j)
    if (!is_pivot[j]) out.free_cols.push_back(static_cast<int>(j));
  for (int f : out.free_cols) {
    std::vector<uint64_t> v(cols, 0);
    v[f] = 1;
    for (long i = 0; i < r; ++i) {
      uint64_t val = a[i][f];
      if (val) v[pivot_of_row[i]] = p - val;
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

// Wang rational reconstruction: residue r mod M -> n/d with |n|,d <= sqrt(M/2).
inline std::optional<Rat> rational_reconstruct(const Int& r, const Int& M) {
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(M / 2).get_mpz_t());
  Int a = M, b = r % M;
  if (b < 0) b += M;
  Int x0 = 0, x1 = 1;
  while (b > bound) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (x1 == 0) return std::nullopt;
  Int num = b, den = x1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound) return std::nullopt;
  Int g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1 && g != 0) {
    // gcd(den, M) must be 1 for a valid reconstruction
    Int gm;
    mpz_gcd(gm.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
    if (gm != 1) return std::nullopt;
  }
  return make_rat(num, den);
}

}  // namespace modp

inline bool verify_in_kernel(const IntMat& m, const RatVec& v) {
  for (const auto& row : m) {
    Rat s = 0;
    for (size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0 && v[j] != 0) s += Rat(row[j]) * v[j];
    if (s != 0) return false;
  }
  return true;
}

// Deterministic fallback: mpq Gauss-Jordan.
inline std::vector<RatVec> kernel_exact_mpq(const IntMat& m) {
  long rows = static_cast<long>(m.size());
  long cols = rows ? static_cast<long>(m[0].size()) : 0;
  std::vector<RatVec> a(rows, RatVec(cols));
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) a[i][j] = Rat(m[i][j]);
  std::vector<int> pivot_of_row;
  std::vector<bool> is_pivot(cols, false);
  long r = 0;
  for (long col = 0; col < cols && r < rows; ++col) {
    long sel = -1;
    for (long i = r; i < rows; ++i)
      if (a[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[r]);
    Rat inv = a[r][col];
    for (long j = col; j < cols; ++j) a[r][j] /= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (long j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_of_row.push_back(static_cast<int>(col));
    is_pivot[col] = true;
    ++r;
  }
  std::vector<RatVec> basis;
  for (long f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, Rat(0));
    v[f] = 1;
    for (long i = 0; i < r; ++i) v[pivot_of_row[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct ExactKernel {
  std::vector<RatVec> basis;  // certified: every vector verified against the matrix
  long dim = 0;
  long nullity_mod_p = 0;  // upper bound for dim over Q
};

// Certified rational kernel. The returned dimension is exact: nullity mod p
// upper-bounds the rational nullity, and exhibiting that many verified
// rational kernel vectors pins it from below.
inline ExactKernel kernel_exact(const IntMat& m) {
  ExactKernel out;
  long cols = m.empty() ? 0 : static_cast<long>(m[0].size());
  if (cols == 0) return out;
  const auto& ps = modp::primes();
  modp::KernelModP k0 = modp::kernel_mod_p(m, ps[0]);
  out.nullity_mod_p = static_cast<long>(k0.basis.size());
  if (k0.basis.empty()) return out;

  std::vector<Int> residues;  // CRT accumulators per (vector, entry)
  Int modulus = 0;
  size_t nb = k0.basis.size();
  for (size_t np = 0; np < ps.size(); ++np) {
    modp::KernelModP k = (np == 0) ? k0 : modp::kernel_mod_p(m, ps[np]);
    if (k.free_cols != k0.free_cols) continue;  // unlucky prime, skip
    Int p(ps[np]);
    if (modulus == 0) {
      residues.assign(nb * cols, Int(0));
      for (size_t b = 0; b < nb; ++b)
        for (long j = 0; j < cols; ++j) residues[b * cols + j] = Int(k.basis[b][j]);
      modulus = p;
    } else {
      // CRT combine
      Int newmod = modulus * p;
      Int minv = 0;
      {
        Int mm = modulus % p;
        mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), p.get_mpz_t());
      }
      for (size_t b = 0; b < nb; ++b)
        for (long j = 0; j < cols; ++j) {
          Int& r0 = residues[b * cols + j];
          Int r1 = Int(k.basis[b][j]);
          Int diff = ((r1 - r0) % p + p) % p;
          r0 = (r0 + modulus * ((diff * minv) % p)) % newmod;
        }
      modulus = newmod;
    }
    // attempt reconstruction
    std::vector<RatVec> cand;
    bool ok = true;
    for (size_t b = 0; b < nb && ok; ++b) {
      RatVec v(cols);
      for (long j = 0; j < cols; ++j) {
        auto r = modp::rational_reconstruct(residues[b * cols + j], modulus);
        if (!r) {
          ok = false;
          break;
        }
        v[j] = *r;
      }
      if (ok) cand.push_back(std::move(v));
    }
    if (ok) {
      bool verified = true;
      for (const auto& v : cand)
        if (!verify_in_kernel(m, v)) {
          verified = false;
          break;
        }
      if (verified) {
        out.basis = std::move(cand);
        out.dim = static_cast<long>(out.basis.size());
        return out;
      }
    }
  }
  // fallback: exact elimination
  out.basis = kernel_exact_mpq(m);
  out.dim = static_cast<long>(out.basis.size());
  for (const auto& v : out.basis) assert(verify_in_kernel(m, v));
  return out;
}

// Exact determinant of a small integer matrix (fraction-free elimination).
inline Int det_int(IntMat a) {
  long n = static_cast<long>(a.size());
  if (n == 0) return 1;
  Int det = 1, denom = 1;
  int sign = 1;
  for (long k = 0; k < n; ++k) {
    long sel = -1;
    for (long i = k; i < n; ++i)
      if (a[i][k] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) return 0;
    if (sel != k) {
      std::swap(a[sel], a[k]);
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        if (k > 0) a[i][j] /= denom;
      }
      a[i][k] = 0;
    }
    denom = a[k][k];
  }
  det = a[n - 1][n - 1];
  return sign > 0 ? det : -det;
}

// Rank of an integer matrix via exact fraction-free elimination.
inline long rank_int(IntMat a) {
  long rows = static_cast<long>(a.size());
  long cols = rows ? static_cast<long>(a[0].size()) : 0;
  long r = 0;
  for (long col = 0; col < cols && r < rows; ++col) {
    long sel = -1;
    for (long i = r; i < rows; ++i)
      if (a[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[r]);
    for (long i = r + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      Int f = a[i][col], g = a[r][col];
      for (long j = col; j < cols; ++j) a[i][j] = a[i][j] * g - f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace shicat
