#pragma once

// Exact arithmetic primitives shared by every module: GMP-backed integers and
// rationals, a deterministic PRNG wrapper, and small parsing/format helpers.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace shicat {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

inline std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline long to_long(const Int& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer out of long range: " + x.get_str());
  return x.get_si();
}

inline std::vector<Int> to_int_vec(const std::vector<long long>& v) {
  std::vector<Int> out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

inline Int ipow(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

namespace detail {
// Pascal triangle in plain integers, n <= 127 (far beyond any degree here)
inline long long binom_table(int n, int k) {
  static std::vector<std::vector<long long>> tri = [] {
    std::vector<std::vector<long long>> t(128);
    for (int i = 0; i < 128; ++i) {
      t[i].assign(i + 1, 1);
      for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  if (k < 0 || n < 0 || k > n) return 0;
  if (n >= 128) throw std::overflow_error("binomial table exceeded");
  return tri[n][k];
}
}  // namespace detail

// Number of monomials of degree d in n variables.
inline long monomial_count(int nvars, int deg) {
  if (deg < 0) return 0;
  if (nvars == 0) return deg == 0 ? 1 : 0;
  return static_cast<long>(detail::binom_table(deg + nvars - 1, nvars - 1));
}

struct Rng {
  std::mt19937_64 eng;
  uint64_t seed;
  explicit Rng(uint64_t s) : eng(s), seed(s) {}
  uint64_t next() { return eng(); }
  // uniform in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

}  // namespace shicat
