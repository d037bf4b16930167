#pragma once

// Dense homogeneous multivariate polynomials over exact integers, indexed by
// colex rank of the exponent vector within a fixed degree. Just enough for
// logarithmic-derivation computations: products, linear-form evaluation,
// and reduction modulo a linear form.

#include "shicat/numeric.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <vector>

namespace shicat {

// Exponent vectors of degree d in n vars, colex order; rank() inverts the
// enumeration without a lookup table.
struct MonomialBasis {
  int nvars = 0;
  int deg = 0;
  std::vector<std::vector<int>> exps;

  MonomialBasis() = default;
  MonomialBasis(int n, int d) : nvars(n), deg(d) {
    std::vector<int> e(n, 0);
    if (n == 0) {
      if (d == 0) exps.push_back(e);
      return;
    }
    e[n - 1] = d;
    gen(e, 0, d);
  }

  void gen(std::vector<int>& e, int pos, int rem) {
    if (pos == nvars - 1) {
      e[pos] = rem;
      exps.push_back(e);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      e[pos] = v;
      gen(e, pos + 1, rem - v);
    }
  }

  long size() const { return static_cast<long>(exps.size()); }

  // Colex-consistent rank of an exponent vector (must sum to deg).
  long rank(const std::vector<int>& e) const {
    long r = 0;
    int rem = deg;
    for (int i = 0; i + 1 < nvars; ++i) {
      // monomials with smaller exponent at position i come first
      for (int v = 0; v < e[i]; ++v) r += monomial_count(nvars - 1 - i, rem - v);
      rem -= e[i];
    }
    return r;
  }
};

namespace detail {
// node-based map: references stay valid across later insertions
inline const MonomialBasis& monomials(int nvars, int deg) {
  static std::map<std::pair<int, int>, MonomialBasis> cache;
  auto key = std::make_pair(nvars, deg);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, MonomialBasis(nvars, deg)).first;
  return it->second;
}
}  // namespace detail

struct HomPoly {
  int nvars = 0;
  int deg = 0;
  std::vector<Int> c;  // indexed by monomial rank

  HomPoly() = default;
  HomPoly(int n, int d) : nvars(n), deg(d), c(monomial_count(n, d)) {}

  static HomPoly zero(int n, int d) { return HomPoly(n, d); }

  static HomPoly monomial(int n, const std::vector<int>& e, const Int& coef) {
    int d = 0;
    for (int x : e) d += x;
    HomPoly p(n, d);
    p.c[detail::monomials(n, d).rank(e)] = coef;
    return p;
  }

  static HomPoly linear(const std::vector<Int>& coeffs) {
    HomPoly p(static_cast<int>(coeffs.size()), 1);
    // degree-1 monomials in colex order: x_{n-1} first? rank() decides.
    const auto& mb = detail::monomials(p.nvars, 1);
    for (long i = 0; i < mb.size(); ++i) {
      for (int j = 0; j < p.nvars; ++j)
        if (mb.exps[i][j] == 1) p.c[i] = coeffs[j];
    }
    return p;
  }

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }

  HomPoly& operator+=(const HomPoly& o) {
    assert(nvars == o.nvars && deg == o.deg);
    for (long i = 0; i < static_cast<long>(c.size()); ++i) c[i] += o.c[i];
    return *this;
  }

  HomPoly& operator-=(const HomPoly& o) {
    assert(nvars == o.nvars && deg == o.deg);
    for (long i = 0; i < static_cast<long>(c.size()); ++i) c[i] -= o.c[i];
    return *this;
  }

  HomPoly& scale(const Int& s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    assert(a.nvars == b.nvars);
    HomPoly r(a.nvars, a.deg + b.deg);
    const auto& ma = detail::monomials(a.nvars, a.deg);
    const auto& mbq = detail::monomials(a.nvars, b.deg);
    const auto& mr = detail::monomials(a.nvars, a.deg + b.deg);
    std::vector<int> e(a.nvars);
    for (long i = 0; i < ma.size(); ++i) {
      if (a.c[i] == 0) continue;
      for (long j = 0; j < mbq.size(); ++j) {
        if (b.c[j] == 0) continue;
        for (int v = 0; v < a.nvars; ++v) e[v] = ma.exps[i][v] + mbq.exps[j][v];
        r.c[mr.rank(e)] += a.c[i] * b.c[j];
      }
    }
    return r;
  }

  Int evaluate(const std::vector<Int>& pt) const {
    const auto& mb = detail::monomials(nvars, deg);
    Int total = 0, term;
    for (long i = 0; i < mb.size(); ++i) {
      if (c[i] == 0) continue;
      term = c[i];
      for (int v = 0; v < nvars; ++v)
        for (int k = 0; k < mb.exps[i][v]; ++k) term *= pt[v];
      total += term;
    }
    return total;
  }
};

// Reduction of a homogeneous polynomial modulo the linear form
// a_0 x_0 + ... + a_{n-1} x_{n-1}: substitute the pivot variable and scale by
// a_pivot^deg to stay integral. The result lives in n-1 variables (pivot
// removed); it vanishes iff the form divides the polynomial. Multiplicative:
// redc(fg) = redc(f) redc(g).
struct LinearReducer {
  int nvars;
  int pivot;
  Int apivot;
  std::vector<Int> rest;  // coefficients of the other variables, pivot slot removed
  mutable std::vector<HomPoly> powers;  // (-rest linear form)^t in n-1 vars

  explicit LinearReducer(const std::vector<Int>& form) : nvars(static_cast<int>(form.size())) {
    pivot = -1;
    for (int i = 0; i < nvars; ++i)
      if (form[i] != 0) {
        pivot = i;
        break;
      }
    assert(pivot >= 0);
    apivot = form[pivot];
    for (int i = 0; i < nvars; ++i)
      if (i != pivot) rest.push_back(-form[i]);
    powers.push_back(HomPoly(nvars - 1, 0));
    powers[0].c[0] = 1;
  }

  const HomPoly& substitution_power(int t) const {
    while (static_cast<int>(powers.size()) <= t) {
      HomPoly lin = HomPoly::linear(rest);
      powers.push_back(powers.back() * lin);
    }
    return powers[t];
  }

  HomPoly reduce(const HomPoly& p) const {
    assert(p.nvars == nvars);
    HomPoly r(nvars - 1, p.deg);
    const auto& mb = detail::monomials(nvars, p.deg);
    const auto& mr = detail::monomials(nvars - 1, p.deg);
    std::vector<int> e(nvars - 1);
    std::vector<Int> apow(p.deg + 1);
    apow[0] = 1;
    for (int t = 1; t <= p.deg; ++t) apow[t] = apow[t - 1] * apivot;
    for (long i = 0; i < mb.size(); ++i) {
      if (p.c[i] == 0) continue;
      int t = mb.exps[i][pivot];
      int idx = 0;
      for (int v = 0; v < nvars; ++v)
        if (v != pivot) e[idx++] = mb.exps[i][v];
      const HomPoly& pw = substitution_power(t);
      const auto& mpw = detail::monomials(nvars - 1, t);
      Int scaled = p.c[i] * apow[p.deg - t];
      std::vector<int> f(nvars - 1);
      for (long j = 0; j < mpw.size(); ++j) {
        if (pw.c[j] == 0) continue;
        for (int v = 0; v < nvars - 1; ++v) f[v] = e[v] + mpw.exps[j][v];
        r.c[mr.rank(f)] += scaled * pw.c[j];
      }
    }
    return r;
  }
};

}  // namespace shicat
