#pragma once

// Characteristic quasi-polynomials of integral arrangements by exact counting
// over Z_q, the Ehrhart quasi-polynomial of the fundamental alcove, constituent
// fitting, and the Eulerian-polynomial counting identities.

#include "shicat/arrangement.hpp"
#include "shicat/rootsys.hpp"
#include "shicat/weyl.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace shicat {

inline IntegralArrangement from_subset(const RootSystem& rs, const std::vector<int>& sigma) {
  IntegralArrangement a;
  a.nvars = rs.rank;
  for (int s : sigma) {
    std::vector<long long> col(rs.rank);
    for (int i = 0; i < rs.rank; ++i) col[i] = rs.positive_roots[s].coeffs[i];
    a.columns.push_back(std::move(col));
    a.b.push_back(0);
  }
  return a;
}

enum class ShiSign { Plus, Minus };

// S^k_Sigma: all levels 1-k..k plus level -k on Sigma; the minus variant
// removes level k on Sigma instead.
inline IntegralArrangement shi_arrangement(const RootSystem& rs, int k, const std::vector<int>& sigma,
                                           ShiSign sign = ShiSign::Plus) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  IntegralArrangement a;
  a.nvars = rs.rank;
  std::vector<char> in(rs.num_positive(), 0);
  for (int s : sigma) in[s] = 1;
  for (size_t g = 0; g < rs.num_positive(); ++g) {
    std::vector<long long> col(rs.rank);
    for (int i = 0; i < rs.rank; ++i) col[i] = rs.positive_roots[g].coeffs[i];
    for (long n = 1 - k; n <= k; ++n) {
      if (sign == ShiSign::Minus && n == k && k > 0 && in[g]) continue;
      a.columns.push_back(col);
      a.b.push_back(n);
    }
    if (sign == ShiSign::Plus && in[g]) {
      a.columns.push_back(col);
      a.b.push_back(-k);
    }
  }
  return a;
}

// |M(A_q)|: points of Z_q^l avoiding every reduced hyperplane.
inline long long count_complement(const IntegralArrangement& arr, long q) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  double size = 1;
  for (int i = 0; i < arr.nvars; ++i) size *= static_cast<double>(q);
  if (size > 1e9) throw std::runtime_error("q^l exceeds the counting guard");
  int l = arr.nvars;
  size_t n = arr.size();
  std::vector<long> bq(n);
  for (size_t j = 0; j < n; ++j) bq[j] = ((arr.b[j] % q) + q) % q;
  std::vector<long> z(l, 0);
  long long count = 0;
  while (true) {
    bool hit = false;
    for (size_t j = 0; j < n && !hit; ++j) {
      long long v = 0;
      for (int i = 0; i < l; ++i) v += arr.columns[j][i] * z[i];
      if (((v % q) + q) % q == bq[j]) hit = true;
    }
    if (!hit) ++count;
    int pos = l - 1;
    while (pos >= 0 && z[pos] == q - 1) {
      z[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++z[pos];
  }
  return count;
}

// For sweeps over many subsets of one root system: histogram over the set of
// positive roots vanishing at each point of Z_q^l. The complement count of
// A_Sigma is then the sum of histogram entries whose mask misses Sigma.
inline std::vector<long long> vanishing_mask_histogram(const RootSystem& rs, long q) {
  size_t np = rs.num_positive();
  if (np > 24) throw std::runtime_error("histogram sweep limited to 24 positive roots");
  int l = rs.rank;
  std::vector<long long> hist(1ull << np, 0);
  std::vector<long> z(l, 0);
  while (true) {
    uint32_t mask = 0;
    for (size_t g = 0; g < np; ++g) {
      long long v = 0;
      for (int i = 0; i < l; ++i) v += rs.positive_roots[g].coeffs[i] * z[i];
      if (((v % q) + q) % q == 0) mask |= (1u << g);
    }
    hist[mask] += 1;
    int pos = l - 1;
    while (pos >= 0 && z[pos] == q - 1) {
      z[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++z[pos];
  }
  return hist;
}

inline long long count_from_histogram(const std::vector<long long>& hist, uint32_t sigma_mask) {
  long long c = 0;
  for (uint32_t m = 0; m < hist.size(); ++m)
    if ((m & sigma_mask) == 0) c += hist[m];
  return c;
}

// Lattice points of the t-dilated closed fundamental alcove w.r.t. the
// coweight lattice: #{m in Z_{>=0}^l : sum c_i m_i <= t}, zero for t < 0.
inline long long ehrhart_alcove(const RootSystem& rs, long t) {
  if (t < 0) return 0;
  std::function<long long(int, long)> rec = [&](int i, long rem) -> long long {
    if (i == rs.rank) return 1;
    long long acc = 0;
    for (long m = 0; m * rs.marks[i] <= rem; ++m) acc += rec(i + 1, rem - m * rs.marks[i]);
    return acc;
  };
  return rec(0, t);
}

struct QuasiPolynomial {
  long period = 1;
  std::vector<std::vector<Rat>> constituents;  // k-constituent at index k-1, coeffs ascending
  long verified_from = 1;  // counts match constituents for all sampled q >= this
  long fitted_qmax = 0;

  Rat evaluate(long q) const {
    const auto& c = constituents[static_cast<size_t>(((q - 1) % period + period) % period)];
    Rat acc = 0, p = 1;
    for (const Rat& a : c) {
      acc += a * p;
      p *= q;
    }
    return acc;
  }
};

// Candidate period: lcm of all nonzero minors of the coefficient matrix
// (a multiple of the lcm of elementary divisors over square submatrices, so a
// multiple of the true period; the fit reduces it to the minimal one).
inline long period_candidate(const IntegralArrangement& arr) {
  int l = arr.nvars;
  int n = static_cast<int>(arr.size());
  long long lcm = 1;
  std::vector<int> rows, cols;
  std::function<void(int, int)> over_cols = [&](int start, int need) {
    if (need == 0) {
      int sz = static_cast<int>(rows.size());
      IntMat em(sz, std::vector<Int>(sz));
      for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) em[i][j] = static_cast<long>(arr.columns[cols[j]][rows[i]]);
      Int d = det_int(em);
      if (d != 0) lcm = std::lcm(lcm, std::llabs(to_long(d)));
      return;
    }
    for (int c = start; c <= n - need; ++c) {
      cols.push_back(c);
      over_cols(c + 1, need - 1);
      cols.pop_back();
    }
  };
  std::function<void(int, int, int)> over_rows = [&](int start, int need, int size) {
    if (need == 0) {
      over_cols(0, size);
      return;
    }
    for (int r = start; r <= l - need; ++r) {
      rows.push_back(r);
      over_rows(r + 1, need - 1, size);
      rows.pop_back();
    }
  };
  for (int s = 1; s <= std::min(l, n); ++s) over_rows(0, s, s);
  return static_cast<long>(lcm);
}

// Fit constituents from counts at q = 1..qmax: interpolate on the top l+1
// samples of each residue class, then verify downward and record the
// stabilization threshold. Reduces to the minimal period.
inline QuasiPolynomial fit_quasipoly(const std::vector<long long>& counts, long period, int degree) {
  long qmax = static_cast<long>(counts.size());
  QuasiPolynomial qp;
  qp.period = period;
  qp.fitted_qmax = qmax;
  for (long k = 1; k <= period; ++k) {
    std::vector<long> qs;
    for (long q = k; q <= qmax; q += period) qs.push_back(q);
    if (static_cast<int>(qs.size()) < degree + 2)
      throw std::runtime_error("not enough samples per residue class to fit");
    std::vector<long> top(qs.end() - (degree + 1), qs.end());
    std::vector<Rat> coeffs(degree + 1, Rat(0));
    for (int i = 0; i <= degree; ++i) {
      std::vector<Rat> basis = {Rat(1)};
      Rat denom = 1;
      for (int j = 0; j <= degree; ++j) {
        if (j == i) continue;
        std::vector<Rat> nb(basis.size() + 1, Rat(0));
        for (size_t d = 0; d < basis.size(); ++d) {
          nb[d + 1] += basis[d];
          nb[d] -= Rat(top[j]) * basis[d];
        }
        basis = std::move(nb);
        denom *= Rat(top[i]) - Rat(top[j]);
      }
      Rat w = Rat(static_cast<long>(counts[top[i] - 1])) / denom;
      for (size_t d = 0; d < basis.size(); ++d) coeffs[d] += w * basis[d];
    }
    qp.constituents.push_back(std::move(coeffs));
  }
  for (const auto& c : qp.constituents)
    if (c.back() != 1) throw std::runtime_error("fitted constituent is not monic; enlarge q range");
  long threshold = 1;
  for (long q = qmax; q >= 1; --q) {
    if (qp.evaluate(q) != Rat(static_cast<long>(counts[q - 1]))) {
      threshold = q + 1;
      break;
    }
  }
  qp.verified_from = threshold;
  for (long d = 1; d < qp.period; ++d) {
    if (qp.period % d != 0) continue;
    bool same = true;
    for (long k = 0; k < qp.period && same; ++k)
      if (qp.constituents[k % d] != qp.constituents[k]) same = false;
    if (same) {
      qp.constituents.resize(d);
      qp.period = d;
      break;
    }
  }
  return qp;
}

inline QuasiPolynomial characteristic_quasipoly(const IntegralArrangement& arr, long qmax = 0) {
  long period = period_candidate(arr);
  if (qmax == 0) qmax = period * (arr.nvars + 3);
  std::vector<long long> counts;
  for (long q = 1; q <= qmax; ++q) counts.push_back(count_complement(arr, q));
  return fit_quasipoly(counts, period, arr.nvars);
}

struct IdentityReport {
  bool counting_identity = true;       // count(q) = sum a_i L(q - i) for q = 1..qmax
  long first_failure_q = 0;
  bool series_identity = true;         // generating function identity to order qmax
  long series_first_failure = 0;
  std::vector<long long> eulerian;     // coefficients of E_Sigma
  std::vector<long long> counts;
};

// The two Eulerian-polynomial identities for a Weyl subarrangement count:
// evaluation against shifted Ehrhart values and the generating-function form
// with denominator prod (1 - t^{c_i}).
inline IdentityReport verify_identity(const RootSystem& rs, const WeylGroup& W,
                                      const std::vector<int>& sigma, long qmax) {
  IdentityReport rep;
  rep.eulerian = W.eulerian_polynomial(sigma);
  IntegralArrangement arr = from_subset(rs, sigma);
  for (long q = 1; q <= qmax; ++q) rep.counts.push_back(count_complement(arr, q));

  for (long q = 1; q <= qmax; ++q) {
    long long rhs = 0;
    for (size_t i = 0; i < rep.eulerian.size(); ++i)
      if (rep.eulerian[i])
        rhs += rep.eulerian[i] * ehrhart_alcove(rs, q - static_cast<long>(i));
    if (rhs != rep.counts[q - 1]) {
      rep.counting_identity = false;
      rep.first_failure_q = q;
      break;
    }
  }

  std::vector<long long> inv(qmax + 1, 0);
  inv[0] = 1;
  std::vector<int> cs = {1};
  for (int i = 0; i < rs.rank; ++i) cs.push_back(rs.marks[i]);
  for (int c : cs)
    for (long d = c; d <= qmax; ++d) inv[d] += inv[d - c];  // multiply by 1/(1-t^c)
  for (long q = 1; q <= qmax; ++q) {
    long long coeff = 0;
    for (size_t i = 0; i < rep.eulerian.size(); ++i)
      if (rep.eulerian[i] && q >= static_cast<long>(i)) coeff += rep.eulerian[i] * inv[q - i];
    if (coeff != rep.counts[q - 1]) {
      rep.series_identity = false;
      rep.series_first_failure = q;
      break;
    }
  }
  return rep;
}

}  // namespace shicat
