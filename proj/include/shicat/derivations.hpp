#pragma once

// Polynomial derivations and logarithmic-derivation spaces: divisibility
// constraints, graded components of D(A, m) by exact kernel computation, and
// Saito-criterion certification of candidate bases.

#include "shicat/arrangement.hpp"
#include "shicat/exactla.hpp"
#include "shicat/hompoly.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace shicat {

struct Derivation {
  int nvars = 0;
  int deg = 0;                  // common degree of the coefficient polynomials
  std::vector<HomPoly> comps;   // theta = sum comps[i] * d/dx_i

  static Derivation euler(int nvars) {
    Derivation d;
    d.nvars = nvars;
    d.deg = 1;
    for (int i = 0; i < nvars; ++i) {
      std::vector<Int> coeffs(nvars, Int(0));
      coeffs[i] = 1;
      d.comps.push_back(HomPoly::linear(coeffs));
    }
    return d;
  }

  static Derivation coordinate(int nvars, int i) {
    Derivation d;
    d.nvars = nvars;
    d.deg = 0;
    for (int j = 0; j < nvars; ++j) {
      HomPoly p(nvars, 0);
      p.c[0] = (i == j) ? 1 : 0;
      d.comps.push_back(p);
    }
    return d;
  }

  HomPoly apply_form(const std::vector<long long>& form) const {
    HomPoly out(nvars, deg);
    for (int i = 0; i < nvars; ++i) {
      if (form[i] == 0) continue;
      for (long k = 0; k < static_cast<long>(out.c.size()); ++k)
        out.c[k] += Int(static_cast<long>(form[i])) * comps[i].c[k];
    }
    return out;
  }

  // theta scaled by a polynomial multiplier
  Derivation scaled_by(const HomPoly& q) const {
    Derivation d;
    d.nvars = nvars;
    d.deg = deg + q.deg;
    for (int i = 0; i < nvars; ++i) d.comps.push_back(q * comps[i]);
    return d;
  }

  Derivation& add(const Derivation& o) {
    for (int i = 0; i < nvars; ++i) comps[i] += o.comps[i];
    return *this;
  }

  void clear_denominators(const Rat& scale) {
    for (auto& p : comps)
      for (auto& c : p.c) {
        Rat v = Rat(c) * scale;
        if (v.get_den() != 1) throw std::logic_error("clear_denominators left a fraction");
        c = v.get_num();
      }
  }
};

namespace detail {

// s-th Taylor coefficient of a polynomial along a linear form (scaled by a
// power of the pivot coefficient to stay integral): the conditions
// "form^m divides P" are exactly tc_s(P) = 0 for s = 0..m-1. tc_0 agrees with
// LinearReducer::reduce.
inline HomPoly taylor_coefficient(const LinearReducer& red, const HomPoly& p, int s) {
  HomPoly r(p.nvars - 1, p.deg - s);
  if (p.deg - s < 0) throw std::invalid_argument("taylor level exceeds degree");
  const auto& mb = monomials(p.nvars, p.deg);
  const auto& mr = monomials(p.nvars - 1, p.deg - s);
  std::vector<Int> apow(p.deg + 1);
  apow[0] = 1;
  for (int t = 1; t <= p.deg; ++t) apow[t] = apow[t - 1] * red.apivot;
  std::vector<int> e(p.nvars - 1);
  std::vector<int> f(p.nvars - 1);
  for (long i = 0; i < mb.size(); ++i) {
    if (p.c[i] == 0) continue;
    int t = mb.exps[i][red.pivot];
    if (t < s) continue;
    int idx = 0;
    for (int v = 0; v < p.nvars; ++v)
      if (v != red.pivot) e[idx++] = mb.exps[i][v];
    const HomPoly& pw = red.substitution_power(t - s);
    const auto& mpw = monomials(p.nvars - 1, t - s);
    Int scaled = p.c[i] * apow[p.deg - t] * Int(static_cast<long>(binom_table(t, s)));
    for (long j = 0; j < mpw.size(); ++j) {
      if (pw.c[j] == 0) continue;
      for (int v = 0; v < p.nvars - 1; ++v) f[v] = e[v] + mpw.exps[j][v];
      r.c[mr.rank(f)] += scaled * pw.c[j];
    }
  }
  return r;
}

}  // namespace detail

inline bool divides_with_multiplicity(const std::vector<long long>& form, const HomPoly& p, int m) {
  if (m <= 0) return true;
  std::vector<Int> f = to_int_vec(form);
  LinearReducer red(f);
  for (int s = 0; s < m; ++s)
    if (!detail::taylor_coefficient(red, p, s).is_zero()) return false;
  return true;
}

inline bool in_derivation_module(const CentralArrangement& arr, const Derivation& d,
                                 const std::vector<int>* mult = nullptr) {
  for (size_t h = 0; h < arr.size(); ++h) {
    int m = mult ? (*mult)[h] : 1;
    if (m == 0) continue;
    if (!divides_with_multiplicity(arr.forms[h], d.apply_form(arr.forms[h]), m)) return false;
  }
  return true;
}

// Exact basis of the homogeneous degree-d component of D(A, m), computed
// densely over all coefficient unknowns.
struct DerivationSpace {
  std::vector<Derivation> basis;
  long dim = 0;
  long nullity_mod_p = 0;
};

inline DerivationSpace derivation_space(const CentralArrangement& arr, const std::vector<int>& mult,
                                        int d) {
  int n = arr.nvars;
  long per_comp = monomial_count(n, d);
  long cols = n * per_comp;
  IntMat mat;
  for (size_t h = 0; h < arr.size(); ++h) {
    int m = mult[h];
    if (m == 0) continue;
    std::vector<Int> f = to_int_vec(arr.forms[h]);
    LinearReducer red(f);
    for (int s = 0; s < m && s <= d; ++s) {
      // rows: coefficients of the s-th Taylor level of sum a_i f_i
      long nrows = monomial_count(n - 1, d - s);
      std::vector<std::vector<Int>> rows(nrows, std::vector<Int>(cols));
      for (int comp = 0; comp < n; ++comp) {
        if (arr.forms[h][comp] == 0) continue;
        Int a(static_cast<long>(arr.forms[h][comp]));
        for (long mono = 0; mono < per_comp; ++mono) {
          HomPoly unit(n, d);
          unit.c[mono] = a;
          HomPoly tc = detail::taylor_coefficient(red, unit, s);
          for (long r = 0; r < nrows; ++r)
            if (tc.c[r] != 0) rows[r][comp * per_comp + mono] += tc.c[r];
        }
      }
      for (auto& r : rows) mat.push_back(std::move(r));
    }
  }
  DerivationSpace out;
  if (mat.empty()) {
    // no constraints: the full space
    out.dim = cols;
    out.nullity_mod_p = cols;
    for (int comp = 0; comp < n; ++comp)
      for (long mono = 0; mono < per_comp; ++mono) {
        Derivation der;
        der.nvars = n;
        der.deg = d;
        for (int i = 0; i < n; ++i) der.comps.push_back(HomPoly(n, d));
        der.comps[comp].c[mono] = 1;
        out.basis.push_back(std::move(der));
      }
    return out;
  }
  ExactKernel k = kernel_exact(mat);
  out.dim = k.dim;
  out.nullity_mod_p = k.nullity_mod_p;
  for (const auto& v : k.basis) {
    Derivation der;
    der.nvars = n;
    der.deg = d;
    Int lcm = 1;
    for (const Rat& x : v) {
      Int den = x.get_den();
      Int g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    for (int i = 0; i < n; ++i) der.comps.push_back(HomPoly(n, d));
    for (long j = 0; j < cols; ++j) {
      Rat scaled = v[j] * Rat(lcm);
      if (scaled.get_den() != 1) throw std::logic_error("denominator clearing failed");
      der.comps[j / per_comp].c[j % per_comp] = scaled.get_num();
    }
    out.basis.push_back(std::move(der));
  }
  return out;
}

// Determinant of the Saito matrix M_ij = theta_i(x_j) as a polynomial, by
// subset dynamic programming over columns.
inline HomPoly saito_det_poly(const std::vector<Derivation>& ders) {
  int n = static_cast<int>(ders.size());
  int total = 0;
  for (const auto& d : ders) total += d.deg;
  // ascending degree keeps intermediate minors small until the last step
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ders[a].deg < ders[b].deg; });

  int nv = ders[0].nvars;
  std::map<uint32_t, HomPoly> cur;
  HomPoly one(nv, 0);
  one.c[0] = 1;
  cur[0] = one;
  for (int step = 0; step < n; ++step) {
    const Derivation& row = ders[order[step]];
    std::map<uint32_t, HomPoly> nxt;
    for (const auto& [mask, minor] : cur) {
      for (int c = 0; c < n; ++c) {
        if (mask & (1u << c)) continue;
        if (row.comps[c].is_zero()) continue;
        HomPoly term = minor * row.comps[c];
        // sign: parity of set bits of mask below c
        int lower = __builtin_popcount(mask & ((1u << c) - 1));
        if (lower & 1)
          for (auto& x : term.c) x = -x;
        uint32_t nm = mask | (1u << c);
        auto it = nxt.find(nm);
        if (it == nxt.end())
          nxt.emplace(nm, std::move(term));
        else
          it->second += term;
      }
    }
    cur = std::move(nxt);
  }
  auto full_it = cur.find((1u << n) - 1);
  if (full_it == cur.end()) return HomPoly(ders[0].nvars, total);  // identically zero
  HomPoly det = full_it->second;
  // fix the global sign from the row reordering
  int inversions = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (order[i] > order[j]) ++inversions;
  if (inversions & 1)
    for (auto& x : det.c) x = -x;
  if (det.deg != total) throw std::logic_error("Saito determinant degree mismatch");
  return det;
}

inline HomPoly defining_polynomial(const CentralArrangement& arr) {
  HomPoly q(arr.nvars, 0);
  q.c[0] = 1;
  for (const auto& f : arr.forms) {
    std::vector<Int> fi = to_int_vec(f);
    q = q * HomPoly::linear(fi);
  }
  return q;
}

struct SaitoCertificate {
  bool valid = false;
  Rat constant;                 // det = constant * Q
  std::vector<Int> point;      // evaluation point with Q(point) != 0
  std::string failure;
};

// Full certification: membership of every derivation in D(A), degree sum,
// and the symbolic identity det = c Q with c != 0.
inline SaitoCertificate certify_saito(const CentralArrangement& arr,
                                      const std::vector<Derivation>& ders,
                                      bool check_membership = true) {
  SaitoCertificate cert;
  if (static_cast<int>(ders.size()) != arr.nvars) {
    cert.failure = "wrong number of derivations";
    return cert;
  }
  int total = 0;
  for (const auto& d : ders) total += d.deg;
  if (total != static_cast<int>(arr.size())) {
    cert.failure = "degrees do not sum to the number of hyperplanes";
    return cert;
  }
  if (check_membership)
    for (const auto& d : ders)
      if (!in_derivation_module(arr, d)) {
        cert.failure = "derivation outside the logarithmic module";
        return cert;
      }
  HomPoly det = saito_det_poly(ders);
  if (det.is_zero()) {
    cert.failure = "determinant vanishes";
    return cert;
  }
  HomPoly q = defining_polynomial(arr);
  // find a point with Q != 0 on a small deterministic grid
  std::vector<Int> pt(arr.nvars);
  Int qval = 0;
  for (long trial = 0; trial < 200 && qval == 0; ++trial) {
    for (int i = 0; i < arr.nvars; ++i) pt[i] = Int(1 + ((trial * 7 + i * 3 + 1) % (11 + trial)));
    qval = q.evaluate(pt);
  }
  if (qval == 0) {
    cert.failure = "no nonvanishing point found";
    return cert;
  }
  Int dval = det.evaluate(pt);
  Rat c = make_rat(dval, qval);
  // symbolic identity det - c Q = 0
  Int cn = c.get_num(), cd = c.get_den();
  HomPoly residue = det;
  for (auto& x : residue.c) x *= cd;
  for (long i = 0; i < static_cast<long>(residue.c.size()); ++i) residue.c[i] -= cn * q.c[i];
  if (!residue.is_zero()) {
    cert.failure = "determinant is not a constant multiple of Q";
    return cert;
  }
  if (c == 0) {
    cert.failure = "constant factor vanishes";
    return cert;
  }
  cert.valid = true;
  cert.constant = c;
  cert.point = pt;
  return cert;
}

}  // namespace shicat
