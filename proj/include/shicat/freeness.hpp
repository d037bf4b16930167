#pragma once

// Freeness decisions for rational central arrangements: characteristic
// polynomial screening (necessary by Terao factorization), then a Saito-basis
// search at the forced candidate degrees. For cones of the Shi-Catalan
// interpolation the search runs in multiplier coordinates over a certified
// free basis of a core subarrangement (Weyl cone, extended Shi/Catalan cones),
// which keeps every kernel tiny. Free verdicts carry a fully verified Saito
// certificate; NotFree verdicts carry either a non-factoring characteristic
// polynomial, a graded dimension mismatch, or an exhaustive determinant scan.

#include "shicat/arrangement.hpp"
#include "shicat/derivations.hpp"
#include "shicat/quasipoly.hpp"
#include "shicat/rootsys.hpp"
#include "shicat/subsets.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shicat {

struct FreenessResult {
  enum class Verdict { Free, NotFree, ProbablyNotFree };
  Verdict verdict = Verdict::ProbablyNotFree;
  std::vector<int> exponents;      // full multiset, size = nvars, when Free
  std::vector<Derivation> basis;   // Saito basis, when Free
  SaitoCertificate cert;
  std::string reason;
  long tuples_tried = 0;
  bool modular_only = false;

  bool free() const { return verdict == Verdict::Free; }
  std::string verdict_name() const {
    switch (verdict) {
      case Verdict::Free: return "Free";
      case Verdict::NotFree: return "NotFree";
      default: return "ProbablyNotFree";
    }
  }
};

// Nonnegative integer roots of a monic integer polynomial, or nullopt if it
// does not split.
inline std::optional<std::vector<int>> integer_roots(std::vector<long long> p) {
  int deg = static_cast<int>(p.size()) - 1;
  while (deg > 0 && p[deg] == 0) --deg;
  p.resize(deg + 1);
  std::vector<int> roots;
  long long bound = 1;
  for (long long c : p) bound += std::llabs(c);
  for (long long r = 0; r <= bound && deg > 0; ++r) {
    while (deg > 0) {
      long long v = 0;
      for (int i = deg; i >= 0; --i) v = v * r + p[i];
      if (v != 0) break;
      // synthetic division by (t - r)
      std::vector<long long> q(deg);
      q[deg - 1] = p[deg];
      for (int i = deg - 1; i >= 1; --i) q[i - 1] = p[i] + r * q[i];
      p.assign(q.begin(), q.end());
      deg -= 1;
      roots.push_back(static_cast<int>(r));
    }
  }
  if (deg > 0) return std::nullopt;
  std::sort(roots.begin(), roots.end());
  return roots;
}

// An exact, certified free basis with the Euler derivation in slot 0.
struct FreeBasis {
  CentralArrangement arr;
  std::vector<Derivation> ders;  // ders[0] = Euler
  std::vector<int> exponents;    // sorted, = degrees of ders
  SaitoCertificate cert;
};

namespace detail {

inline long long binom_ll(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return to_long(binomial(n, k));
}

// expected graded dimension of a free module with the given generator degrees
inline long long free_hilbert(const std::vector<int>& degs, int nvars, int d) {
  long long acc = 0;
  for (int e : degs) acc += binom_ll(d - e + nvars - 1, nvars - 1);
  return acc;
}

struct SlotSpace {
  int degree;
  std::vector<Derivation> basis;  // candidate derivations of this degree
};

// Enumerate tuples picking one basis index per slot; slots sharing a degree
// use strictly increasing indices (the determinant is alternating there).
template <typename F>
bool for_each_tuple(const std::vector<int>& slot_degrees,
                    const std::vector<const SlotSpace*>& spaces, long guard, F&& fn) {
  int k = static_cast<int>(slot_degrees.size());
  std::vector<int> pick(k, 0);
  long count = 0;
  std::function<bool(int)> rec = [&](int slot) -> bool {
    if (slot == k) {
      ++count;
      if (count > guard) return false;
      return fn(pick);
    }
    int lo = 0;
    if (slot > 0 && slot_degrees[slot] == slot_degrees[slot - 1]) lo = pick[slot - 1] + 1;
    for (int i = lo; i < static_cast<int>(spaces[slot]->basis.size()); ++i) {
      pick[slot] = i;
      if (!rec(slot + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

inline std::vector<Int> det_point(int nvars, int salt) {
  std::vector<Int> pt(nvars);
  for (int i = 0; i < nvars; ++i) pt[i] = Int(2 * i + 3 + salt * (i + 1) * (i + 1));
  return pt;
}

inline Int eval_det_at(const std::vector<const Derivation*>& ders, const std::vector<Int>& pt) {
  int n = static_cast<int>(ders.size());
  IntMat m(n, std::vector<Int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = ders[i]->comps[j].evaluate(pt);
  return det_int(m);
}

}  // namespace detail

// Dense decision: derivation spaces of the full arrangement at the candidate
// degrees. Suitable for small arrangements (central subsets of a Weyl
// arrangement, cones in up to 4 variables at low degree).
inline FreenessResult is_free_dense(const CentralArrangement& arr, long tuple_guard = 50000) {
  FreenessResult res;
  std::vector<long long> chi = char_poly_central(arr);
  auto roots = integer_roots(chi);
  if (!roots) {
    res.verdict = FreenessResult::Verdict::NotFree;
    res.reason = "characteristic polynomial does not factor over nonnegative integers: " +
                 poly_to_string(chi);
    return res;
  }
  std::vector<int> exps = *roots;
  std::vector<int> mult(arr.size(), 1);
  std::map<int, detail::SlotSpace> spaces;
  for (int d : exps) {
    if (spaces.count(d)) continue;
    DerivationSpace sp = derivation_space(arr, mult, d);
    long long expected = detail::free_hilbert(exps, arr.nvars, d);
    if (sp.dim != expected) {
      res.verdict = FreenessResult::Verdict::NotFree;
      std::ostringstream os;
      os << "graded dimension mismatch at degree " << d << ": dim D(A)_" << d << " = " << sp.dim
         << ", a free module with exponents (";
      for (size_t i = 0; i < exps.size(); ++i) os << (i ? "," : "") << exps[i];
      os << ") needs " << expected;
      res.reason = os.str();
      return res;
    }
    spaces[d] = detail::SlotSpace{d, std::move(sp.basis)};
  }
  std::vector<const detail::SlotSpace*> slot_spaces;
  for (int d : exps) slot_spaces.push_back(&spaces.at(d));

  std::vector<Int> pt = detail::det_point(arr.nvars, 1);
  std::vector<Int> pt2 = detail::det_point(arr.nvars, 5);
  std::optional<std::vector<int>> found;
  bool complete = detail::for_each_tuple(exps, slot_spaces, tuple_guard, [&](const std::vector<int>& pick) {
    ++res.tuples_tried;
    std::vector<const Derivation*> tuple;
    for (size_t s = 0; s < pick.size(); ++s) tuple.push_back(&slot_spaces[s]->basis[pick[s]]);
    if (detail::eval_det_at(tuple, pt) != 0 || detail::eval_det_at(tuple, pt2) != 0) {
      found = pick;
      return false;
    }
    // point determinants vanished: settle symbolically before ruling it out
    std::vector<Derivation> ds;
    for (const Derivation* d : tuple) ds.push_back(*d);
    if (!saito_det_poly(ds).is_zero()) {
      found = pick;
      return false;
    }
    return true;
  });
  if (found) {
    std::vector<Derivation> basis;
    for (size_t s = 0; s < found->size(); ++s) basis.push_back(slot_spaces[s]->basis[(*found)[s]]);
    SaitoCertificate cert = certify_saito(arr, basis, true);
    if (!cert.valid) throw std::logic_error("Saito certificate failed on a found basis: " + cert.failure);
    res.verdict = FreenessResult::Verdict::Free;
    res.exponents = exps;
    res.basis = std::move(basis);
    res.cert = std::move(cert);
    return res;
  }
  if (complete) {
    res.verdict = FreenessResult::Verdict::NotFree;
    res.reason = "no Saito basis exists at the forced degrees (exhaustive scan of " +
                 std::to_string(res.tuples_tried) + " basis tuples)";
  } else {
    res.verdict = FreenessResult::Verdict::ProbablyNotFree;
    res.reason = "tuple guard exceeded after " + std::to_string(res.tuples_tried) + " tuples";
  }
  return res;
}

// Multiplier-coordinate decision for arrangements containing a certified free
// core: derivations are sought as polynomial combinations of the non-Euler
// core basis elements, so only the hyperplanes outside the core impose
// conditions.
inline FreenessResult is_free_over_core(const CentralArrangement& full, const FreeBasis& core,
                                        long tuple_guard = 50000, bool modular_only = false) {
  FreenessResult res;
  res.modular_only = modular_only;
  int n = full.nvars;
  // extra forms: set difference
  std::vector<std::vector<long long>> extra;
  {
    size_t ci = 0;
    for (const auto& f : full.forms) {
      while (ci < core.arr.forms.size() && core.arr.forms[ci] < f) ++ci;
      if (ci < core.arr.forms.size() && core.arr.forms[ci] == f)
        ++ci;
      else
        extra.push_back(f);
    }
    if (full.size() != core.arr.size() + extra.size())
      throw std::invalid_argument("core is not a subarrangement of the full arrangement");
  }
  if (extra.empty()) {
    res.verdict = FreenessResult::Verdict::Free;
    res.basis = core.ders;
    res.exponents = core.exponents;
    std::sort(res.exponents.begin(), res.exponents.end());
    res.cert = core.cert;
    return res;
  }

  std::vector<long long> chi = char_poly_central(full);
  auto roots = integer_roots(chi);
  if (!roots) {
    res.verdict = FreenessResult::Verdict::NotFree;
    res.reason = "characteristic polynomial does not factor over nonnegative integers: " +
                 poly_to_string(chi);
    return res;
  }
  std::vector<int> exps = *roots;
  auto one = std::find(exps.begin(), exps.end(), 1);
  if (one == exps.end())
    throw std::logic_error("cone characteristic polynomial lacks the root 1");
  std::vector<int> slots = exps;
  slots.erase(std::find(slots.begin(), slots.end(), 1));  // Euler occupies one slot

  // reducers and reduced images of the non-Euler core derivations
  size_t ncore = core.ders.size() - 1;
  std::vector<LinearReducer> reds;
  std::vector<std::vector<HomPoly>> r_images(extra.size());  // [form][core der]
  for (size_t e = 0; e < extra.size(); ++e) {
    std::vector<Int> f = to_int_vec(extra[e]);
    reds.emplace_back(f);
    for (size_t i = 0; i < ncore; ++i)
      r_images[e].push_back(reds[e].reduce(core.ders[i + 1].apply_form(extra[e])));
  }

  std::map<int, detail::SlotSpace> spaces;
  for (int d : slots) {
    if (spaces.count(d)) continue;
    // columns: multiplier monomials per core derivation
    std::vector<std::pair<size_t, long>> col_index;  // (core der, monomial)
    std::vector<int> mult_deg(ncore);
    for (size_t i = 0; i < ncore; ++i) {
      mult_deg[i] = d - core.ders[i + 1].deg;
      if (mult_deg[i] < 0) continue;
      for (long m = 0; m < monomial_count(n, mult_deg[i]); ++m) col_index.push_back({i, m});
    }
    long cols = static_cast<long>(col_index.size());
    IntMat mat;
    for (size_t e = 0; e < extra.size(); ++e) {
      long nrows = monomial_count(n - 1, d);
      std::vector<std::vector<Int>> rows(nrows, std::vector<Int>(cols));
      for (long c = 0; c < cols; ++c) {
        auto [i, m] = col_index[c];
        HomPoly unit(n, mult_deg[i]);
        unit.c[m] = 1;
        HomPoly contrib = reds[e].reduce(unit) * r_images[e][i];
        for (long r = 0; r < nrows; ++r)
          if (contrib.c[r] != 0) rows[r][c] = contrib.c[r];
      }
      for (auto& r : rows) mat.push_back(std::move(r));
    }
    long long expected = 0;
    for (int dj : slots) expected += detail::binom_ll(d - dj + n - 1, n - 1);

    detail::SlotSpace sp;
    sp.degree = d;
    if (modular_only) {
      auto k = modp::kernel_mod_p(mat, modp::primes()[0]);
      if (static_cast<long long>(k.basis.size()) < expected) {
        // mod-p nullity bounds the rational nullity from above: sound
        res.verdict = FreenessResult::Verdict::NotFree;
        res.reason = "graded dimension below the free pattern at degree " + std::to_string(d);
        return res;
      }
      if (static_cast<long long>(k.basis.size()) > expected) {
        res.verdict = FreenessResult::Verdict::ProbablyNotFree;
        res.reason = "graded dimension above the free pattern mod p at degree " + std::to_string(d);
        return res;
      }
      // lift the mod-p kernel naively; verdicts stay labeled Monte Carlo
      for (const auto& kv : k.basis) {
        Derivation der;
        der.nvars = n;
        der.deg = d;
        for (int i = 0; i < n; ++i) der.comps.push_back(HomPoly(n, d));
        for (long c = 0; c < cols; ++c) {
          if (kv[c] == 0) continue;
          auto [i, m] = col_index[c];
          uint64_t half = modp::primes()[0] / 2;
          Int coef = kv[c] > half ? Int(kv[c]) - Int(modp::primes()[0]) : Int(kv[c]);
          HomPoly q(n, mult_deg[i]);
          q.c[m] = coef;
          der.add(core.ders[i + 1].scaled_by(q));
        }
        sp.basis.push_back(std::move(der));
      }
    } else {
      ExactKernel k = kernel_exact(mat);
      if (k.nullity_mod_p < expected || k.dim != expected) {
        res.verdict = FreenessResult::Verdict::NotFree;
        std::ostringstream os;
        os << "graded dimension mismatch at degree " << d << ": dim = " << k.dim << ", expected "
           << expected << " for exponents (";
        for (size_t i = 0; i < exps.size(); ++i) os << (i ? "," : "") << exps[i];
        os << ")";
        res.reason = os.str();
        return res;
      }
      for (const auto& v : k.basis) {
        // clear denominators, then assemble eta = sum q_i theta_i
        Int lcm = 1;
        for (const Rat& x : v) {
          Int den = x.get_den(), g;
          mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
          lcm = lcm / g * den;
        }
        Derivation der;
        der.nvars = n;
        der.deg = d;
        for (int i = 0; i < n; ++i) der.comps.push_back(HomPoly(n, d));
        for (long c = 0; c < cols; ++c) {
          if (v[c] == 0) continue;
          auto [i, m] = col_index[c];
          Rat coef = v[c] * Rat(lcm);
          HomPoly q(n, mult_deg[i]);
          q.c[m] = coef.get_num();
          der.add(core.ders[i + 1].scaled_by(q));
        }
        sp.basis.push_back(std::move(der));
      }
    }
    spaces[d] = std::move(sp);
  }

  std::vector<const detail::SlotSpace*> slot_spaces;
  for (int d : slots) slot_spaces.push_back(&spaces.at(d));
  Derivation euler = Derivation::euler(n);
  std::vector<Int> pt = detail::det_point(n, 1);
  std::vector<Int> pt2 = detail::det_point(n, 5);
  std::optional<std::vector<int>> found;
  bool complete = detail::for_each_tuple(slots, slot_spaces, tuple_guard, [&](const std::vector<int>& pick) {
    ++res.tuples_tried;
    std::vector<const Derivation*> tuple = {&euler};
    for (size_t s = 0; s < pick.size(); ++s) tuple.push_back(&slot_spaces[s]->basis[pick[s]]);
    if (detail::eval_det_at(tuple, pt) != 0 || detail::eval_det_at(tuple, pt2) != 0) {
      found = pick;
      return false;
    }
    std::vector<Derivation> ds;
    for (const Derivation* d : tuple) ds.push_back(*d);
    if (!saito_det_poly(ds).is_zero()) {
      found = pick;
      return false;
    }
    return true;
  });
  if (found) {
    std::vector<Derivation> basis = {euler};
    for (size_t s = 0; s < found->size(); ++s) basis.push_back(slot_spaces[s]->basis[(*found)[s]]);
    res.exponents = exps;
    res.verdict = FreenessResult::Verdict::Free;
    if (!modular_only) {
      // membership in D(full) is by construction (module combination of the
      // certified core basis + exactly verified extra conditions); the
      // determinant identity is still re-verified symbolically.
      SaitoCertificate cert = certify_saito(full, basis, false);
      if (!cert.valid)
        throw std::logic_error("Saito certificate failed on a found basis: " + cert.failure);
      res.cert = std::move(cert);
    }
    res.basis = std::move(basis);
    return res;
  }
  if (complete && !modular_only) {
    res.verdict = FreenessResult::Verdict::NotFree;
    res.reason = "no Saito basis exists at the forced degrees (exhaustive scan of " +
                 std::to_string(res.tuples_tried) + " basis tuples)";
  } else {
    res.verdict = FreenessResult::Verdict::ProbablyNotFree;
    res.reason = "no basis found after " + std::to_string(res.tuples_tried) + " tuples" +
                 (modular_only ? " (Monte Carlo mode)" : " (guard exceeded)");
  }
  return res;
}

// ---------------------------------------------------------------------------
// Shi-Catalan cones

inline CentralArrangement weyl_central(const RootSystem& rs) {
  std::vector<std::vector<long long>> forms;
  for (const Root& r : rs.positive_roots) forms.push_back({r.coeffs.begin(), r.coeffs.end()});
  return CentralArrangement::from_forms(rs.rank, std::move(forms));
}

inline CentralArrangement subset_central(const RootSystem& rs, const std::vector<int>& sigma) {
  std::vector<std::vector<long long>> forms;
  for (int s : sigma) {
    const Root& r = rs.positive_roots[s];
    forms.push_back({r.coeffs.begin(), r.coeffs.end()});
  }
  return CentralArrangement::from_forms(rs.rank, std::move(forms));
}

class FreenessEngine {
 public:
  static FreenessEngine& instance() {
    static FreenessEngine e;
    return e;
  }

  // Certified free basis of the cone of S^k_emptyset (k >= 1) and of
  // S^k_{Phi+} (extended Catalan), built along the chain
  // cWeyl < cS^1 < cCat^1 < cS^2 < ...
  const FreeBasis& shi_core(const RootSystem& rs, int k) {
    return chain(rs, 2 * k - 1);  // odd chain index: Shi level k
  }
  const FreeBasis& catalan_core(const RootSystem& rs, int k) {
    return chain(rs, 2 * k);  // even chain index: Catalan level k (0 = Weyl cone)
  }

 private:
  std::map<std::string, std::vector<std::unique_ptr<FreeBasis>>> cache_;
  std::mutex mu_;

  // chain index: 0 -> cWeyl, 1 -> cS^1_0, 2 -> cS^1_{Phi+}, 3 -> cS^2_0, ...
  const FreeBasis& chain(const RootSystem& rs, int idx) {
    std::lock_guard<std::mutex> lock(mu_);
    auto& vec = cache_[rs.type.name()];
    while (static_cast<int>(vec.size()) <= idx) {
      int next = static_cast<int>(vec.size());
      if (next == 0)
        vec.push_back(std::make_unique<FreeBasis>(build_weyl_cone(rs)));
      else
        vec.push_back(std::make_unique<FreeBasis>(extend(rs, *vec[next - 1], next)));
    }
    return *vec[idx];
  }

  static FreeBasis build_weyl_cone(const RootSystem& rs) {
    CentralArrangement weyl = weyl_central(rs);
    FreenessResult base = is_free_dense(weyl);
    if (!base.free()) throw std::logic_error("Weyl arrangement must be free");
    int n = rs.rank + 1;
    FreeBasis fb;
    // cone forms: lift + infinity hyperplane
    std::vector<std::vector<long long>> forms;
    for (auto f : weyl.forms) {
      f.push_back(0);
      forms.push_back(std::move(f));
    }
    std::vector<long long> inf(n, 0);
    inf.back() = 1;
    forms.push_back(std::move(inf));
    fb.arr = CentralArrangement::from_forms(n, std::move(forms));

    // lift basis, replace the degree-1 element by the full Euler derivation,
    // append z d/dz
    std::vector<Derivation> lifted;
    for (const Derivation& d : base.basis) {
      Derivation ld;
      ld.nvars = n;
      ld.deg = d.deg;
      for (int i = 0; i < rs.rank; ++i) ld.comps.push_back(embed(d.comps[i], n));
      ld.comps.push_back(HomPoly(n, d.deg));
      lifted.push_back(std::move(ld));
    }
    Derivation zdz;
    zdz.nvars = n;
    zdz.deg = 1;
    for (int i = 0; i < n; ++i) zdz.comps.push_back(HomPoly(n, 1));
    {
      std::vector<Int> zc(n, Int(0));
      zc.back() = 1;
      zdz.comps[n - 1] = HomPoly::linear(zc);
    }
    int euler_slot = -1;
    for (size_t i = 0; i < lifted.size(); ++i)
      if (lifted[i].deg == 1) euler_slot = static_cast<int>(i);
    if (euler_slot < 0) throw std::logic_error("Weyl basis lacks a degree-1 derivation");
    fb.ders.push_back(Derivation::euler(n));
    for (size_t i = 0; i < lifted.size(); ++i)
      if (static_cast<int>(i) != euler_slot) fb.ders.push_back(std::move(lifted[i]));
    fb.ders.push_back(std::move(zdz));
    SaitoCertificate cert = certify_saito(fb.arr, fb.ders, true);
    if (!cert.valid) throw std::logic_error("Weyl cone basis failed certification: " + cert.failure);
    for (const Derivation& d : fb.ders) fb.exponents.push_back(d.deg);
    fb.cert = std::move(cert);
    return fb;
  }

  // chain step idx >= 1: add one level of hyperplanes
  static FreeBasis extend(const RootSystem& rs, const FreeBasis& core, int idx) {
    // idx odd: level n = (idx+1)/2 going down as -(k-1)->... derive from the
    // arrangement definition instead: chain element idx corresponds to
    //   idx = 2k-1: S^k_empty    = levels [1-k, k]
    //   idx = 2k:   S^k_{Phi+}   = levels [-k, k]
    int k = (idx + 1) / 2;
    long level = (idx % 2 == 1) ? k : -k;
    std::vector<std::vector<long long>> forms = core.arr.forms;
    for (const Root& r : rs.positive_roots) {
      std::vector<long long> f(r.coeffs.begin(), r.coeffs.end());
      f.push_back(-level);
      forms.push_back(std::move(f));
    }
    CentralArrangement full = CentralArrangement::from_forms(rs.rank + 1, std::move(forms));
    FreenessResult res = is_free_over_core(full, core);
    if (!res.free())
      throw std::logic_error("chain arrangement unexpectedly not free: " + res.reason);
    FreeBasis fb;
    fb.arr = std::move(full);
    fb.ders = std::move(res.basis);
    fb.exponents = std::move(res.exponents);
    fb.cert = std::move(res.cert);
    return fb;
  }

  static HomPoly embed(const HomPoly& p, int nvars) {
    HomPoly out(nvars, p.deg);
    const auto& src = detail::monomials(p.nvars, p.deg);
    const auto& dst = detail::monomials(nvars, p.deg);
    std::vector<int> e(nvars, 0);
    for (long i = 0; i < src.size(); ++i) {
      if (p.c[i] == 0) continue;
      for (int v = 0; v < p.nvars; ++v) e[v] = src.exps[i][v];
      out.c[dst.rank(e)] = p.c[i];
    }
    return out;
  }
};

// Cone of S^k_Sigma (or the minus variant), as a central arrangement.
inline CentralArrangement shi_cone(const RootSystem& rs, int k, const std::vector<int>& sigma,
                                   ShiSign sign = ShiSign::Plus) {
  return cone_of(shi_arrangement(rs, k, sigma, sign));
}

namespace detail {

// Mod-p product of two homogeneous polynomials given as coefficient arrays.
inline std::vector<uint64_t> zp_mul(const std::vector<uint64_t>& a, int da,
                                    const std::vector<uint64_t>& b, int db, int nvars,
                                    uint64_t p) {
  const auto& ma = monomials(nvars, da);
  const auto& mb = monomials(nvars, db);
  const auto& mr = monomials(nvars, da + db);
  std::vector<uint64_t> r(mr.size(), 0);
  std::vector<int> e(nvars);
  for (long i = 0; i < ma.size(); ++i) {
    if (!a[i]) continue;
    for (long j = 0; j < mb.size(); ++j) {
      if (!b[j]) continue;
      for (int v = 0; v < nvars; ++v) e[v] = ma.exps[i][v] + mb.exps[j][v];
      long idx = mr.rank(e);
      r[idx] = (r[idx] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
  }
  return r;
}

inline std::vector<uint64_t> zp_of(const HomPoly& q, uint64_t p) {
  std::vector<uint64_t> out(q.c.size());
  for (size_t i = 0; i < q.c.size(); ++i) out[i] = modp::reduce_int(q.c[i], p);
  return out;
}

}  // namespace detail

// Cached per-(system, k) data for deciding Shi-Catalan interpolation cones:
// the Catalan superset lattice for characteristic polynomials and, for each
// potential extra hyperplane, the reduced images of the core derivations.
class ShiConeSolver {
 public:
  static ShiConeSolver& instance() {
    static ShiConeSolver s;
    return s;
  }

  FreenessResult decide(const RootSystem& rs, int k, const std::vector<int>& sigma, ShiSign sign,
                        bool modular_only) {
    if (k == 0) {
      if (sign == ShiSign::Minus) throw std::invalid_argument("minus variant needs k >= 1");
      CentralArrangement sub = subset_central(rs, sigma);
      FreenessResult res = is_free_dense(sub);
      if (res.free()) {
        res.exponents.push_back(1);  // cone factor
        std::sort(res.exponents.begin(), res.exponents.end());
      }
      return res;
    }
    Ctx& ctx = context(rs, k);
    const FreeBasis& core = (sign == ShiSign::Plus) ? *ctx.plus_core : *ctx.minus_core;
    CentralArrangement full = shi_cone(rs, k, sigma, sign);
    if (modular_only) return is_free_over_core(full, core, 50000, true);

    FreenessResult res;
    std::vector<long long> chi = ctx.lattice->chi_submask(ctx.lattice->mask_of(full));
    auto roots = integer_roots(chi);
    if (!roots) {
      res.verdict = FreenessResult::Verdict::NotFree;
      res.reason = "characteristic polynomial does not factor over nonnegative integers: " +
                   poly_to_string(chi);
      return res;
    }
    std::vector<int> exps = *roots;
    auto one = std::find(exps.begin(), exps.end(), 1);
    if (one == exps.end()) throw std::logic_error("cone characteristic polynomial lacks the root 1");
    std::vector<int> slots = exps;
    slots.erase(std::find(slots.begin(), slots.end(), 1));

    // extra hyperplanes as positive-root indices
    std::vector<char> in(rs.num_positive(), 0);
    for (int s : sigma) in[s] = 1;
    std::vector<int> extra_roots;
    for (size_t g = 0; g < rs.num_positive(); ++g) {
      if (sign == ShiSign::Plus && in[g]) extra_roots.push_back(static_cast<int>(g));
      if (sign == ShiSign::Minus && !in[g]) extra_roots.push_back(static_cast<int>(g));
    }
    if (extra_roots.empty()) {
      res.verdict = FreenessResult::Verdict::Free;
      res.basis = core.ders;
      res.exponents = core.exponents;
      std::sort(res.exponents.begin(), res.exponents.end());
      res.cert = core.cert;
      return res;
    }
    auto& pool = (sign == ShiSign::Plus) ? ctx.plus_pool : ctx.minus_pool;
    int n = rs.rank + 1;
    size_t ncore = core.ders.size() - 1;
    uint64_t p = modp::primes()[0];

    struct Slot {
      int degree;
      std::vector<std::pair<size_t, long>> cols;      // (core der, monomial)
      std::vector<std::vector<uint64_t>> kernel;      // mod-p vectors
      std::vector<std::vector<uint64_t>> point_vals;  // [vec] -> n comp values at pt, mod p
      std::vector<std::vector<uint64_t>> point_vals2;
    };
    std::map<int, Slot> spaces;
    for (int d : slots) {
      if (spaces.count(d)) continue;
      Slot slot;
      slot.degree = d;
      std::vector<int> mult_deg(ncore, -1);
      for (size_t i = 0; i < ncore; ++i) {
        mult_deg[i] = d - core.ders[i + 1].deg;
        if (mult_deg[i] < 0) continue;
        for (long m = 0; m < monomial_count(n, mult_deg[i]); ++m) slot.cols.push_back({i, m});
      }
      long cols = static_cast<long>(slot.cols.size());
      long rows_per_form = monomial_count(n - 1, d);
      std::vector<std::vector<uint64_t>> mat(extra_roots.size() * rows_per_form,
                                             std::vector<uint64_t>(cols, 0));
      for (size_t e = 0; e < extra_roots.size(); ++e) {
        ExtraFormData& fd = pool.at(extra_roots[e]);
        for (long c = 0; c < cols; ++c) {
          auto [i, m] = slot.cols[c];
          const auto& mono_red = fd.mono_modp(mult_deg[i], p);
          auto contrib = detail::zp_mul(mono_red[m], mult_deg[i], fd.r_modp(i, p),
                                        core.ders[i + 1].deg, n - 1, p);
          for (long r = 0; r < rows_per_form; ++r)
            if (contrib[r]) mat[e * rows_per_form + r][c] = contrib[r];
        }
      }
      // kernel mod p of a plain uint64 matrix
      modp::KernelModP ker = zp_kernel(mat, cols, p);
      long long expected = 0;
      for (int dj : slots) expected += detail::binom_ll(d - dj + n - 1, n - 1);
      if (static_cast<long long>(ker.basis.size()) < expected) {
        res.verdict = FreenessResult::Verdict::NotFree;
        res.reason = "graded dimension below the free pattern at degree " + std::to_string(d) +
                     " (mod-p nullity bounds the rational one from above)";
        return res;
      }
      if (static_cast<long long>(ker.basis.size()) > expected)
        return is_free_over_core(full, core);  // settle exactly
      slot.kernel = std::move(ker.basis);
      spaces[d] = std::move(slot);
    }

    // mod-p point screening data
    std::vector<Int> pt = detail::det_point(n, 1);
    std::vector<Int> pt2 = detail::det_point(n, 5);
    auto fill_point_vals = [&](Slot& slot, const std::vector<Int>& point,
                               std::vector<std::vector<uint64_t>>& out) {
      // core derivation component values at the point
      std::vector<std::vector<uint64_t>> thv(ncore, std::vector<uint64_t>(n));
      for (size_t i = 0; i < ncore; ++i)
        for (int j = 0; j < n; ++j)
          thv[i][j] = modp::reduce_int(core.ders[i + 1].comps[j].evaluate(point), p);
      // monomial values at the point per required degree
      std::map<int, std::vector<uint64_t>> mono_vals;
      for (auto [i, m] : slot.cols) {
        int e = slot.degree - core.ders[i + 1].deg;
        if (mono_vals.count(e)) continue;
        const auto& mb = detail::monomials(n, e);
        std::vector<uint64_t> vals(mb.size());
        for (long mm = 0; mm < mb.size(); ++mm) {
          uint64_t v = 1;
          for (int vv = 0; vv < n; ++vv)
            for (int rep = 0; rep < mb.exps[mm][vv]; ++rep)
              v = modp::mulmod(v, modp::reduce_int(point[vv], p), p);
          vals[mm] = v;
        }
        mono_vals[e] = std::move(vals);
      }
      out.assign(slot.kernel.size(), std::vector<uint64_t>(n, 0));
      for (size_t b = 0; b < slot.kernel.size(); ++b)
        for (size_t c = 0; c < slot.cols.size(); ++c) {
          uint64_t kv = slot.kernel[b][c];
          if (!kv) continue;
          auto [i, m] = slot.cols[c];
          uint64_t mv = mono_vals[slot.degree - core.ders[i + 1].deg][m];
          uint64_t f = modp::mulmod(kv, mv, p);
          for (int j = 0; j < n; ++j)
            out[b][j] = (out[b][j] + modp::mulmod(f, thv[i][j], p)) % p;
        }
    };
    for (auto& [d, slot] : spaces) {
      fill_point_vals(slot, pt, slot.point_vals);
      fill_point_vals(slot, pt2, slot.point_vals2);
    }
    std::vector<Slot*> slot_ptr;
    for (int d : slots) slot_ptr.push_back(&spaces.at(d));
    std::vector<uint64_t> euler_pt(n), euler_pt2(n);
    for (int j = 0; j < n; ++j) {
      euler_pt[j] = modp::reduce_int(pt[j], p);
      euler_pt2[j] = modp::reduce_int(pt2[j], p);
    }
    auto det_mod = [&](const std::vector<std::vector<uint64_t>>& rows) {
      int m = static_cast<int>(rows.size());
      std::vector<std::vector<uint64_t>> a = rows;
      uint64_t det = 1;
      for (int c = 0; c < m; ++c) {
        int sel = -1;
        for (int r = c; r < m; ++r)
          if (a[r][c]) {
            sel = r;
            break;
          }
        if (sel < 0) return uint64_t(0);
        if (sel != c) {
          std::swap(a[sel], a[c]);
          det = p - det;
        }
        det = modp::mulmod(det, a[c][c], p);
        uint64_t inv = modp::invmod(a[c][c], p);
        for (int r = c + 1; r < m; ++r) {
          if (!a[r][c]) continue;
          uint64_t f = modp::mulmod(a[r][c], inv, p);
          for (int j = c; j < m; ++j) {
            uint64_t s = modp::mulmod(f, a[c][j], p);
            a[r][j] = (a[r][j] >= s) ? a[r][j] - s : a[r][j] + p - s;
          }
        }
      }
      return det % p;
    };

    std::optional<std::vector<int>> found;
    long tuples = 0;
    {
      int kslots = static_cast<int>(slots.size());
      std::vector<int> pick(kslots, 0);
      std::function<bool(int)> rec = [&](int s) -> bool {
        if (s == kslots) {
          ++tuples;
          std::vector<std::vector<uint64_t>> rows = {euler_pt};
          for (int t = 0; t < kslots; ++t) rows.push_back(slot_ptr[t]->point_vals[pick[t]]);
          if (det_mod(rows) != 0) {
            found = pick;
            return false;
          }
          rows = {euler_pt2};
          for (int t = 0; t < kslots; ++t) rows.push_back(slot_ptr[t]->point_vals2[pick[t]]);
          if (det_mod(rows) != 0) {
            found = pick;
            return false;
          }
          return true;
        }
        int lo = (s > 0 && slots[s] == slots[s - 1]) ? pick[s - 1] + 1 : 0;
        for (int i = lo; i < static_cast<int>(slot_ptr[s]->kernel.size()); ++i) {
          pick[s] = i;
          if (!rec(s + 1)) return false;
        }
        return true;
      };
      rec(0);
      res.tuples_tried = tuples;
    }
    if (!found) return is_free_over_core(full, core);  // settle exactly (rare)

    // reconstruct the chosen multiplier vectors and verify them exactly
    Int P(static_cast<unsigned long>(p));
    std::vector<Derivation> basis = {Derivation::euler(n)};
    for (size_t s = 0; s < slots.size(); ++s) {
      Slot& slot = *slot_ptr[s];
      const auto& kv = slot.kernel[(*found)[s]];
      std::vector<Rat> q(kv.size());
      for (size_t c = 0; c < kv.size(); ++c) {
        auto rec = modp::rational_reconstruct(Int(kv[c]), P);
        if (!rec) return is_free_over_core(full, core);
        q[c] = *rec;
      }
      Int lcm = 1;
      for (const Rat& x : q) {
        Int den = x.get_den(), g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
      }
      // exact multiplier polynomials per core derivation
      std::vector<HomPoly> mults;
      for (size_t i = 0; i < ncore; ++i) {
        int e = slot.degree - core.ders[i + 1].deg;
        mults.push_back(HomPoly(n, std::max(e, 0)));
      }
      for (size_t c = 0; c < kv.size(); ++c) {
        if (q[c] == 0) continue;
        auto [i, m] = slot.cols[c];
        Rat coef = q[c] * Rat(lcm);
        mults[i].c[m] = coef.get_num();
      }
      // exact verification against each extra hyperplane via reduced images
      for (int g : extra_roots) {
        ExtraFormData& fd = pool.at(g);
        HomPoly acc(n - 1, slot.degree);
        for (size_t i = 0; i < ncore; ++i) {
          if (mults[i].deg < 0 || mults[i].is_zero()) continue;
          acc += fd.red.reduce(mults[i]) * fd.r_exact[i];
        }
        if (!acc.is_zero()) return is_free_over_core(full, core);
      }
      Derivation der;
      der.nvars = n;
      der.deg = slot.degree;
      for (int j = 0; j < n; ++j) der.comps.push_back(HomPoly(n, slot.degree));
      for (size_t i = 0; i < ncore; ++i) {
        if (mults[i].is_zero()) continue;
        der.add(core.ders[i + 1].scaled_by(mults[i]));
      }
      basis.push_back(std::move(der));
    }
    SaitoCertificate cert = certify_saito(full, basis, false);
    if (!cert.valid) return is_free_over_core(full, core);
    res.verdict = FreenessResult::Verdict::Free;
    res.exponents = exps;
    res.basis = std::move(basis);
    res.cert = std::move(cert);
    return res;
  }

 private:
  struct ExtraFormData {
    std::vector<long long> form;
    LinearReducer red;
    std::vector<HomPoly> r_exact;  // reduced theta_i(form) per non-Euler core derivation
    std::map<uint64_t, std::vector<std::vector<uint64_t>>> r_modp_cache;
    std::map<std::pair<int, uint64_t>, std::vector<std::vector<uint64_t>>> mono_cache;

    ExtraFormData(std::vector<long long> f, const FreeBasis& core)
        : form(std::move(f)), red(to_int_vec(form)) {
      for (size_t i = 1; i < core.ders.size(); ++i)
        r_exact.push_back(red.reduce(core.ders[i].apply_form(form)));
    }

    const std::vector<uint64_t>& r_modp(size_t i, uint64_t p) {
      auto it = r_modp_cache.find(p);
      if (it == r_modp_cache.end()) {
        std::vector<std::vector<uint64_t>> v;
        for (const HomPoly& q : r_exact) v.push_back(detail::zp_of(q, p));
        it = r_modp_cache.emplace(p, std::move(v)).first;
      }
      return it->second[i];
    }

    // reduced monomials of the given degree, mod p
    const std::vector<std::vector<uint64_t>>& mono_modp(int deg, uint64_t p) {
      auto key = std::make_pair(deg, p);
      auto it = mono_cache.find(key);
      if (it == mono_cache.end()) {
        int n = static_cast<int>(form.size());
        std::vector<std::vector<uint64_t>> v;
        for (long m = 0; m < monomial_count(n, deg); ++m) {
          HomPoly unit(n, deg);
          unit.c[m] = 1;
          v.push_back(detail::zp_of(red.reduce(unit), p));
        }
        it = mono_cache.emplace(key, std::move(v)).first;
      }
      return it->second;
    }
  };

  struct Ctx {
    const FreeBasis* plus_core = nullptr;
    const FreeBasis* minus_core = nullptr;
    std::unique_ptr<SupersetLattice> lattice;
    std::map<int, ExtraFormData> plus_pool;   // positive root index -> data
    std::map<int, ExtraFormData> minus_pool;
  };

  std::map<std::string, std::unique_ptr<Ctx>> cache_;
  std::mutex mu_;

  static modp::KernelModP zp_kernel(const std::vector<std::vector<uint64_t>>& mat, long cols,
                                    uint64_t p) {
    IntMat m;  // reuse the generic routine via a cheap exact wrapper
    m.reserve(mat.size());
    for (const auto& row : mat) {
      std::vector<Int> r(cols);
      for (long j = 0; j < cols; ++j)
        if (row[j]) r[j] = Int(static_cast<unsigned long>(row[j]));
      m.push_back(std::move(r));
    }
    return modp::kernel_mod_p(m, p);
  }

  Ctx& context(const RootSystem& rs, int k) {
    std::string key = rs.type.name() + ":" + std::to_string(k);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    auto ctx = std::make_unique<Ctx>();
    FreenessEngine& eng = FreenessEngine::instance();
    ctx->plus_core = &eng.shi_core(rs, k);
    ctx->minus_core = &eng.catalan_core(rs, k - 1);
    ctx->lattice = std::make_unique<SupersetLattice>(shi_cone(rs, k, full_positive_set(rs)));
    for (size_t g = 0; g < rs.num_positive(); ++g) {
      const Root& r = rs.positive_roots[g];
      std::vector<long long> fplus(r.coeffs.begin(), r.coeffs.end());
      fplus.push_back(k);  // homogenized H_alpha^{-k}
      std::vector<long long> fminus(r.coeffs.begin(), r.coeffs.end());
      fminus.push_back(-k);  // homogenized H_alpha^{k}
      ctx->plus_pool.emplace(static_cast<int>(g), ExtraFormData(std::move(fplus), *ctx->plus_core));
      ctx->minus_pool.emplace(static_cast<int>(g),
                              ExtraFormData(std::move(fminus), *ctx->minus_core));
    }
    it = cache_.emplace(key, std::move(ctx)).first;
    return *it->second;
  }
};

// Freeness of the cone of S^k_Sigma. k = 0 reduces to the subset arrangement
// in l variables (the cone is its product with the infinity line). Exact mode
// covers cones of rank <= 4 (ambient rank <= 3); larger systems take the
// Monte Carlo mode or the characterization predicate.
inline FreenessResult is_free_shi_cone(const RootSystem& rs, int k, const std::vector<int>& sigma,
                                       ShiSign sign = ShiSign::Plus, bool modular_only = false) {
  if (k > 0 && rs.rank > 3 && !modular_only)
    throw std::invalid_argument(
        "exact Saito checking of Shi-Catalan cones is supported for rank <= 3; use modular mode "
        "or the free-and-2-locally-simple predicate");
  return ShiConeSolver::instance().decide(rs, k, sigma, sign, modular_only);
}

// Generic freeness decision for a central arrangement (dense derivation
// spaces at the degrees forced by the characteristic polynomial).
inline FreenessResult is_free(const CentralArrangement& arr) { return is_free_dense(arr); }

// Freeness of the subset arrangement A_Sigma itself (exponents padded with
// zeros up to the rank for the non-essential directions).
inline FreenessResult is_free_subset(const RootSystem& rs, const std::vector<int>& sigma) {
  return is_free_dense(subset_central(rs, sigma));
}

struct ShiFreeReport {
  std::vector<int> ks;
  std::vector<FreenessResult> cone_results;  // parallel to ks
  bool shi_free = false;                     // all requested cones free
  bool predicate = false;                    // subset free and 2-locally simple
  bool subset_free = false;
  bool two_loc_simple = false;
  bool agree = false;
  bool saito_checked = true;  // false when out of exact range (predicate-only verdict)
};

// Shi-freeness via Saito checking at the requested k values, cross-checked
// against the characterization predicate (A_Sigma free and Sigma 2-locally
// simple).
inline ShiFreeReport is_shi_free(const SubsetAnalyzer& an, const std::vector<int>& sigma,
                                 std::vector<int> ks = {1, 2}) {
  const RootSystem& rs = an.system();
  ShiFreeReport rep;
  rep.ks = std::move(ks);
  rep.two_loc_simple = an.is_2loc_simple(sigma);
  rep.subset_free = is_free_subset(rs, sigma).free();
  rep.predicate = rep.subset_free && rep.two_loc_simple;
  if (rs.rank > 3) {
    rep.saito_checked = false;
    rep.shi_free = rep.predicate;
    rep.agree = true;
    return rep;
  }
  rep.shi_free = true;
  for (int k : rep.ks) {
    rep.cone_results.push_back(is_free_shi_cone(rs, k, sigma));
    if (!rep.cone_results.back().free()) rep.shi_free = false;
  }
  rep.agree = (rep.shi_free == rep.predicate);
  return rep;
}

struct DualityReport {
  bool holds = false;
  std::vector<int> subset_exponents;  // exponents of A_Sigma, padded with zeros
  std::vector<int> plus_exponents;
  std::vector<int> minus_exponents;
  std::string detail;
};

// Exponent duality between the cones of S^k_Sigma and S^k_{-Sigma}:
// (1, kh + e_i) against (1, kh - e_i) with (e_i) the exponents of A_Sigma.
inline DualityReport exponent_duality_check(const RootSystem& rs, const std::vector<int>& sigma,
                                            int k) {
  DualityReport rep;
  FreenessResult sub = is_free_subset(rs, sigma);
  FreenessResult plus = is_free_shi_cone(rs, k, sigma, ShiSign::Plus);
  FreenessResult minus = is_free_shi_cone(rs, k, sigma, ShiSign::Minus);
  if (!sub.free() || !plus.free() || !minus.free()) {
    rep.detail = "not all of A_Sigma, plus cone, minus cone are free";
    return rep;
  }
  rep.subset_exponents = sub.exponents;
  rep.plus_exponents = plus.exponents;
  rep.minus_exponents = minus.exponents;
  long h = rs.coxeter_number;
  std::vector<int> want_plus = {1}, want_minus = {1};
  for (int e : sub.exponents) {
    want_plus.push_back(static_cast<int>(k * h) + e);
    want_minus.push_back(static_cast<int>(k * h) - e);
  }
  std::sort(want_plus.begin(), want_plus.end());
  std::sort(want_minus.begin(), want_minus.end());
  rep.holds = (want_plus == plus.exponents) && (want_minus == minus.exponents);
  if (!rep.holds) rep.detail = "exponent multisets disagree with the duality pattern";
  return rep;
}

// ---------------------------------------------------------------------------
// Rank-2 multiarrangements

// Exponents of a rank-2 multiarrangement (always free): e1 is the smallest
// degree carrying a derivation, e2 = |m| - e1; the graded dimensions are
// cross-checked against the free Hilbert function.
inline std::pair<int, int> rank2_multi_exponents(const CentralArrangement& arr,
                                                 const std::vector<int>& mult) {
  if (arr.nvars != 2) throw std::invalid_argument("rank-2 multiarrangement expected");
  long total = 0;
  for (int m : mult) total += m;
  if (total == 0) return {0, 0};
  int e1 = -1;
  for (int d = 0; d <= total / 2; ++d) {
    DerivationSpace sp = derivation_space(arr, mult, d);
    if (sp.dim > 0) {
      e1 = d;
      break;
    }
  }
  if (e1 < 0) throw std::logic_error("no derivation found up to |m|/2");
  int e2 = static_cast<int>(total) - e1;
  std::vector<int> exps = {e1, e2};
  for (int d : {e1, e2, e2 + 1}) {
    DerivationSpace sp = derivation_space(arr, mult, d);
    if (sp.dim != detail::free_hilbert(exps, 2, d))
      throw std::logic_error("rank-2 multiarrangement dimensions off the free pattern");
  }
  return {e1, e2};
}

// Ziegler restriction of a cone onto the infinity hyperplane (last variable):
// hyperplanes become their first-(n-1)-coordinate forms, with multiplicity the
// number of parallel translates.
inline std::pair<CentralArrangement, std::vector<int>> ziegler_restriction_infinity(
    const CentralArrangement& cone) {
  int n = cone.nvars;
  std::map<std::vector<long long>, int> mult_map;
  for (const auto& f : cone.forms) {
    std::vector<long long> head(f.begin(), f.end() - 1);
    bool zero = true;
    for (long long x : head) zero &= (x == 0);
    if (zero) continue;  // the infinity hyperplane itself
    mult_map[CentralArrangement::canonicalize(head)] += 1;
  }
  std::vector<std::vector<long long>> forms;
  std::vector<int> mult;
  for (const auto& [f, m] : mult_map) {
    forms.push_back(f);
    mult.push_back(m);
  }
  CentralArrangement a;
  a.nvars = n - 1;
  a.forms = std::move(forms);  // already canonical & sorted via map order
  return {a, mult};
}

}  // namespace shicat
