#pragma once

// Subset predicates on positive roots: ideals, (negatively) coclosed sets,
// 2-local simplicity/compatibility, and the root-theoretic compatibility test
// with its G2 exception table.

#include "shicat/flats.hpp"
#include "shicat/rootsys.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace shicat {

// alpha = d1*beta1 + d2*beta2 with d1,d2 >= 1 and beta1 != beta2.
struct Decomposition {
  int alpha, beta1, beta2;
  int d1, d2;
  bool negative_inner;  // (beta1, beta2) < 0
};

struct PropertyReport {
  bool ideal = false;
  bool coclosed = false;
  bool neg_coclosed = false;
  bool two_loc_compatible = false;
  bool two_loc_simple = false;
  bool compatible = false;
  std::vector<std::string> witnesses;  // one entry per false flag, human-auditable

  bool chain_consistent() const {
    auto implies = [](bool a, bool b) { return !a || b; };
    return implies(ideal, coclosed) && implies(coclosed, neg_coclosed) &&
           implies(neg_coclosed, compatible) && implies(compatible, two_loc_compatible) &&
           implies(two_loc_compatible, compatible) && implies(compatible, two_loc_simple);
  }
};

class SubsetAnalyzer {
 public:
  explicit SubsetAnalyzer(const RootSystem& rs) : rs_(rs) {
    long n = static_cast<long>(rs.num_positive());
    decomps_by_alpha_.resize(n);
    int max_h = rs.highest_root.height();
    for (int b1 = 0; b1 < n; ++b1)
      for (int b2 = b1 + 1; b2 < n; ++b2) {
        const Root& r1 = rs.positive_roots[b1];
        const Root& r2 = rs.positive_roots[b2];
        bool neg = rs.inner(r1, r2) < 0;
        for (int d1 = 1; d1 * r1.height() <= max_h; ++d1)
          for (int d2 = 1; d1 * r1.height() + d2 * r2.height() <= max_h; ++d2) {
            Root cand = r1;
            for (int i = 0; i < rs.rank; ++i)
              cand.coeffs[i] = d1 * r1.coeffs[i] + d2 * r2.coeffs[i];
            int a = rs.index_of(cand);
            if (a >= 0) decomps_by_alpha_[a].push_back({a, b1, b2, d1, d2, neg});
          }
      }
    flats2_ = flats_codim(rs, 2);
    if (rs.type.family == 'G') init_g2_tables();
  }

  const RootSystem& system() const { return rs_; }
  const std::vector<Flat>& codim2_flats() const { return flats2_; }
  const std::vector<Decomposition>& decompositions_of(int alpha) const {
    return decomps_by_alpha_[alpha];
  }

  bool is_ideal(const std::vector<int>& sigma, std::string* witness = nullptr) const {
    auto in = member_flags(sigma);
    for (int a : sigma)
      for (size_t b = 0; b < rs_.num_positive(); ++b) {
        if (in[b]) continue;
        if (RootSystem::poset_leq(rs_.positive_roots[b], rs_.positive_roots[a])) {
          if (witness)
            *witness = rs_.positive_roots[a].str() + " >= " + rs_.positive_roots[b].str() +
                       " which is missing";
          return false;
        }
      }
    return true;
  }

  bool is_coclosed(const std::vector<int>& sigma, std::string* witness = nullptr) const {
    return coclosed_impl(sigma, false, witness);
  }

  bool is_neg_coclosed(const std::vector<int>& sigma, std::string* witness = nullptr) const {
    return coclosed_impl(sigma, true, witness);
  }

  // All violating decompositions (coclosedness if neg_only is false, negative
  // coclosedness otherwise).
  std::vector<Decomposition> violations(const std::vector<int>& sigma, bool neg_only) const {
    auto in = member_flags(sigma);
    std::vector<Decomposition> out;
    for (int a : sigma)
      for (const Decomposition& d : decomps_by_alpha_[a]) {
        if (neg_only && !d.negative_inner) continue;
        if (!in[d.beta1] && !in[d.beta2]) out.push_back(d);
      }
    return out;
  }

  bool is_2loc_simple(const std::vector<int>& sigma, std::string* witness = nullptr) const {
    auto in = member_flags(sigma);
    for (const Flat& f : flats2_) {
      if (!f.irreducible) continue;
      bool empty = true, meets_simple = false;
      for (int r : f.roots)
        if (in[r]) {
          empty = false;
          break;
        }
      if (empty) continue;
      for (int s : f.simple_system)
        if (in[s]) {
          meets_simple = true;
          break;
        }
      if (!meets_simple) {
        if (witness) *witness = "flat " + f.type_name + " " + flat_roots_str(f) + " has nonempty localization missing Delta_X";
        return false;
      }
    }
    return true;
  }

  bool is_2loc_compatible(const std::vector<int>& sigma, std::string* witness = nullptr) const {
    auto in = member_flags(sigma);
    for (const Flat& f : flats2_) {
      if (!f.irreducible) continue;
      if (f.type_name == "G2") {
        // only when the ambient system is G2 itself; localization is sigma
        if (!is_compatible(sigma, witness)) return false;
        continue;
      }
      // rank-2 compatibility in A2/B2: localization empty or meets Delta_X
      bool empty = true, meets_simple = false;
      for (int r : f.roots)
        if (in[r]) {
          empty = false;
          break;
        }
      if (empty) continue;
      for (int s : f.simple_system)
        if (in[s]) {
          meets_simple = true;
          break;
        }
      if (!meets_simple) {
        if (witness)
          *witness = "localization on flat " + f.type_name + " " + flat_roots_str(f) +
                     " is nonempty but misses Delta_X";
        return false;
      }
    }
    return true;
  }

  // Root-theoretic compatibility: negatively coclosed, with the hard-coded G2
  // exception family {alpha_2} u S, S nonempty subset of the three roots of
  // the form d1*alpha_1 + alpha_2 with d1 >= 2 (validated against the
  // geometric oracle in the test suite).
  bool is_compatible(const std::vector<int>& sigma, std::string* witness = nullptr) const {
    std::string w;
    if (is_neg_coclosed(sigma, &w)) return true;
    if (rs_.type.family == 'G') {
      std::vector<int> s = sigma;
      std::sort(s.begin(), s.end());
      for (const auto& exc : g2_compat_exceptions_)
        if (s == exc) return true;
    }
    if (witness) *witness = w;
    return false;
  }

  PropertyReport classify(const std::vector<int>& sigma) const {
    PropertyReport rep;
    std::string w;
    rep.ideal = is_ideal(sigma, &w);
    if (!rep.ideal) rep.witnesses.push_back("ideal: " + w);
    rep.coclosed = is_coclosed(sigma, &w);
    if (!rep.coclosed) rep.witnesses.push_back("coclosed: " + w);
    rep.neg_coclosed = is_neg_coclosed(sigma, &w);
    if (!rep.neg_coclosed) rep.witnesses.push_back("neg_coclosed: " + w);
    rep.two_loc_compatible = is_2loc_compatible(sigma, &w);
    if (!rep.two_loc_compatible) rep.witnesses.push_back("2loc_compatible: " + w);
    rep.two_loc_simple = is_2loc_simple(sigma, &w);
    if (!rep.two_loc_simple) rep.witnesses.push_back("2loc_simple: " + w);
    rep.compatible = is_compatible(sigma, &w);
    if (!rep.compatible) rep.witnesses.push_back("compatible: " + w);
    return rep;
  }

  // The seven compatible-but-not-negatively-coclosed subsets of G2.
  const std::vector<std::vector<int>>& g2_compat_exceptions() const {
    return g2_compat_exceptions_;
  }

  // The four Shi-free-but-not-compatible subsets of G2:
  // {alpha_1, highest} u S with S a subset of {alpha_1+alpha_2, 2alpha_1+alpha_2}.
  std::vector<std::vector<int>> g2_shi_exceptions() const {
    require_g2();
    int a1 = rs_.index_of(rs_.simple(0));
    int top = rs_.index_of(rs_.highest_root);
    int r11 = rs_.index_of(Root{{1, 1}});
    int r21 = rs_.index_of(Root{{2, 1}});
    std::vector<std::vector<int>> out;
    for (int m = 0; m < 4; ++m) {
      std::vector<int> s = {a1, top};
      if (m & 1) s.push_back(r11);
      if (m & 2) s.push_back(r21);
      std::sort(s.begin(), s.end());
      out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return out;
  }

 private:
  const RootSystem& rs_;
  std::vector<std::vector<Decomposition>> decomps_by_alpha_;
  std::vector<Flat> flats2_;
  std::vector<std::vector<int>> g2_compat_exceptions_;

  void require_g2() const {
    if (rs_.type.family != 'G') throw std::logic_error("G2 exception tables need a G2 system");
  }

  void init_g2_tables() {
    int a2 = rs_.index_of(rs_.simple(1));
    std::vector<int> pool = {rs_.index_of(Root{{2, 1}}), rs_.index_of(Root{{3, 1}}),
                             rs_.index_of(Root{{3, 2}})};
    for (int m = 1; m < 8; ++m) {
      std::vector<int> s = {a2};
      for (int b = 0; b < 3; ++b)
        if (m & (1 << b)) s.push_back(pool[b]);
      std::sort(s.begin(), s.end());
      g2_compat_exceptions_.push_back(s);
    }
    std::sort(g2_compat_exceptions_.begin(), g2_compat_exceptions_.end());
  }

  std::vector<char> member_flags(const std::vector<int>& sigma) const {
    std::vector<char> in(rs_.num_positive(), 0);
    for (int s : sigma) in[s] = 1;
    return in;
  }

  std::string flat_roots_str(const Flat& f) const {
    std::string s = "{";
    for (size_t i = 0; i < f.roots.size(); ++i) {
      if (i) s += ",";
      s += rs_.positive_roots[f.roots[i]].str();
    }
    return s + "}";
  }

  bool coclosed_impl(const std::vector<int>& sigma, bool neg_only, std::string* witness) const {
    auto in = member_flags(sigma);
    for (int a : sigma)
      for (const Decomposition& d : decomps_by_alpha_[a]) {
        if (neg_only && !d.negative_inner) continue;
        if (!in[d.beta1] && !in[d.beta2]) {
          if (witness)
            *witness = rs_.positive_roots[a].str() + " = " + std::to_string(d.d1) + "*" +
                       rs_.positive_roots[d.beta1].str() + " + " + std::to_string(d.d2) + "*" +
                       rs_.positive_roots[d.beta2].str() + " with neither part present" +
                       (d.negative_inner ? " (negative inner product)" : "");
          return false;
        }
      }
    return true;
  }
};

// Convenience one-shot wrappers.
inline bool is_ideal(const RootSystem& rs, const std::vector<int>& sigma) {
  return SubsetAnalyzer(rs).is_ideal(sigma);
}

inline std::vector<int> subset_from_roots(const RootSystem& rs, const std::vector<Root>& roots) {
  std::vector<int> out;
  for (const Root& r : roots) {
    int i = rs.index_of(r);
    if (i < 0) throw std::invalid_argument("not a positive root: " + r.str());
    out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<int> full_positive_set(const RootSystem& rs) {
  std::vector<int> out(rs.num_positive());
  for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

}  // namespace shicat
