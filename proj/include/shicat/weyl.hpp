#pragma once

// Weyl group enumeration (as permutations of the full root list), the
// mark-weighted descent statistic over the extended simple roots, and the
// associated Eulerian polynomial E_Sigma(t) = (1/f) sum_w t^(h - dsc(w)).

#include "shicat/rootsys.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace shicat {

class WeylGroup {
 public:
  explicit WeylGroup(const RootSystem& rs, long long guard = 1000000) : rs_(rs) {
    if (rs.weyl_order > guard)
      throw std::runtime_error("Weyl group too large to enumerate: |W| = " +
                               std::to_string(rs.weyl_order));
    // full root list: positives then negatives
    long np = static_cast<long>(rs.num_positive());
    nroots_ = 2 * np;
    for (long i = 0; i < np; ++i) roots_.push_back(rs.positive_roots[i]);
    for (long i = 0; i < np; ++i) roots_.push_back(-rs.positive_roots[i]);
    std::map<std::vector<int>, int> idx;
    for (long i = 0; i < nroots_; ++i) idx[roots_[i].coeffs] = static_cast<int>(i);

    std::vector<std::vector<int>> gens;
    for (int i = 0; i < rs.rank; ++i) {
      std::vector<int> perm(nroots_);
      for (long r = 0; r < nroots_; ++r) perm[r] = idx.at(rs.reflect(i, roots_[r]).coeffs);
      gens.push_back(std::move(perm));
    }
    std::vector<int> id(nroots_);
    for (long r = 0; r < nroots_; ++r) id[r] = static_cast<int>(r);
    std::map<std::vector<int>, int> seen;
    seen[id] = 0;
    elements_.push_back(id);
    for (size_t head = 0; head < elements_.size(); ++head) {
      std::vector<int> cur = elements_[head];
      for (const auto& g : gens) {
        std::vector<int> nxt(nroots_);
        for (long r = 0; r < nroots_; ++r) nxt[r] = g[cur[r]];
        if (!seen.count(nxt)) {
          seen[nxt] = static_cast<int>(elements_.size());
          elements_.push_back(std::move(nxt));
        }
      }
    }
    if (static_cast<long long>(elements_.size()) != rs.weyl_order)
      throw std::logic_error("enumerated Weyl group size disagrees with the order formula");

    // Per element, the images of the extended simple roots alpha_0 = -highest,
    // alpha_1..alpha_l; record (negative?, positive index of the negation).
    long np_idx = np;
    std::vector<int> ext(rs.rank + 1);
    ext[0] = idx.at((-rs.highest_root).coeffs);
    for (int i = 0; i < rs.rank; ++i) ext[i + 1] = idx.at(rs.simple(i).coeffs);
    neg_image_.assign(elements_.size(), std::vector<int>(rs.rank + 1, -1));
    for (size_t w = 0; w < elements_.size(); ++w)
      for (int i = 0; i <= rs.rank; ++i) {
        int img = elements_[w][ext[i]];
        if (img >= np_idx) neg_image_[w][i] = img - static_cast<int>(np_idx);
      }
  }

  const RootSystem& system() const { return rs_; }
  long size() const { return static_cast<long>(elements_.size()); }
  const std::vector<int>& element(long w) const { return elements_[w]; }
  const std::vector<Root>& full_root_list() const { return roots_; }

  // dsc_Sigma(w): sum of marks c_i over extended indices i with
  // w(alpha_i) = -beta for some positive beta outside Sigma.
  int descent(long w, const std::vector<char>& sigma_flags) const {
    int d = 0;
    for (int i = 0; i <= rs_.rank; ++i) {
      int nb = neg_image_[w][i];
      if (nb >= 0 && !sigma_flags[nb]) d += (i == 0) ? 1 : rs_.marks[i - 1];
    }
    return d;
  }

  int descent(long w, const std::vector<int>& sigma) const {
    std::vector<char> flags(rs_.num_positive(), 0);
    for (int s : sigma) flags[s] = 1;
    return descent(w, flags);
  }

  // Coefficients of E_Sigma(t), index = exponent, ascending degree 0..h.
  std::vector<long long> eulerian_polynomial(const std::vector<int>& sigma) const {
    std::vector<char> flags(rs_.num_positive(), 0);
    for (int s : sigma) flags[s] = 1;
    int h = rs_.coxeter_number;
    std::vector<long long> acc(h + 1, 0);
    for (long w = 0; w < size(); ++w) {
      int e = h - descent(w, flags);
      if (e < 0 || e > h) throw std::logic_error("descent out of range");
      acc[e] += 1;
    }
    long long f = rs_.index_of_connection;
    for (long long& c : acc) {
      if (c % f != 0) throw std::logic_error("Eulerian coefficient not divisible by f");
      c /= f;
      if (c < 0) throw std::logic_error("negative Eulerian coefficient");
    }
    return acc;
  }

 private:
  const RootSystem& rs_;
  long nroots_ = 0;
  std::vector<Root> roots_;
  std::vector<std::vector<int>> elements_;
  std::vector<std::vector<int>> neg_image_;
};

}  // namespace shicat
