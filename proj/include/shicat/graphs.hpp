#pragma once

// Type-A specialization: simple graphs versus subsets of positive roots,
// interval-orderability, chordality, and the three-way equivalence between
// Shi-freeness, compatible-and-free, and being an interval graph.

#include "shicat/freeness.hpp"
#include "shicat/subsets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace shicat {

struct SimpleGraph {
  int n = 0;                                 // vertices 1..n
  std::vector<std::pair<int, int>> edges;    // (i, j) with i < j

  static SimpleGraph from_edge_mask(int n, uint64_t mask) {
    SimpleGraph g;
    g.n = n;
    int bit = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j, ++bit)
        if (mask & (1ull << bit)) g.edges.push_back({i, j});
    return g;
  }

  // edge list "1-2,2-3"
  static SimpleGraph parse(int n, const std::string& s) {
    SimpleGraph g;
    g.n = n;
    size_t i = 0;
    while (i < s.size()) {
      size_t dash = s.find('-', i);
      size_t comma = s.find(',', i);
      if (comma == std::string::npos) comma = s.size();
      if (dash == std::string::npos || dash > comma) throw std::invalid_argument("bad edge list");
      int a = std::stoi(s.substr(i, dash - i));
      int b = std::stoi(s.substr(dash + 1, comma - dash - 1));
      if (a == b || a < 1 || b < 1 || a > n || b > n) throw std::invalid_argument("bad edge");
      g.edges.push_back({std::min(a, b), std::max(a, b)});
      i = comma + 1;
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
  }

  bool has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
  }
};

// Sigma(G) under a relabeling: edge {i, j} with i < j (after relabeling)
// becomes the root e_i - e_j = a_i + ... + a_{j-1} of A_{n-1}.
inline std::vector<int> sigma_of(const RootSystem& rs, const SimpleGraph& g,
                                 const std::vector<int>& labeling) {
  if (rs.rank != g.n - 1) throw std::invalid_argument("rank must be n - 1");
  std::vector<int> out;
  for (auto [a, b] : g.edges) {
    int i = labeling[a - 1], j = labeling[b - 1];
    if (i > j) std::swap(i, j);
    Root r;
    r.coeffs.assign(rs.rank, 0);
    for (int k = i; k < j; ++k) r.coeffs[k - 1] = 1;
    int idx = rs.index_of(r);
    if (idx < 0) throw std::logic_error("edge image is not a positive root");
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<int> identity_labeling(int n) {
  std::vector<int> l(n);
  std::iota(l.begin(), l.end(), 1);
  return l;
}

// Interval-graph test by the ordering characterization: some vertex order
// v_1 < ... < v_n such that i < k < j and {v_i, v_j} an edge imply {v_i, v_k}
// an edge. Brute force over orderings.
inline bool has_interval_ordering(const SimpleGraph& g, std::vector<int>* witness = nullptr) {
  if (g.n > 10) throw std::invalid_argument("interval test limited to 10 vertices");
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    bool ok = true;
    for (int i = 0; i < g.n && ok; ++i)
      for (int j = i + 2; j < g.n && ok; ++j) {
        if (!g.has_edge(perm[i], perm[j])) continue;
        for (int k = i + 1; k < j && ok; ++k)
          if (!g.has_edge(perm[i], perm[k])) ok = false;
      }
    if (ok) {
      if (witness) *witness = perm;
      return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Chordality via repeated elimination of simplicial vertices (secondary
// oracle for graphic-arrangement freeness).
inline bool is_chordal(const SimpleGraph& g) {
  std::vector<char> alive(g.n + 1, 1);
  for (int round = 0; round < g.n; ++round) {
    int found = -1;
    for (int v = 1; v <= g.n && found < 0; ++v) {
      if (!alive[v]) continue;
      std::vector<int> nb;
      for (int u = 1; u <= g.n; ++u)
        if (u != v && alive[u] && g.has_edge(u, v)) nb.push_back(u);
      bool simplicial = true;
      for (size_t a = 0; a < nb.size() && simplicial; ++a)
        for (size_t b = a + 1; b < nb.size() && simplicial; ++b)
          if (!g.has_edge(nb[a], nb[b])) simplicial = false;
      if (simplicial) found = v;
    }
    if (found < 0) return false;
    alive[found] = 0;
  }
  return true;
}

struct CorollaryReport {
  int n = 0;
  long graphs_checked = 0;
  long interval_count = 0;
  bool equivalence_holds = true;
  std::vector<uint64_t> failures;  // edge masks violating the three-way equivalence
};

// For every labeled graph on n vertices:
//   (exists labeling with Sigma(G) Shi-free)
//   <=> (exists labeling with Sigma(G) compatible and free)
//   <=> G is an interval graph.
// Shi-freeness is decided through the characterization predicate (subset free
// and 2-locally simple) with the Saito checker on the A_{n-1} subset
// arrangements.
inline CorollaryReport verify_interval_corollary(int n) {
  if (n < 2 || n > 5) throw std::invalid_argument("sweep supported for 2 <= n <= 5");
  RootSystem rs = build(RootSystemType{'A', n - 1});
  SubsetAnalyzer an(rs);
  CorollaryReport rep;
  rep.n = n;

  // memoized per-subset predicates
  std::map<std::vector<int>, std::pair<bool, bool>> memo;  // sigma -> (shi_free, compat_and_free)
  auto subset_preds = [&](const std::vector<int>& sigma) {
    auto it = memo.find(sigma);
    if (it != memo.end()) return it->second;
    bool fr = is_free_subset(rs, sigma).free();
    bool ls = an.is_2loc_simple(sigma);
    bool co = an.is_compatible(sigma);
    auto val = std::make_pair(fr && ls, co && fr);
    memo.emplace(sigma, val);
    return val;
  };

  std::vector<std::vector<int>> labelings;
  {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      labelings.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  int nedges = n * (n - 1) / 2;
  for (uint64_t mask = 0; mask < (1ull << nedges); ++mask) {
    SimpleGraph g = SimpleGraph::from_edge_mask(n, mask);
    bool interval = has_interval_ordering(g);
    bool any_shi_free = false, any_compat_free = false;
    for (const auto& lab : labelings) {
      auto [sf, cf] = subset_preds(sigma_of(rs, g, lab));
      any_shi_free = any_shi_free || sf;
      any_compat_free = any_compat_free || cf;
      if (any_shi_free && any_compat_free) break;
    }
    ++rep.graphs_checked;
    if (interval) ++rep.interval_count;
    if (!(interval == any_shi_free && interval == any_compat_free)) {
      rep.equivalence_holds = false;
      rep.failures.push_back(mask);
    }
  }
  return rep;
}

}  // namespace shicat
