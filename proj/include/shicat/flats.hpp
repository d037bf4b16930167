#pragma once

// Flats of the Weyl arrangement, represented by the set of positive roots
// vanishing on them, with localization data: simple system, irreducibility,
// Cartan type of the root subsystem.

#include "shicat/rootsys.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace shicat {

struct Flat {
  int codim = 0;
  std::vector<int> roots;         // indices into positive_roots, sorted: Phi_X^+
  std::vector<int> simple_system; // indices into positive_roots: Delta_X
  bool irreducible = false;
  std::string type_name;          // e.g. "A2", "A1xA1"
};

namespace detail {

inline long rank_of_roots(const RootSystem& rs, const std::vector<int>& idxs) {
  IntMat m;
  for (int i : idxs) {
    std::vector<Int> row(rs.rank);
    for (int j = 0; j < rs.rank; ++j) row[j] = rs.positive_roots[i].coeffs[j];
    m.push_back(std::move(row));
  }
  return rank_int(m);
}

// All positive roots in the rational span of the given ones.
inline std::vector<int> span_closure(const RootSystem& rs, const std::vector<int>& gens) {
  long base_rank = rank_of_roots(rs, gens);
  std::vector<int> out;
  for (size_t g = 0; g < rs.num_positive(); ++g) {
    std::vector<int> with = gens;
    with.push_back(static_cast<int>(g));
    if (rank_of_roots(rs, with) == base_rank) out.push_back(static_cast<int>(g));
  }
  return out;
}

// Classify an irreducible component by its Cartan matrix, matching against
// freshly built reference systems under permutations of the simple roots.
inline std::string classify_component(const std::vector<std::vector<int>>& cartan) {
  int p = static_cast<int>(cartan.size());
  static const std::vector<std::string> candidates = {"A1", "A2", "B2", "G2", "A3", "B3",
                                                      "C3", "A4", "B4", "C4", "D4", "F4",
                                                      "A5", "B5", "C5", "D5"};
  for (const auto& name : candidates) {
    RootSystemType t = RootSystemType::parse(name);
    if (t.rank != p) continue;
    const RootSystem& ref = build(t);
    std::vector<int> perm(p);
    for (int i = 0; i < p; ++i) perm[i] = i;
    do {
      bool match = true;
      for (int i = 0; i < p && match; ++i)
        for (int j = 0; j < p && match; ++j)
          if (ref.cartan[i][j] != cartan[perm[i]][perm[j]]) match = false;
      if (match) return name;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return "?" + std::to_string(p);
}

}  // namespace detail

// Build the flat determined by a spanning set of positive-root indices.
inline Flat make_flat(const RootSystem& rs, const std::vector<int>& gens) {
  Flat f;
  f.roots = detail::span_closure(rs, gens);
  f.codim = static_cast<int>(detail::rank_of_roots(rs, f.roots));

  // Simple system: roots of Phi_X^+ not expressible as a sum of two of them.
  std::set<std::vector<int>> members;
  for (int i : f.roots) members.insert(rs.positive_roots[i].coeffs);
  for (int i : f.roots) {
    bool decomposable = false;
    for (int a : f.roots) {
      const Root diff = rs.positive_roots[i] - rs.positive_roots[a];
      if (diff.is_positive() && members.count(diff.coeffs)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) f.simple_system.push_back(i);
  }

  // Cartan data of Delta_X; connectivity of its Dynkin graph.
  int p = static_cast<int>(f.simple_system.size());
  std::vector<std::vector<int>> cart(p, std::vector<int>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      const Root& a = rs.positive_roots[f.simple_system[i]];
      const Root& b = rs.positive_roots[f.simple_system[j]];
      cart[i][j] = static_cast<int>(2 * rs.inner(a, b) / rs.inner(a, a));
    }
  std::vector<int> comp(p, -1);
  int ncomp = 0;
  for (int s = 0; s < p; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack = {s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < p; ++v)
        if (comp[v] < 0 && cart[u][v] != 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }
  f.irreducible = (ncomp == 1);
  std::vector<std::string> part_names;
  for (int cidx = 0; cidx < ncomp; ++cidx) {
    std::vector<int> verts;
    for (int v = 0; v < p; ++v)
      if (comp[v] == cidx) verts.push_back(v);
    std::vector<std::vector<int>> sub(verts.size(), std::vector<int>(verts.size()));
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = 0; j < verts.size(); ++j) sub[i][j] = cart[verts[i]][verts[j]];
    part_names.push_back(detail::classify_component(sub));
  }
  std::sort(part_names.begin(), part_names.end());
  f.type_name = part_names.empty() ? "" : part_names[0];
  for (size_t i = 1; i < part_names.size(); ++i) f.type_name += "x" + part_names[i];
  return f;
}

// All flats of the Weyl arrangement of the given codimension, deduplicated by
// their canonical root set.
inline std::vector<Flat> flats_codim(const RootSystem& rs, int p) {
  if (p < 1 || p > rs.rank) throw std::invalid_argument("codimension out of range");
  std::set<std::vector<int>> seen;
  std::vector<Flat> out;
  long n = static_cast<long>(rs.num_positive());
  std::vector<int> combo(p);
  // iterate p-subsets of positive roots
  std::vector<long> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    std::vector<int> gens(idx.begin(), idx.end());
    if (detail::rank_of_roots(rs, gens) == p) {
      Flat f = make_flat(rs, gens);
      if (f.codim == p && !seen.count(f.roots)) {
        seen.insert(f.roots);
        out.push_back(std::move(f));
      }
    }
    int pos = p - 1;
    while (pos >= 0 && idx[pos] == n - p + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < p; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

// Sigma_X = Sigma intersect Phi_X^+, as indices into positive_roots.
inline std::vector<int> localize(const RootSystem& /*rs*/, const Flat& flat, const std::vector<int>& sigma) {
  std::vector<int> out;
  for (int s : sigma)
    if (std::binary_search(flat.roots.begin(), flat.roots.end(), s)) out.push_back(s);
  return out;
}

// Coordinates of a member of Phi_X^+ in the simple system Delta_X; entries
// are nonnegative integers.
inline std::vector<long> delta_coordinates(const RootSystem& rs, const Flat& flat, int root_idx) {
  int p = static_cast<int>(flat.simple_system.size());
  long rows = rs.rank;
  // solve sum n_i delta_i = root over Q; exact elimination
  std::vector<RatVec> m(rows, RatVec(p + 1));
  for (long r = 0; r < rows; ++r) {
    for (int i = 0; i < p; ++i) m[r][i] = Rat(rs.positive_roots[flat.simple_system[i]].coeffs[r]);
    m[r][p] = Rat(rs.positive_roots[root_idx].coeffs[r]);
  }
  // Gauss-Jordan on the first p columns
  long rr = 0;
  std::vector<int> pivot_row_of(p, -1);
  for (int col = 0; col < p && rr < rows; ++col) {
    long sel = -1;
    for (long i = rr; i < rows; ++i)
      if (m[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[sel], m[rr]);
    Rat inv = m[rr][col];
    for (int j = col; j <= p; ++j) m[rr][j] /= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == rr || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (int j = col; j <= p; ++j) m[i][j] -= f * m[rr][j];
    }
    pivot_row_of[col] = static_cast<int>(rr);
    ++rr;
  }
  std::vector<long> coords(p, 0);
  for (int i = 0; i < p; ++i) {
    if (pivot_row_of[i] < 0) throw std::logic_error("simple system is rank-deficient");
    const Rat& v = m[pivot_row_of[i]][p];
    if (v.get_den() != 1) throw std::logic_error("non-integral coordinate in Delta_X");
    coords[i] = to_long(v.get_num());
    if (coords[i] < 0) throw std::logic_error("negative coordinate in Delta_X");
  }
  return coords;
}

}  // namespace shicat
