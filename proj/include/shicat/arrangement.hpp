#pragma once

// Central hyperplane arrangements over the rationals with integer-primitive
// forms, cones of integral affine arrangements, and the exact characteristic
// polynomial via Moebius recursion over the intersection lattice.

#include "shicat/exactla.hpp"
#include "shicat/numeric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace shicat {

struct IntegralArrangement {
  int nvars = 0;
  std::vector<std::vector<long long>> columns;  // normals, no zero column
  std::vector<long long> b;                     // offsets

  size_t size() const { return columns.size(); }
};

struct CentralArrangement {
  int nvars = 0;
  std::vector<std::vector<long long>> forms;  // canonical: primitive, first nonzero positive

  size_t size() const { return forms.size(); }

  static std::vector<long long> canonicalize(std::vector<long long> f) {
    long long g = 0;
    for (long long x : f) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) throw std::invalid_argument("zero form");
    for (long long& x : f) x /= g;
    for (long long x : f) {
      if (x > 0) break;
      if (x < 0) {
        for (long long& y : f) y = -y;
        break;
      }
    }
    return f;
  }

  static CentralArrangement from_forms(int nvars, std::vector<std::vector<long long>> raw) {
    CentralArrangement a;
    a.nvars = nvars;
    for (auto& f : raw) a.forms.push_back(canonicalize(std::move(f)));
    std::sort(a.forms.begin(), a.forms.end());
    auto dup = std::adjacent_find(a.forms.begin(), a.forms.end());
    if (dup != a.forms.end()) throw std::invalid_argument("repeated hyperplane");
    return a;
  }

  long rank() const {
    IntMat m;
    for (const auto& f : forms) {
      std::vector<Int> row = to_int_vec(f);
      m.push_back(std::move(row));
    }
    return rank_int(m);
  }
};

// Homogenize each affine form with a new last variable and append the
// hyperplane at infinity.
inline CentralArrangement cone_of(const IntegralArrangement& arr) {
  std::vector<std::vector<long long>> forms;
  for (size_t j = 0; j < arr.size(); ++j) {
    std::vector<long long> f = arr.columns[j];
    f.push_back(-arr.b[j]);
    forms.push_back(std::move(f));
  }
  std::vector<long long> inf(arr.nvars + 1, 0);
  inf.back() = 1;
  forms.push_back(std::move(inf));
  return CentralArrangement::from_forms(arr.nvars + 1, std::move(forms));
}

namespace detail {

struct Mask {
  uint64_t lo = 0, hi = 0;
  bool operator==(const Mask& o) const { return lo == o.lo && hi == o.hi; }
  bool operator<(const Mask& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }
  void set(int i) { (i < 64 ? lo : hi) |= (1ull << (i & 63)); }
  bool get(int i) const { return ((i < 64 ? lo : hi) >> (i & 63)) & 1; }
  bool subset_of(const Mask& o) const { return (lo & ~o.lo) == 0 && (hi & ~o.hi) == 0; }
};

// Fraction-free rank of a small integer matrix; entries stay tiny for the
// normals we feed it, 128-bit intermediates are ample.
inline int rank_small(std::vector<std::vector<__int128>> a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[r]);
    for (int i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      __int128 f = a[i][c], g = a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] = a[i][j] * g - f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace detail

struct LatticeFlat {
  detail::Mask mask;        // hyperplanes containing the flat
  int codim = 0;
  std::vector<int> basis;   // indices of independent normals spanning it
  long long moebius = 0;
};

// All flats of the intersection lattice, grouped by codimension, with Moebius
// values. Guards: <= 80 hyperplanes, rank <= 5.
inline std::vector<LatticeFlat> intersection_lattice(const CentralArrangement& arr) {
  int n = static_cast<int>(arr.size());
  if (n > 80) throw std::runtime_error("too many hyperplanes for lattice enumeration");
  int maxrank = static_cast<int>(arr.rank());
  if (maxrank > 5) throw std::runtime_error("rank too large for lattice enumeration");

  auto rank_of = [&](const std::vector<int>& idxs) {
    std::vector<std::vector<__int128>> m;
    for (int i : idxs) {
      std::vector<__int128> row(arr.forms[i].begin(), arr.forms[i].end());
      m.push_back(std::move(row));
    }
    return detail::rank_small(std::move(m));
  };

  std::vector<LatticeFlat> flats;
  LatticeFlat top;  // the ambient space
  top.codim = 0;
  flats.push_back(top);

  std::vector<std::vector<int>> by_codim(maxrank + 1);
  by_codim[0].push_back(0);

  std::map<detail::Mask, int> seen;
  for (int c = 1; c <= maxrank; ++c) {
    for (int fi : by_codim[c - 1]) {
      std::vector<int> parent_basis = flats[fi].basis;
      detail::Mask parent_mask = flats[fi].mask;
      for (int j = 0; j < n; ++j) {
        if (parent_mask.get(j)) continue;
        std::vector<int> cand = parent_basis;
        cand.push_back(j);
        if (rank_of(cand) != c) continue;
        // closure: every hyperplane whose normal lies in the span
        detail::Mask m;
        for (int k = 0; k < n; ++k) {
          std::vector<int> probe = cand;
          probe.push_back(k);
          if (rank_of(probe) == c) m.set(k);
        }
        auto it = seen.find(m);
        if (it == seen.end()) {
          LatticeFlat f;
          f.mask = m;
          f.codim = c;
          f.basis = cand;
          seen[m] = static_cast<int>(flats.size());
          by_codim[c].push_back(static_cast<int>(flats.size()));
          flats.push_back(std::move(f));
        }
      }
    }
  }

  // Moebius recursion along reverse inclusion of masks
  flats[0].moebius = 1;
  for (int c = 1; c <= maxrank; ++c)
    for (int fi : by_codim[c]) {
      long long acc = 0;
      for (const LatticeFlat& y : flats)
        if (y.codim < c && y.mask.subset_of(flats[fi].mask)) acc += y.moebius;
      flats[fi].moebius = -acc;
    }
  return flats;
}

// chi(t) as coefficient vector, index = power of t.
inline std::vector<long long> char_poly_central(const CentralArrangement& arr) {
  auto flats = intersection_lattice(arr);
  std::vector<long long> chi(arr.nvars + 1, 0);
  for (const LatticeFlat& f : flats) chi[arr.nvars - f.codim] += f.moebius;
  return chi;
}

// Precomputed intersection lattice of a fixed superset arrangement, reused to
// evaluate the characteristic polynomial of arbitrary subarrangements: a
// superset flat survives in the subarrangement B exactly when the hyperplanes
// of B through it still span its codimension.
class SupersetLattice {
 public:
  explicit SupersetLattice(CentralArrangement arr) : arr_(std::move(arr)) {
    auto flats = intersection_lattice(arr_);
    for (const LatticeFlat& f : flats) {
      Entry e;
      e.mask = f.mask;
      e.codim = f.codim;
      for (int j = 0; j < static_cast<int>(arr_.size()); ++j)
        if (f.mask.get(j)) e.planes.push_back(j);
      entries_.push_back(std::move(e));
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.codim < b.codim; });
  }

  const CentralArrangement& arrangement() const { return arr_; }

  detail::Mask mask_of(const CentralArrangement& sub) const {
    detail::Mask m;
    size_t i = 0;
    for (const auto& f : sub.forms) {
      while (i < arr_.size() && arr_.forms[i] < f) ++i;
      if (i == arr_.size() || !(arr_.forms[i] == f))
        throw std::invalid_argument("subarrangement form missing from the superset");
      m.set(static_cast<int>(i));
    }
    return m;
  }

  std::vector<long long> chi_submask(const detail::Mask& B) const {
    // surviving flats with their effective masks
    std::vector<std::pair<detail::Mask, int>> alive;  // (mask in B, codim)
    for (const Entry& e : entries_) {
      if (e.codim == 0) {
        alive.push_back({detail::Mask{}, 0});
        continue;
      }
      // incremental integer rank over the planes of the flat present in B
      std::vector<std::vector<__int128>> rows;
      detail::Mask em;
      int rank = 0;
      for (int j : e.planes) {
        if (!B.get(j)) continue;
        em.set(j);
        if (rank == e.codim) continue;  // already spanning, just collect the mask
        rows.push_back(std::vector<__int128>(arr_.forms[j].begin(), arr_.forms[j].end()));
        if (detail::rank_small(rows) == static_cast<int>(rows.size()))
          rank = static_cast<int>(rows.size());
        else
          rows.pop_back();
      }
      if (rank == e.codim) alive.push_back({em, e.codim});
    }
    // Moebius over the alive flats (already sorted by codim)
    std::vector<long long> mu(alive.size(), 0);
    std::vector<long long> chi(arr_.nvars + 1, 0);
    for (size_t i = 0; i < alive.size(); ++i) {
      long long acc = 0;
      for (size_t j = 0; j < i; ++j)
        if (alive[j].second < alive[i].second && alive[j].first.subset_of(alive[i].first))
          acc += mu[j];
      mu[i] = (alive[i].second == 0) ? 1 : -acc;
      chi[arr_.nvars - alive[i].second] += mu[i];
    }
    return chi;
  }

 private:
  struct Entry {
    detail::Mask mask;
    int codim;
    std::vector<int> planes;
  };
  CentralArrangement arr_;
  std::vector<Entry> entries_;
};

inline std::string poly_to_string(const std::vector<long long>& coeffs, const std::string& var = "t") {
  std::string s;
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
    if (coeffs[d] == 0) continue;
    if (!s.empty()) s += coeffs[d] > 0 ? " + " : " - ";
    else if (coeffs[d] < 0) s += "-";
    long long a = coeffs[d] > 0 ? coeffs[d] : -coeffs[d];
    if (a != 1 || d == 0) s += std::to_string(a);
    if (d >= 1) {
      if (a != 1) s += "*";
      s += var;
      if (d >= 2) s += "^" + std::to_string(d);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace shicat
