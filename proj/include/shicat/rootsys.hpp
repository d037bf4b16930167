#pragma once

// Irreducible crystallographic root systems with exact integer arithmetic:
// Cartan/Gram data, positive roots, the root poset, marks, Coxeter number and
// index of connection. Simple roots follow Bourbaki numbering except that B2
// and G2 take the short root first (alpha_1 short, alpha_2 long); short roots
// are normalized to squared length 2, which keeps every inner product an
// integer.

#include "shicat/exactla.hpp"
#include "shicat/numeric.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace shicat {

struct RootSystemType {
  char family = 'A';
  int rank = 1;

  bool valid() const {
    switch (family) {
      case 'A': return rank >= 1 && rank <= 8;
      case 'B': return rank >= 2 && rank <= 8;
      case 'C': return rank >= 2 && rank <= 8;
      case 'D': return rank >= 3 && rank <= 8;
      case 'E': return rank >= 6 && rank <= 8;
      case 'F': return rank == 4;
      case 'G': return rank == 2;
      default: return false;
    }
  }

  std::string name() const { return std::string(1, family) + std::to_string(rank); }

  static RootSystemType parse(const std::string& s) {
    if (s.size() < 2) throw std::invalid_argument("bad root system name: " + s);
    RootSystemType t;
    t.family = s[0];
    t.rank = std::stoi(s.substr(1));
    if (!t.valid()) throw std::invalid_argument("invalid root system type: " + s);
    return t;
  }
};

struct Root {
  std::vector<int> coeffs;  // w.r.t. simple roots

  bool operator==(const Root& o) const { return coeffs == o.coeffs; }
  bool operator<(const Root& o) const { return coeffs < o.coeffs; }

  int height() const {
    int h = 0;
    for (int c : coeffs) h += c;
    return h;
  }
  bool is_positive() const {
    for (int c : coeffs)
      if (c < 0) return false;
    return true;
  }
  Root operator-() const {
    Root r = *this;
    for (int& c : r.coeffs) c = -c;
    return r;
  }
  Root operator+(const Root& o) const {
    Root r = *this;
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
    return r;
  }
  Root operator-(const Root& o) const {
    Root r = *this;
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] -= o.coeffs[i];
    return r;
  }

  std::string str() const {
    std::string s = "[";
    for (size_t i = 0; i < coeffs.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coeffs[i]);
    }
    return s + "]";
  }

  static Root parse(const std::string& s) {
    Root r;
    size_t i = 0;
    if (i < s.size() && s[i] == '[') ++i;
    while (i < s.size() && s[i] != ']') {
      size_t j = i;
      while (j < s.size() && s[j] != ',' && s[j] != ']') ++j;
      r.coeffs.push_back(std::stoi(s.substr(i, j - i)));
      i = (j < s.size() && s[j] == ',') ? j + 1 : j;
    }
    return r;
  }
};

class RootSystem {
 public:
  RootSystemType type;
  int rank = 0;
  std::vector<std::vector<int>> cartan;       // c[i][j] = 2(a_i,a_j)/(a_i,a_i)
  std::vector<std::vector<long long>> gram;   // (a_i,a_j), short roots have norm 2
  std::vector<Root> positive_roots;           // sorted by (height, lex)
  Root highest_root;
  std::vector<int> marks;                     // coefficients of the highest root
  int coxeter_number = 0;
  long long index_of_connection = 0;
  long long weyl_order = 0;

  const Root& simple(int i) const { return positive_roots[simple_index_[i]]; }

  int index_of(const Root& r) const {
    auto it = index_.find(r.coeffs);
    return it == index_.end() ? -1 : it->second;
  }
  bool is_root(const std::vector<int>& v) const {
    return index_.find(v) != index_.end() || index_.find(negated(v)) != index_.end();
  }
  bool is_positive_root(const Root& r) const { return index_.find(r.coeffs) != index_.end(); }

  long long inner(const Root& a, const Root& b) const {
    long long s = 0;
    for (int i = 0; i < rank; ++i) {
      if (!a.coeffs[i]) continue;
      long long row = 0;
      for (int j = 0; j < rank; ++j) row += gram[i][j] * b.coeffs[j];
      s += static_cast<long long>(a.coeffs[i]) * row;
    }
    return s;
  }

  Root reflect(int i, const Root& b) const {
    long long k = 0;
    for (int j = 0; j < rank; ++j) k += static_cast<long long>(cartan[i][j]) * b.coeffs[j];
    Root r = b;
    r.coeffs[i] -= static_cast<int>(k);
    return r;
  }

  // b1 <= b2 in the root poset: b2 - b1 is a nonnegative integer combination
  // of simple roots.
  static bool poset_leq(const Root& b1, const Root& b2) {
    for (size_t i = 0; i < b1.coeffs.size(); ++i)
      if (b2.coeffs[i] - b1.coeffs[i] < 0) return false;
    return true;
  }

  size_t num_positive() const { return positive_roots.size(); }

 private:
  friend RootSystem build(RootSystemType);
  std::map<std::vector<int>, int> index_;  // positive roots only
  std::vector<int> simple_index_;

  static std::vector<int> negated(std::vector<int> v) {
    for (int& x : v) x = -x;
    return v;
  }
};

namespace detail {

// Squared lengths of the simple roots, short normalized to 2.
inline std::vector<long long> simple_norms(RootSystemType t) {
  int n = t.rank;
  std::vector<long long> d(n, 2);
  switch (t.family) {
    case 'B':
      if (n == 2) {
        d = {2, 4};  // alpha_1 short per the B2 convention
      } else {
        for (int i = 0; i < n - 1; ++i) d[i] = 4;  // alpha_n short
        d[n - 1] = 2;
      }
      break;
    case 'C':
      d[n - 1] = 4;  // alpha_n long
      break;
    case 'F':
      d = {4, 4, 2, 2};
      break;
    case 'G':
      d = {2, 6};
      break;
    default:
      break;
  }
  return d;
}

// Dynkin diagram edges with relative bond data, via the Gram matrix directly:
// we specify (a_i, a_j) for adjacent pairs.
inline std::vector<std::vector<long long>> gram_matrix(RootSystemType t) {
  int n = t.rank;
  auto norms = simple_norms(t);
  std::vector<std::vector<long long>> g(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = norms[i];
  auto bond = [&](int i, int j) {
    // (a_i, a_j) = -max(norm_i, norm_j)/2 for adjacent simple roots
    long long v = -std::max(norms[i], norms[j]) / 2;
    g[i][j] = g[j][i] = v;
  };
  switch (t.family) {
    case 'A':
    case 'B':
    case 'C':
    case 'G':
      for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) bond(i, i + 1);
      bond(n - 3, n - 1);
      break;
    case 'E':
      // Bourbaki: chain 1-3-4-5-6(-7-8), node 2 attached to 4
      bond(0, 2);
      bond(2, 3);
      bond(3, 4);
      bond(4, 5);
      if (n >= 7) bond(5, 6);
      if (n >= 8) bond(6, 7);
      bond(1, 3);
      break;
    case 'F':
      bond(0, 1);
      bond(1, 2);
      bond(2, 3);
      break;
  }
  return g;
}

inline long long weyl_order_of(RootSystemType t) {
  auto fact = [](int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
  };
  int n = t.rank;
  switch (t.family) {
    case 'A': return fact(n + 1);
    case 'B':
    case 'C': return (1LL << n) * fact(n);
    case 'D': return (1LL << (n - 1)) * fact(n);
    case 'E': return n == 6 ? 51840LL : (n == 7 ? 2903040LL : 696729600LL);
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 0;
}

}  // namespace detail

inline RootSystem build(RootSystemType t) {
  if (!t.valid()) throw std::invalid_argument("invalid root system type: " + t.name());
  RootSystem rs;
  rs.type = t;
  rs.rank = t.rank;
  rs.gram = detail::gram_matrix(t);
  int n = rs.rank;
  rs.cartan.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long long num = 2 * rs.gram[i][j];
      if (num % rs.gram[i][i] != 0) throw std::logic_error("non-integral Cartan entry");
      rs.cartan[i][j] = static_cast<int>(num / rs.gram[i][i]);
    }

  // Reflection-orbit closure of the simple roots gives the whole root system.
  std::map<std::vector<int>, int> seen;
  std::vector<Root> all;
  for (int i = 0; i < n; ++i) {
    Root a;
    a.coeffs.assign(n, 0);
    a.coeffs[i] = 1;
    seen[a.coeffs] = static_cast<int>(all.size());
    all.push_back(a);
  }
  for (size_t head = 0; head < all.size(); ++head) {
    Root cur = all[head];
    for (int i = 0; i < n; ++i) {
      Root img = rs.reflect(i, cur);
      if (!seen.count(img.coeffs)) {
        seen[img.coeffs] = static_cast<int>(all.size());
        all.push_back(img);
      }
    }
  }
  for (const Root& r : all)
    if (r.is_positive()) rs.positive_roots.push_back(r);
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), [](const Root& a, const Root& b) {
    int ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    return a.coeffs < b.coeffs;
  });
  for (size_t i = 0; i < rs.positive_roots.size(); ++i)
    rs.index_[rs.positive_roots[i].coeffs] = static_cast<int>(i);
  rs.simple_index_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    Root a;
    a.coeffs.assign(n, 0);
    a.coeffs[i] = 1;
    rs.simple_index_[i] = rs.index_.at(a.coeffs);
  }

  // Highest root: unique maximum of the root poset.
  rs.highest_root = rs.positive_roots.back();
  for (const Root& r : rs.positive_roots)
    if (!RootSystem::poset_leq(r, rs.highest_root))
      throw std::logic_error("highest root is not a poset maximum");
  rs.marks = rs.highest_root.coeffs;
  rs.coxeter_number = 1 + rs.highest_root.height();
  IntMat cm(n, std::vector<Int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cm[i][j] = rs.cartan[i][j];
  rs.index_of_connection = to_long(det_int(cm));
  rs.weyl_order = detail::weyl_order_of(t);

  if (2 * rs.positive_roots.size() != static_cast<size_t>(n) * rs.coxeter_number)
    throw std::logic_error("positive root count disagrees with rank * h / 2");
  return rs;
}

inline RootSystem build(const std::string& name) { return build(RootSystemType::parse(name)); }

inline long long inner(const RootSystem& rs, const Root& a, const Root& b) { return rs.inner(a, b); }

inline int height(const Root& r) { return r.height(); }

}  // namespace shicat
