#pragma once

// Exact alcove geometry in coweight coordinates (a point is recorded by the
// pairings m_j = (alpha_j, x), so root pairings are integer combinations of
// coordinates). Alcoves inside the fundamental parallelepiped are enumerated
// by reflection BFS; upper closures, the Worpitzky partition, the geometric
// compatibility oracle, and inductive address constructions live here.

#include "shicat/flats.hpp"
#include "shicat/rootsys.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shicat {

using Point = std::vector<Rat>;  // coweight coordinates, exact rationals

inline Rat pairing(const Root& r, const Point& p) {
  Rat s = 0;
  for (size_t i = 0; i < p.size(); ++i)
    if (r.coeffs[i]) s += Rat(r.coeffs[i]) * p[i];
  return s;
}

enum class WallKind { Ceiling, Floor, ThroughOrigin };

struct Wall {
  int root_idx;  // positive root index
  long level;    // integer n of H_gamma^n
  WallKind kind;
  int opposite_vertex;  // the vertex of the alcove not on this wall
};

struct Alcove {
  std::vector<Point> vertices;       // rank+1 affinely independent points
  std::vector<int> address;          // r(gamma) per positive root index
  std::vector<Wall> walls;
  Point barycenter;
  std::vector<std::vector<Rat>> vertex_pairings;  // [root][vertex]
};

// Address criterion: a map r on positive roots is the address of an alcove
// exactly when every additive triple gamma + gamma' = beta satisfies
// r(gamma) + r(gamma') - 1 <= r(beta) <= r(gamma) + r(gamma').
inline bool validate_address(const RootSystem& rs, const std::vector<int>& r,
                             std::string* witness = nullptr) {
  long n = static_cast<long>(rs.num_positive());
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j) {
      Root sum = rs.positive_roots[i] + rs.positive_roots[j];
      int b = rs.index_of(sum);
      if (b < 0) continue;
      int lo = r[i] + r[j] - 1, hi = r[i] + r[j];
      if (r[b] < lo || r[b] > hi) {
        if (witness)
          *witness = "triple " + rs.positive_roots[i].str() + " + " + rs.positive_roots[j].str() +
                     " = " + rs.positive_roots[b].str() + ": r=" + std::to_string(r[b]) +
                     " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]";
        return false;
      }
    }
  return true;
}

namespace detail {

// Coroot of gamma in coweight coordinates: 2 (G g) / (g^T G g).
inline Point coroot_coords(const RootSystem& rs, const Root& g) {
  long long norm = rs.inner(g, g);
  Point out(rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    long long gj = 0;
    for (int k = 0; k < rs.rank; ++k) gj += rs.gram[j][k] * g.coeffs[k];
    out[j] = make_rat(2 * gj, norm);
  }
  return out;
}

inline Point reflect_point(const RootSystem& rs, const Root& g, long level, const Point& coroot,
                           const Point& x) {
  Rat excess = pairing(g, x) - Rat(level);
  Point out = x;
  for (int j = 0; j < rs.rank; ++j) out[j] -= excess * coroot[j];
  return out;
}

}  // namespace detail

class AlcoveComplex {
 public:
  // owns a copy: instances live in a global cache beyond the caller's system
  explicit AlcoveComplex(RootSystem rs) : rs_(std::move(rs)) {
    build_all();
  }

  const RootSystem& system() const { return rs_; }
  const std::vector<Alcove>& alcoves() const { return alcoves_; }

  // Exact total volume of the enumerated alcoves (in coweight coordinates the
  // fundamental parallelepiped has volume 1).
  Rat total_volume() const {
    Rat vol = 0;
    for (const Alcove& a : alcoves_) vol += simplex_volume(a);
    return vol;
  }

  Rat simplex_volume(const Alcove& a) const {
    int l = rs_.rank;
    std::vector<RatVec> m(l, RatVec(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) m[i][j] = a.vertices[i + 1][j] - a.vertices[0][j];
    // exact determinant by elimination
    Rat det = 1;
    for (int c = 0; c < l; ++c) {
      int sel = -1;
      for (int r = c; r < l; ++r)
        if (m[r][c] != 0) {
          sel = r;
          break;
        }
      if (sel < 0) return Rat(0);
      if (sel != c) {
        std::swap(m[sel], m[c]);
        det = -det;
      }
      det *= m[c][c];
      for (int r = c + 1; r < l; ++r) {
        if (m[r][c] == 0) continue;
        Rat f = m[r][c] / m[c][c];
        for (int j = c; j < l; ++j) m[r][j] -= f * m[c][j];
      }
    }
    if (det < 0) det = -det;
    Rat fact = 1;
    for (int i = 2; i <= l; ++i) fact *= i;
    return det / fact;
  }

  // Vertices of the face closure(A) intersect H_{alpha}^n.
  std::vector<int> face_vertices(const Alcove& a, int alpha_idx, long n) const {
    std::vector<int> out;
    for (size_t j = 0; j < a.vertices.size(); ++j)
      if (a.vertex_pairings[alpha_idx][j] == Rat(static_cast<long>(n))) out.push_back(static_cast<int>(j));
    return out;
  }

  bool face_on_wall(const Alcove& a, const std::vector<int>& face, const Wall& w) const {
    for (int j : face)
      if (a.vertex_pairings[w.root_idx][j] != Rat(w.level)) return false;
    return true;
  }

  // A point (given as numerators over common denominator q) lies in the upper
  // closure: weakly inside ceilings, strictly inside floors and walls through
  // the origin.
  bool in_upper_closure(const Alcove& a, const std::vector<long>& num, long q) const {
    for (const Wall& w : a.walls) {
      long long v = 0;
      const Root& g = rs_.positive_roots[w.root_idx];
      for (int j = 0; j < rs_.rank; ++j) v += static_cast<long long>(g.coeffs[j]) * num[j];
      long long thr = static_cast<long long>(w.level) * q;
      if (w.kind == WallKind::Ceiling) {
        if (v > thr) return false;
      } else {
        if (v <= thr) return false;
      }
    }
    return true;
  }

 private:
  RootSystem rs_;
  std::vector<Alcove> alcoves_;

  void fill_geometry(Alcove& a) const {
    int l = rs_.rank;
    a.barycenter.assign(l, Rat(0));
    for (const Point& v : a.vertices)
      for (int j = 0; j < l; ++j) a.barycenter[j] += v[j];
    for (int j = 0; j < l; ++j) a.barycenter[j] /= Rat(l + 1);

    long np = static_cast<long>(rs_.num_positive());
    a.vertex_pairings.assign(np, std::vector<Rat>(l + 1));
    for (long g = 0; g < np; ++g)
      for (int j = 0; j <= l; ++j)
        a.vertex_pairings[g][j] = pairing(rs_.positive_roots[g], a.vertices[j]);

    a.address.assign(np, 0);
    for (long g = 0; g < np; ++g) {
      Rat v = pairing(rs_.positive_roots[g], a.barycenter);
      // r - 1 < v < r with v not an integer
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
      if (Rat(fl) == v) throw std::logic_error("barycenter pairing is integral");
      a.address[g] = static_cast<int>(to_long(fl)) + 1;
    }

    a.walls.clear();
    for (int opp = 0; opp <= l; ++opp) {
      int found = -1;
      Rat level;
      for (long g = 0; g < np && found < 0; ++g) {
        bool constant = true;
        Rat c;
        bool first = true;
        for (int j = 0; j <= l; ++j) {
          if (j == opp) continue;
          if (first) {
            c = a.vertex_pairings[g][j];
            first = false;
          } else if (a.vertex_pairings[g][j] != c) {
            constant = false;
            break;
          }
        }
        if (constant) {
          found = static_cast<int>(g);
          level = c;
        }
      }
      if (found < 0) throw std::logic_error("alcove facet not on a root hyperplane");
      if (level.get_den() != 1) throw std::logic_error("facet level is not an integer");
      long n = to_long(level.get_num());
      Wall w;
      w.root_idx = found;
      w.level = n;
      w.opposite_vertex = opp;
      Rat bval = pairing(rs_.positive_roots[found], a.barycenter);
      if (n == 0)
        w.kind = WallKind::ThroughOrigin;
      else if ((n > 0 && bval < Rat(n)) || (n < 0 && bval > Rat(n)))
        w.kind = WallKind::Ceiling;
      else
        w.kind = WallKind::Floor;
      a.walls.push_back(w);
    }
  }

  bool inside_parallelepiped(const Alcove& a) const {
    for (int i = 0; i < rs_.rank; ++i)
      if (a.address[rs_.index_of(rs_.simple(i))] != 1) return false;
    return true;
  }

  void build_all() {
    int l = rs_.rank;
    Alcove fund;
    Point origin(l, Rat(0));
    fund.vertices.push_back(origin);
    for (int i = 0; i < l; ++i) {
      Point v(l, Rat(0));
      v[i] = make_rat(1, rs_.marks[i]);
      fund.vertices.push_back(v);
    }
    fill_geometry(fund);
    std::map<std::vector<int>, int> seen;
    seen[fund.address] = 0;
    alcoves_.push_back(fund);
    for (size_t head = 0; head < alcoves_.size(); ++head) {
      Alcove cur = alcoves_[head];  // copy: vector may reallocate
      for (const Wall& w : cur.walls) {
        Point coroot = detail::coroot_coords(rs_, rs_.positive_roots[w.root_idx]);
        Alcove nb;
        nb.vertices = cur.vertices;
        nb.vertices[w.opposite_vertex] = detail::reflect_point(
            rs_, rs_.positive_roots[w.root_idx], w.level, coroot, cur.vertices[w.opposite_vertex]);
        fill_geometry(nb);
        if (!inside_parallelepiped(nb)) continue;
        if (!seen.count(nb.address)) {
          seen[nb.address] = static_cast<int>(alcoves_.size());
          alcoves_.push_back(std::move(nb));
        }
      }
    }
    std::sort(alcoves_.begin(), alcoves_.end(),
              [](const Alcove& x, const Alcove& y) { return x.address < y.address; });
  }
};

inline const AlcoveComplex& alcove_complex(const RootSystem& rs) {
  static std::map<std::string, std::unique_ptr<AlcoveComplex>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(rs.type.name());
  if (it == cache.end())
    it = cache.emplace(rs.type.name(), std::make_unique<AlcoveComplex>(rs)).first;
  return *it->second;
}

inline std::vector<Alcove> alcoves_in_P(const RootSystem& rs) { return alcove_complex(rs).alcoves(); }

struct PartitionCheckResult {
  bool ok = true;
  long points_checked = 0;
  std::vector<std::pair<std::vector<long>, long>> failures;  // (numerators, cover count)
};

// Every point of the (1/q)-grid inside the fundamental parallelepiped lies in
// exactly one upper closure.
inline PartitionCheckResult worpitzky_partition_check(const RootSystem& rs, long q) {
  const AlcoveComplex& cx = alcove_complex(rs);
  PartitionCheckResult res;
  int l = rs.rank;
  std::vector<long> num(l, 1);
  while (true) {
    long cover = 0;
    for (const Alcove& a : cx.alcoves())
      if (cx.in_upper_closure(a, num, q)) ++cover;
    ++res.points_checked;
    if (cover != 1) {
      res.ok = false;
      res.failures.push_back({num, cover});
    }
    int pos = l - 1;
    while (pos >= 0 && num[pos] == q) {
      num[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++num[pos];
  }
  return res;
}

struct CompatibilityWitness {
  int alcove_index = -1;
  int alpha_idx = -1;
  long level = 0;
  std::vector<int> face;
};

// Geometric compatibility oracle: for each alcove inside the parallelepiped
// and each hyperplane orthogonal to a member of sigma, a nonempty non-facet
// intersection with the upper closure must be contained in a ceiling
// orthogonal to a member of sigma.
inline bool geometric_compatible(const RootSystem& rs, const std::vector<int>& sigma,
                                 CompatibilityWitness* witness = nullptr) {
  const AlcoveComplex& cx = alcove_complex(rs);
  const auto& alcs = cx.alcoves();
  std::vector<char> in(rs.num_positive(), 0);
  for (int s : sigma) in[s] = 1;
  for (size_t ai = 0; ai < alcs.size(); ++ai) {
    const Alcove& a = alcs[ai];
    for (int alpha : sigma) {
      int ht = rs.positive_roots[alpha].height();
      for (long n = 1; n <= ht; ++n) {
        std::vector<int> face = cx.face_vertices(a, alpha, n);
        if (face.empty()) continue;
        // faces lying on a floor (or origin wall) are outside the upper closure
        bool dead = false;
        for (const Wall& w : a.walls) {
          if (w.kind == WallKind::Ceiling) continue;
          if (cx.face_on_wall(a, face, w)) {
            dead = true;
            break;
          }
        }
        if (dead) continue;
        bool lifted = false;
        for (const Wall& w : a.walls) {
          if (w.kind != WallKind::Ceiling || !in[w.root_idx]) continue;
          if (cx.face_on_wall(a, face, w)) {
            lifted = true;
            break;
          }
        }
        if (!lifted) {
          if (witness) *witness = {static_cast<int>(ai), alpha, n, face};
          return false;
        }
      }
    }
  }
  return true;
}

// The ceilings of an alcove whose intersection with the upper closure equals
// the face closure(A) intersect H_alpha^n. The returned roots form a simple
// system of the root subsystem they generate over Z, and alpha lies in it;
// check_face_invariant verifies both.
inline std::vector<std::pair<int, long>> face_ceiling_decomposition(const RootSystem& /*rs*/,
                                                                    const Alcove& a, int alpha_idx,
                                                                    long n) {
  std::vector<int> face;
  for (size_t j = 0; j < a.vertices.size(); ++j)
    if (a.vertex_pairings[alpha_idx][j] == Rat(static_cast<long>(n))) face.push_back(static_cast<int>(j));
  if (face.empty()) throw std::invalid_argument("empty intersection");
  auto on_wall = [&](const std::vector<int>& f, const Wall& w) {
    for (int j : f)
      if (a.vertex_pairings[w.root_idx][j] != Rat(w.level)) return false;
    return true;
  };
  for (const Wall& w : a.walls)
    if (w.kind != WallKind::Ceiling && on_wall(face, w))
      throw std::invalid_argument("face lies outside the upper closure");
  std::vector<std::pair<int, long>> out;
  std::vector<char> common(a.vertices.size(), 1);
  for (const Wall& w : a.walls) {
    if (w.kind != WallKind::Ceiling || !on_wall(face, w)) continue;
    out.push_back({w.root_idx, w.level});
    for (size_t j = 0; j < a.vertices.size(); ++j)
      if (a.vertex_pairings[w.root_idx][j] != Rat(w.level)) common[j] = 0;
  }
  std::vector<int> common_face;
  for (size_t j = 0; j < a.vertices.size(); ++j)
    if (common[j]) common_face.push_back(static_cast<int>(j));
  if (common_face != face) throw std::logic_error("ceilings do not cut out the face");
  return out;
}

// Invariant behind the decomposition: B is a simple system of Phi intersect
// ZB, and alpha belongs to the positive span.
inline bool check_face_invariant(const RootSystem& rs, const std::vector<int>& ceil_roots,
                                 int alpha_idx) {
  int p = static_cast<int>(ceil_roots.size());
  // integer coordinates of a root in terms of B, if any
  auto coords_in_B = [&](const Root& r) -> std::optional<std::vector<long>> {
    std::vector<RatVec> m(rs.rank, RatVec(p + 1));
    for (int row = 0; row < rs.rank; ++row) {
      for (int i = 0; i < p; ++i) m[row][i] = Rat(rs.positive_roots[ceil_roots[i]].coeffs[row]);
      m[row][p] = Rat(r.coeffs[row]);
    }
    long rr = 0;
    std::vector<int> pivot_row_of(p, -1);
    for (int col = 0; col < p && rr < rs.rank; ++col) {
      long sel = -1;
      for (long i = rr; i < rs.rank; ++i)
        if (m[i][col] != 0) {
          sel = i;
          break;
        }
      if (sel < 0) continue;
      std::swap(m[sel], m[rr]);
      Rat inv = m[rr][col];
      for (int j = col; j <= p; ++j) m[rr][j] /= inv;
      for (long i = 0; i < rs.rank; ++i) {
        if (i == rr || m[i][col] == 0) continue;
        Rat f = m[i][col];
        for (int j = col; j <= p; ++j) m[i][j] -= f * m[rr][j];
      }
      pivot_row_of[col] = static_cast<int>(rr);
      ++rr;
    }
    // residual rows must vanish
    for (long i = rr; i < rs.rank; ++i)
      if (m[i][p] != 0) return std::nullopt;
    std::vector<long> coords(p);
    for (int i = 0; i < p; ++i) {
      if (pivot_row_of[i] < 0) return std::nullopt;
      const Rat& v = m[pivot_row_of[i]][p];
      if (v.get_den() != 1) return std::nullopt;
      coords[i] = to_long(v.get_num());
    }
    return coords;
  };

  bool alpha_in = false;
  for (size_t g = 0; g < rs.num_positive(); ++g) {
    auto c = coords_in_B(rs.positive_roots[g]);
    if (!c) continue;
    bool nonneg = true;
    for (long v : *c)
      if (v < 0) nonneg = false;
    if (!nonneg) return false;  // positive root of the subsystem escaping Z>=0 B
    if (static_cast<int>(g) == alpha_idx) alpha_in = true;
  }
  return alpha_in;
}

// Inductive address construction from an irreducible codimension-2 flat with
// Delta_X = {gamma_1, gamma_2}:
//   (i)  r(beta) = 1 if beta is simple or beta <= gamma_1 or beta <= gamma_2;
//   (ii) r(beta) = r(beta - gamma_i) + 1 when beta - gamma_i is a positive root;
//   (iii) otherwise the maximum of r over the simple-root predecessors.
// Rule (ii) must be consistent for i = 1, 2 when both apply.
inline std::vector<int> rX_address(const RootSystem& rs, const Flat& flat) {
  if (flat.codim != 2 || !flat.irreducible)
    throw std::invalid_argument("address construction needs an irreducible codim-2 flat");
  const Root& g1 = rs.positive_roots[flat.simple_system[0]];
  const Root& g2 = rs.positive_roots[flat.simple_system[1]];
  long np = static_cast<long>(rs.num_positive());
  std::vector<int> r(np, 0);
  // positive_roots are sorted by height, so one pass is the height induction
  for (long b = 0; b < np; ++b) {
    const Root& beta = rs.positive_roots[b];
    bool is_simple = beta.height() == 1;
    if (is_simple || RootSystem::poset_leq(beta, g1) || RootSystem::poset_leq(beta, g2)) {
      r[b] = 1;
      continue;
    }
    int via1 = -1, via2 = -1;
    int i1 = rs.index_of(beta - g1);
    int i2 = rs.index_of(beta - g2);
    if (i1 >= 0) via1 = r[i1] + 1;
    if (i2 >= 0) via2 = r[i2] + 1;
    if (via1 >= 0 && via2 >= 0 && via1 != via2)
      throw std::logic_error("inconsistent address recursion at " + beta.str());
    if (via1 >= 0 || via2 >= 0) {
      r[b] = via1 >= 0 ? via1 : via2;
      continue;
    }
    int best = -1;
    for (int i = 0; i < rs.rank; ++i) {
      int pred = rs.index_of(beta - rs.simple(i));
      if (pred >= 0) best = std::max(best, r[pred]);
    }
    if (best < 0) throw std::logic_error("root with no simple predecessor: " + beta.str());
    r[b] = best;
  }
  return r;
}

// Shifted address: bump the value at gamma_i to 2, keep the rest.
inline std::vector<int> rX_address_shifted(const RootSystem& rs, const Flat& flat, int which) {
  std::vector<int> r = rX_address(rs, flat);
  r[flat.simple_system[which]] = 2;
  return r;
}

}  // namespace shicat
