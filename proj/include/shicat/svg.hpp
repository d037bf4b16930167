#pragma once

// SVG rendering of the Worpitzky partition for rank-2 systems: the
// fundamental parallelepiped, its alcoves, and their ceilings highlighted.
// Coordinates here are presentation-only; doubles are fine.

#include "shicat/alcoves.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace shicat {

inline std::string render_rank2_svg(const RootSystem& rs) {
  if (rs.rank != 2) throw std::invalid_argument("figure rendering is rank-2 only");
  const AlcoveComplex& cx = alcove_complex(rs);

  // Euclidean embedding of the simple roots from the Gram matrix, then the
  // dual basis for coweight coordinates.
  double g11 = rs.gram[0][0], g12 = rs.gram[0][1], g22 = rs.gram[1][1];
  double a1x = std::sqrt(g11), a1y = 0;
  double a2x = g12 / a1x, a2y = std::sqrt(g22 - a2x * a2x);
  // dual basis: (alpha_i, w_j) = delta_ij
  double det = a1x * a2y - a1y * a2x;
  double w1x = a2y / det, w1y = -a2x / det;
  double w2x = -a1y / det, w2y = a1x / det;
  auto emb = [&](double m1, double m2) {
    return std::make_pair(m1 * w1x + m2 * w2x, m1 * w1y + m2 * w2y);
  };

  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  for (int c1 : {0, 1})
    for (int c2 : {0, 1}) {
      auto [x, y] = emb(c1, c2);
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  double scale = 420.0 / std::max(maxx - minx, maxy - miny);
  double pad = 40;
  auto X = [&](double x) { return pad + (x - minx) * scale; };
  auto Y = [&](double y) { return pad + (maxy - y) * scale; };  // flip

  std::ostringstream svg;
  double width = 2 * pad + (maxx - minx) * scale;
  double height = 2 * pad + (maxy - miny) * scale;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto pt = [&](const Point& p) {
    double m1 = p[0].get_d(), m2 = p[1].get_d();
    auto [x, y] = emb(m1, m2);
    return std::make_pair(X(x), Y(y));
  };

  // alcove fills
  for (const Alcove& a : cx.alcoves()) {
    svg << "<polygon points=\"";
    for (const Point& v : a.vertices) {
      auto [x, y] = pt(v);
      svg << x << "," << y << " ";
    }
    svg << "\" fill=\"#eef3fb\" stroke=\"#7a8aa6\" stroke-width=\"1\"/>\n";
  }
  // ceilings highlighted
  for (const Alcove& a : cx.alcoves())
    for (const Wall& w : a.walls) {
      if (w.kind != WallKind::Ceiling) continue;
      std::vector<std::pair<double, double>> seg;
      for (size_t j = 0; j < a.vertices.size(); ++j)
        if (static_cast<int>(j) != w.opposite_vertex) seg.push_back(pt(a.vertices[j]));
      svg << "<line x1=\"" << seg[0].first << "\" y1=\"" << seg[0].second << "\" x2=\""
          << seg[1].first << "\" y2=\"" << seg[1].second
          << "\" stroke=\"#c0392b\" stroke-width=\"2.5\"/>\n";
    }
  // parallelepiped outline
  {
    auto c00 = emb(0, 0), c10 = emb(1, 0), c11 = emb(1, 1), c01 = emb(0, 1);
    svg << "<polygon points=\"" << X(c00.first) << "," << Y(c00.second) << " " << X(c10.first)
        << "," << Y(c10.second) << " " << X(c11.first) << "," << Y(c11.second) << " "
        << X(c01.first) << "," << Y(c01.second)
        << "\" fill=\"none\" stroke=\"#222\" stroke-width=\"2\"/>\n";
  }
  // origin marker and label
  {
    auto [x, y] = emb(0, 0);
    svg << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"3\" fill=\"#222\"/>\n";
    svg << "<text x=\"" << X(x) - 14 << "\" y=\"" << Y(y) + 14
        << "\" font-size=\"12\" font-family=\"sans-serif\">0</text>\n";
  }
  svg << "<text x=\"" << pad << "\" y=\"" << 18
      << "\" font-size=\"13\" font-family=\"sans-serif\">" << rs.type.name()
      << ": alcoves of the fundamental parallelepiped, ceilings in red</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace shicat
