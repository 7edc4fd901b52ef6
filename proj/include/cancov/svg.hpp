#pragma once

// Deterministic SVG rendering of a pack with an optional cover.

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "cancov/cover.hpp"

namespace cancov {

struct SvgStyle {
  double width = 640.0;
  double height = 640.0;
  double margin = 20.0;
  double point_radius = 2.0;
  double member_opacity = 0.25;
};

namespace detail {

using Pt = std::array<double, 2>;

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Monotone chain hull, counter-clockwise, collinear points dropped.
inline std::vector<Pt> convex_hull(std::vector<Pt> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<Pt> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

inline std::string member_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % 10];
}

}  // namespace detail

/// Points in id order, boundary points in red, members as translucent hulls in
/// member order. The first two coordinates are plotted, a lone coordinate on a line.
inline std::string emit_svg(const DiscretePack& pack, const Cover* cover = nullptr, const SvgStyle& style = {}) {
  const auto& coords = pack.meta().coords;
  if (coords.size() != pack.size() || coords.empty() || coords[0].empty())
    throw Error(ErrorCode::NoCoordinates, "pack has no 1-D or 2-D coordinates");
  std::vector<detail::Pt> raw(pack.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = {coords[i][0], coords[i].size() > 1 ? coords[i][1] : 0.0};
  double x0 = raw[0][0], x1 = x0, y0 = raw[0][1], y1 = y0;
  for (const auto& p : raw) {
    x0 = std::min(x0, p[0]), x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]), y1 = std::max(y1, p[1]);
  }
  const double sx = (style.width - 2 * style.margin) / std::max(x1 - x0, 1e-12);
  const double sy = (style.height - 2 * style.margin) / std::max(y1 - y0, 1e-12);
  const double s = std::min(sx, sy);
  auto map = [&](const detail::Pt& p) -> detail::Pt {
    return {style.margin + (p[0] - x0) * s, style.height - style.margin - (p[1] - y0) * s};
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(style.width) +
                    "\" height=\"" + detail::fmt(style.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (cover) {
    out += "<g id=\"members\">\n";
    for (std::size_t i = 0; i < cover->members.size(); ++i) {
      std::vector<detail::Pt> pts;
      for (PointId p : cover->members[i]) pts.push_back(map(raw[p]));
      const auto hull = detail::convex_hull(std::move(pts));
      if (hull.empty()) continue;
      const std::string color = detail::member_color(i);
      const std::string op = detail::fmt(style.member_opacity);
      if (hull.size() == 1) {
        out += "<circle cx=\"" + detail::fmt(hull[0][0]) + "\" cy=\"" + detail::fmt(hull[0][1]) + "\" r=\"" +
               detail::fmt(3 * style.point_radius) + "\" fill=\"" + color + "\" fill-opacity=\"" + op + "\"/>\n";
        continue;
      }
      std::string pts_attr;
      for (const auto& p : hull) pts_attr += detail::fmt(p[0]) + "," + detail::fmt(p[1]) + " ";
      pts_attr.pop_back();
      out += "<polygon points=\"" + pts_attr + "\" fill=\"" + color + "\" fill-opacity=\"" + op + "\" stroke=\"" +
             color + "\" stroke-opacity=\"" + op + "\" stroke-width=\"" + detail::fmt(2 * style.point_radius) +
             "\" stroke-linejoin=\"round\"/>\n";
    }
    out += "</g>\n";
  }
  out += "<g id=\"points\">\n";
  for (PointId p = 0; p < pack.size(); ++p) {
    const auto q = map(raw[p]);
    out += "<circle cx=\"" + detail::fmt(q[0]) + "\" cy=\"" + detail::fmt(q[1]) + "\" r=\"" +
           detail::fmt(style.point_radius) + "\" fill=\"" + (pack.is_boundary(p) ? "#d00000" : "#202020") + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace cancov
