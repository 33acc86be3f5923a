#pragma once

// Marching-squares level sets of a scalar field over a 2-axis grid, with
// every vertex refined by bisection along its cell edge.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fourmode/error.hpp"
#include "fourmode/sweep.hpp"

namespace fourmode {

using Point2 = std::array<double, 2>;
using Polyline = std::vector<Point2>;

struct ContourSet {
  double level = 0.0;
  std::array<std::string, 2> axis_names{"x", "y"};
  std::vector<Polyline> polylines;
  double max_residual = 0.0;  // largest |f - level| over the vertices

  std::size_t vertex_count() const {
    std::size_t n = 0;
    for (const auto& p : polylines) n += p.size();
    return n;
  }
};

using Field2 = std::function<double(double, double)>;

namespace detail {

struct Edge {
  Point2 below, above;  // f(below) <= level < f(above)
};

// Segments per marching-squares case as (edge, edge) pairs; edges are
// 0 bottom, 1 right, 2 top, 3 left. Saddles (5, 10) are handled separately.
inline constexpr std::array<std::array<int, 2>, 16> kCaseSegments = {{
    {-1, -1}, {3, 0}, {0, 1}, {3, 1}, {1, 2}, {-1, -1}, {0, 2}, {3, 2},
    {2, 3}, {0, 2}, {-1, -1}, {1, 2}, {3, 1}, {0, 1}, {3, 0}, {-1, -1},
}};

inline double refine_on_edge(const Field2& f, const Edge& e, double level, Point2& out) {
  Point2 lo = e.below, hi = e.above;
  double f_hi = f(hi[0], hi[1]) - level;
  const double len = std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
  for (int it = 0; it < 200 && std::hypot(hi[0] - lo[0], hi[1] - lo[1]) > 1e-12 * std::max(1.0, len); ++it) {
    const Point2 mid{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
    const double fm = f(mid[0], mid[1]) - level;
    if (fm > 0.0) {
      hi = mid;
      f_hi = fm;
    } else {
      lo = mid;
    }
  }
  const double f_lo = f(lo[0], lo[1]) - level;
  if (std::abs(f_lo) < std::abs(f_hi)) {
    out = lo;
    return std::abs(f_lo);
  }
  out = hi;
  return std::abs(f_hi);
}

}  // namespace detail

/// Level set {f = level} over the grid xs x ys. `values` holds f on the grid
/// (x index slow) when already known; otherwise it is sampled.
inline ContourSet marching_squares(const Field2& f, const std::vector<double>& xs, const std::vector<double>& ys,
                                   double level, std::vector<double> values = {},
                                   unsigned threads = default_threads()) {
  const std::size_t nx = xs.size(), ny = ys.size();
  if (nx < 2 || ny < 2) throw Error(ErrorKind::invalid_config, "contour grid needs at least 2x2 points");
  if (values.empty())
    values = parallel_map<double>(nx * ny, threads, [&](std::size_t k) { return f(xs[k / ny], ys[k % ny]); });
  auto v = [&](std::size_t i, std::size_t j) { return values[i * ny + j]; };
  auto above = [&](std::size_t i, std::size_t j) { return v(i, j) > level; };

  // Edge keys: 2*(i*ny + j) horizontal (i,j)-(i+1,j), +1 vertical (i,j)-(i,j+1).
  auto hkey = [&](std::size_t i, std::size_t j) { return 2 * (i * ny + j); };
  auto vkey = [&](std::size_t i, std::size_t j) { return 2 * (i * ny + j) + 1; };
  auto edge_of = [&](std::size_t key) {
    const std::size_t cell = key / 2;
    const std::size_t i = cell / ny, j = cell % ny;
    const Point2 a{xs[i], ys[j]};
    const Point2 b = (key % 2 == 0) ? Point2{xs[i + 1], ys[j]} : Point2{xs[i], ys[j + 1]};
    return above(i, j) ? detail::Edge{b, a} : detail::Edge{a, b};
  };

  std::vector<std::array<std::size_t, 2>> segments;
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const int c = (above(i, j) ? 1 : 0) | (above(i + 1, j) ? 2 : 0) | (above(i + 1, j + 1) ? 4 : 0) |
                    (above(i, j + 1) ? 8 : 0);
      const std::array<std::size_t, 4> ek = {hkey(i, j), vkey(i + 1, j), hkey(i, j + 1), vkey(i, j)};
      if (c == 5 || c == 10) {
        const bool center = f(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])) > level;
        // Separate the two corners that disagree with the center.
        if ((c == 5) == center) {
          segments.push_back({ek[0], ek[1]});
          segments.push_back({ek[2], ek[3]});
        } else {
          segments.push_back({ek[3], ek[0]});
          segments.push_back({ek[1], ek[2]});
        }
        continue;
      }
      const auto seg = detail::kCaseSegments[static_cast<std::size_t>(c)];
      if (seg[0] >= 0)
        segments.push_back({ek[static_cast<std::size_t>(seg[0])], ek[static_cast<std::size_t>(seg[1])]});
    }
  }

  // Refine each crossed edge once.
  std::map<std::size_t, std::size_t> vertex_index;
  std::vector<std::size_t> keys;
  for (const auto& s : segments)
    for (std::size_t k : s)
      if (vertex_index.emplace(k, keys.size()).second) keys.push_back(k);
  std::vector<Point2> pts(keys.size());
  const auto residuals = parallel_map<double>(keys.size(), threads, [&](std::size_t n) {
    return detail::refine_on_edge(f, edge_of(keys[n]), level, pts[n]);
  });

  ContourSet out;
  out.level = level;
  for (double r : residuals) out.max_residual = std::max(out.max_residual, r);

  // Chain segments into polylines through shared edges.
  std::vector<std::vector<std::size_t>> adj(keys.size());
  for (const auto& s : segments) {
    const std::size_t a = vertex_index[s[0]], b = vertex_index[s[1]];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> used_vertex(keys.size(), false);
  auto walk = [&](std::size_t start) {
    Polyline line;
    std::size_t prev = start, cur = start;
    used_vertex[cur] = true;
    line.push_back(pts[cur]);
    while (true) {
      std::size_t next = cur;
      for (std::size_t n : adj[cur])
        if (n != prev && !used_vertex[n]) {
          next = n;
          break;
        }
      if (next == cur) {
        // Close a loop back onto the start.
        for (std::size_t n : adj[cur])
          if (n == start && line.size() > 2) line.push_back(pts[start]);
        break;
      }
      prev = cur;
      cur = next;
      used_vertex[cur] = true;
      line.push_back(pts[cur]);
    }
    return line;
  };
  for (std::size_t s = 0; s < keys.size(); ++s)
    if (!used_vertex[s] && adj[s].size() == 1) out.polylines.push_back(walk(s));
  for (std::size_t s = 0; s < keys.size(); ++s)
    if (!used_vertex[s]) out.polylines.push_back(walk(s));
  return out;
}

/// Level set of a sweep column over a 2-axis grid, each vertex evaluated by
/// the full pipeline.
inline ContourSet contour_extract(std::string_view field, const GridSpec& spec, double level,
                                  const SystemConfig& base = {}, LogBase log_base = LogBase::natural,
                                  unsigned threads = default_threads()) {
  (void)row_field(SweepRow{}, field);
  spec.validate();
  if (spec.axes.size() != 2) throw Error(ErrorKind::invalid_config, "contour needs exactly 2 axes");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < spec.axes[0].count(); ++i) xs.push_back(spec.axes[0].at(i));
  for (std::size_t j = 0; j < spec.axes[1].count(); ++j) ys.push_back(spec.axes[1].at(j));
  const std::string name(field);
  const Field2 f = [&](double x, double y) {
    return row_field(evaluate_point(spec.config_with(base, {x, y}), log_base), name);
  };
  ContourSet out = marching_squares(f, xs, ys, level, {}, threads);
  out.axis_names = {std::string(to_string(spec.axes[0].param)), std::string(to_string(spec.axes[1].param))};
  return out;
}

inline void write_contour_csv(std::ostream& os, const ContourSet& c, std::string_view field = {}) {
  os << "# fourmode " << kVersion << '\n';
  if (!field.empty()) os << "# " << field << " = " << format_double(c.level) << '\n';
  os << "# axis1=" << c.axis_names[0] << " axis2=" << c.axis_names[1] << '\n';
  os << "curve_id,axis1,axis2\n";
  for (std::size_t k = 0; k < c.polylines.size(); ++k)
    for (const Point2& p : c.polylines[k]) os << k << ',' << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
}

inline void write_contour_json(std::ostream& os, const ContourSet& c, std::string_view field = {}) {
  os << "{\"version\":\"" << kVersion << "\",\"field\":\"" << field << "\",\"level\":" << format_double(c.level)
     << ",\"axes\":[\"" << c.axis_names[0] << "\",\"" << c.axis_names[1] << "\"],\"polylines\":[";
  for (std::size_t k = 0; k < c.polylines.size(); ++k) {
    os << (k ? "," : "") << '[';
    for (std::size_t n = 0; n < c.polylines[k].size(); ++n)
      os << (n ? "," : "") << '[' << format_double(c.polylines[k][n][0]) << ','
         << format_double(c.polylines[k][n][1]) << ']';
    os << ']';
  }
  os << "]}\n";
}

}  // namespace fourmode
