#include "rsym/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "rsym/errors.hpp"

namespace rsym {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool segments_touch(const Point& p1, const Point& p2, const Point& p3, const Point& p4,
                    double eps) {
  const auto sgn = [eps](double v) { return v > eps ? 1 : (v < -eps ? -1 : 0); };
  const int d1 = sgn(cross(p3, p4, p1));
  const int d2 = sgn(cross(p3, p4, p2));
  const int d3 = sgn(cross(p1, p2, p3));
  const int d4 = sgn(cross(p1, p2, p4));
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  const auto on_segment = [eps](const Point& a, const Point& b, const Point& p) {
    return std::min(a.x, b.x) - eps <= p.x && p.x <= std::max(a.x, b.x) + eps &&
           std::min(a.y, b.y) - eps <= p.y && p.y <= std::max(a.y, b.y) + eps;
  };
  if (d1 == 0 && on_segment(p3, p4, p1)) return true;
  if (d2 == 0 && on_segment(p3, p4, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, p3)) return true;
  if (d4 == 0 && on_segment(p1, p2, p4)) return true;
  return false;
}

}  // namespace

Polygon Polygon::make(std::vector<Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw GeometryError("polygon: need at least 3 vertices");

  Polygon p;
  p.bbox_ = {vertices[0].x, vertices[0].x, vertices[0].y, vertices[0].y};
  for (const Point& v : vertices) {
    p.bbox_.x_lo = std::min(p.bbox_.x_lo, v.x);
    p.bbox_.x_hi = std::max(p.bbox_.x_hi, v.x);
    p.bbox_.y_lo = std::min(p.bbox_.y_lo, v.y);
    p.bbox_.y_hi = std::max(p.bbox_.y_hi, v.y);
  }
  if (p.bbox_.x_lo < 0.0) throw GeometryError("polygon: vertex outside the half-plane x >= 0");
  const double scale = std::max({p.bbox_.x_hi - p.bbox_.x_lo, p.bbox_.y_hi - p.bbox_.y_lo, 1e-12});

  double signed_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    signed_area += 0.5 * (a.x * b.y - b.x * a.y);
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len < 1e-12 * scale) throw GeometryError("polygon: degenerate (zero-length) edge");
  }
  if (signed_area < 1e-12 * scale * scale)
    throw GeometryError("polygon: not counterclockwise or has vanishing area");

  const double eps = 1e-13 * scale * scale;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_touch(vertices[i], vertices[(i + 1) % n], vertices[j],
                         vertices[(j + 1) % n], eps))
        throw GeometryError("polygon: self-intersection between non-adjacent edges");
    }
  }

  p.v_ = std::move(vertices);
  p.area_ = signed_area;
  return p;
}

Polygon random_star_polygon(SplitMix64& rng, const StarPolygonOptions& opts) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double cx = rng.uniform(opts.center_x_lo, opts.center_x_hi);
    const double cy = rng.uniform(-opts.center_y_half, opts.center_y_half);
    const int n = static_cast<int>(rng.uniform_int(opts.min_vertices, opts.max_vertices));
    std::vector<Point> vs(n);
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      const double theta = 2.0 * M_PI * (k + 0.8 * rng.uniform()) / n;
      const double r = rng.uniform(opts.radius_lo, opts.radius_hi);
      vs[k] = {cx + r * std::cos(theta), cy + r * std::sin(theta)};
      if (vs[k].x < opts.min_x) ok = false;
    }
    if (!ok) continue;
    try {
      return Polygon::make(std::move(vs));
    } catch (const GeometryError&) {
      continue;  // jitter produced a degenerate draw
    }
  }
  throw GeometryError("random_star_polygon: rejection sampling failed");
}

}  // namespace rsym
