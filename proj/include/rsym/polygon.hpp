#pragma once

#include <vector>

#include "rsym/rng.hpp"

namespace rsym {

struct Point {
  double x;
  double y;
};

// Simple, positively oriented polygon in the closed half-plane x >= 0.
class Polygon {
 public:
  struct BBox {
    double x_lo, x_hi, y_lo, y_hi;
  };

  // Throws GeometryError unless the vertex list is simple, counterclockwise,
  // has positive area and stays in x >= 0.
  static Polygon make(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  double area() const { return area_; }
  const BBox& bbox() const { return bbox_; }
  double min_x() const { return bbox_.x_lo; }

 private:
  Polygon() = default;
  std::vector<Point> v_;
  double area_ = 0.0;
  BBox bbox_{};
};

struct StarPolygonOptions {
  double center_x_lo = 0.3;
  double center_x_hi = 2.5;
  double center_y_half = 1.0;
  int min_vertices = 5;
  int max_vertices = 12;
  double radius_lo = 0.1;
  double radius_hi = 1.0;
  double min_x = 0.0;  // rejection threshold (weight-domain cutoff)
};

// Star-shaped polygon about a random center; rejection-sampled until every
// vertex satisfies x >= min_x. Deterministic given the generator state.
Polygon random_star_polygon(SplitMix64& rng, const StarPolygonOptions& opts = {});

}  // namespace rsym
