#include "rsym/grid.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "rsym/errors.hpp"

namespace rsym {

namespace {

int lattice_count(double lo, double hi, double hc, const char* what) {
  const double span = (hi - lo) / hc;
  const double rounded = std::round(span);
  if (std::abs(span - rounded) > 1e-9 * std::max(1.0, std::abs(span)))
    throw GeometryError(std::string(what) + ": extent is not a multiple of the cell size");
  return static_cast<int>(rounded);
}

}  // namespace

void RectilinearDomain::finalize() {
  if (x1_lo_ < 0.0) throw GeometryError("domain: reaches below the half-plane x1 >= 0");
  ids_.assign(mask_.size(), -1);
  n_nodes_ = 0;
  coords_.clear();
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i)
      if (mask_[idx(i, j)]) {
        ids_[idx(i, j)] = n_nodes_++;
        coords_.push_back({i, j});
      }
  if (n_nodes_ == 0) throw GeometryError("domain: empty mask");

  // 4-connectivity
  std::vector<std::uint8_t> seen(mask_.size(), 0);
  std::queue<std::pair<int, int>> q;
  q.push(coords_.front());
  seen[idx(coords_.front().first, coords_.front().second)] = 1;
  int reached = 1;
  while (!q.empty()) {
    const auto [i, j] = q.front();
    q.pop();
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      const int ii = i + di[d], jj = j + dj[d];
      if (in_mask(ii, jj) && !seen[idx(ii, jj)]) {
        seen[idx(ii, jj)] = 1;
        ++reached;
        q.push({ii, jj});
      }
    }
  }
  if (reached != n_nodes_) throw GeometryError("domain: mask is not 4-connected");
}

std::shared_ptr<const RectilinearDomain> RectilinearDomain::rect(const Rect& r, double hc) {
  return union_of_rects(std::span<const Rect>(&r, 1), hc);
}

std::shared_ptr<const RectilinearDomain> RectilinearDomain::union_of_rects(
    std::span<const Rect> rects, double hc) {
  if (rects.empty() || !(hc > 0)) throw GeometryError("domain: empty rectangle list");
  double x1_lo = rects[0].x1_lo, x2_lo = rects[0].x2_lo;
  double x1_hi = rects[0].x1_hi, x2_hi = rects[0].x2_hi;
  for (const Rect& r : rects) {
    if (!(r.x1_lo < r.x1_hi) || !(r.x2_lo < r.x2_hi))
      throw GeometryError("domain: inverted rectangle");
    x1_lo = std::min(x1_lo, r.x1_lo);
    x2_lo = std::min(x2_lo, r.x2_lo);
    x1_hi = std::max(x1_hi, r.x1_hi);
    x2_hi = std::max(x2_hi, r.x2_hi);
  }
  auto dom = std::make_shared<RectilinearDomain>(RectilinearDomain{});
  dom->x1_lo_ = x1_lo;
  dom->x2_lo_ = x2_lo;
  dom->hc_ = hc;
  dom->nx_ = lattice_count(x1_lo, x1_hi, hc, "domain");
  dom->ny_ = lattice_count(x2_lo, x2_hi, hc, "domain");
  if (dom->nx_ < 1 || dom->ny_ < 1) throw GeometryError("domain: too small for the grid");
  dom->mask_.assign(static_cast<std::size_t>(dom->nx_) * dom->ny_, 0);
  // a cell belongs to the union when its center does; rectangle edges are
  // lattice-aligned, so centers stay half a spacing clear of any edge
  for (int j = 0; j < dom->ny_; ++j)
    for (int i = 0; i < dom->nx_; ++i) {
      const double x = dom->node_x(i);
      const double y = dom->node_y(j);
      for (const Rect& r : rects)
        if (x > r.x1_lo + 1e-9 && x < r.x1_hi - 1e-9 && y > r.x2_lo + 1e-9 &&
            y < r.x2_hi - 1e-9) {
          dom->mask_[dom->idx(i, j)] = 1;
          break;
        }
    }
  dom->finalize();
  return dom;
}

std::shared_ptr<const RectilinearDomain> RectilinearDomain::from_mask(
    double x1_lo, double x2_lo, double hc, int nx, int ny,
    std::vector<std::uint8_t> mask) {
  if (nx < 1 || ny < 1 || !(hc > 0) ||
      mask.size() != static_cast<std::size_t>(nx) * ny)
    throw GeometryError("domain: bad mask dimensions");
  auto dom = std::make_shared<RectilinearDomain>(RectilinearDomain{});
  dom->x1_lo_ = x1_lo;
  dom->x2_lo_ = x2_lo;
  dom->hc_ = hc;
  dom->nx_ = nx;
  dom->ny_ = ny;
  dom->mask_ = std::move(mask);
  dom->finalize();
  return dom;
}

GridField::GridField(DomainPtr dom, std::vector<double> values)
    : dom_(std::move(dom)), v_(std::move(values)) {
  if (static_cast<int>(v_.size()) != dom_->node_count())
    throw ConsistencyError("grid field: value count does not match the domain");
}

GridField GridField::sample(DomainPtr dom,
                            const std::function<double(double, double)>& f) {
  GridField out(dom);
  const auto& d = *dom;
  for (int k = 0; k < d.node_count(); ++k) {
    const auto [i, j] = d.node_coords(k);
    out[k] = f(d.node_x(i), d.node_y(j));
  }
  return out;
}

}  // namespace rsym
