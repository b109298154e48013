#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace rsym {

// Masked uniform cell grid in the half-plane. The included cells tile the
// domain exactly; each carries one node at its center. The homogeneous
// Dirichlet boundary runs along the faces of the masked region, half a
// spacing from the outermost nodes, and the assembly doubles the
// transmissibility of boundary faces accordingly.
class RectilinearDomain {
 public:
  struct Rect {
    double x1_lo, x1_hi, x2_lo, x2_hi;
  };

  static std::shared_ptr<const RectilinearDomain> rect(const Rect& r, double hc);
  static std::shared_ptr<const RectilinearDomain> union_of_rects(
      std::span<const Rect> rects, double hc);
  static std::shared_ptr<const RectilinearDomain> from_mask(
      double x1_lo, double x2_lo, double hc, int nx, int ny,
      std::vector<std::uint8_t> mask);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hc() const { return hc_; }
  int node_count() const { return n_nodes_; }

  bool in_mask(int i, int j) const {
    return i >= 0 && i < nx_ && j >= 0 && j < ny_ && mask_[idx(i, j)] != 0;
  }
  // dense node id, -1 outside the mask
  int node_id(int i, int j) const {
    return in_mask(i, j) ? ids_[idx(i, j)] : -1;
  }
  double node_x(int i) const { return x1_lo_ + (i + 0.5) * hc_; }
  double node_y(int j) const { return x2_lo_ + (j + 0.5) * hc_; }

  // (i, j) of the k-th node
  std::pair<int, int> node_coords(int k) const { return coords_[k]; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  void finalize();

  double x1_lo_ = 0.0, x2_lo_ = 0.0, hc_ = 0.0;
  int nx_ = 0, ny_ = 0, n_nodes_ = 0;
  std::vector<std::uint8_t> mask_;
  std::vector<int> ids_;
  std::vector<std::pair<int, int>> coords_;
};

using DomainPtr = std::shared_ptr<const RectilinearDomain>;

// Scalar field on the interior nodes of a domain, zero outside (Dirichlet).
class GridField {
 public:
  explicit GridField(DomainPtr dom)
      : dom_(std::move(dom)), v_(dom_->node_count(), 0.0) {}
  GridField(DomainPtr dom, std::vector<double> values);

  static GridField sample(DomainPtr dom,
                          const std::function<double(double, double)>& f);

  const RectilinearDomain& domain() const { return *dom_; }
  DomainPtr domain_ptr() const { return dom_; }
  std::span<const double> values() const { return v_; }
  std::span<double> values() { return v_; }
  double operator[](int k) const { return v_[k]; }
  double& operator[](int k) { return v_[k]; }

  // value at node (i, j), zero outside the mask
  double at(int i, int j) const {
    const int k = dom_->node_id(i, j);
    return k < 0 ? 0.0 : v_[k];
  }

 private:
  DomainPtr dom_;
  std::vector<double> v_;
};

}  // namespace rsym
