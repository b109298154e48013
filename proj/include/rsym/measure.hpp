#pragma once

#include "rsym/spline.hpp"
#include "rsym/weights.hpp"

namespace rsym {

// Reduced 1-D description of mu on the half-space: density
// lambda(t) = e^{V1(t)} M2 per unit x1-length, tail mass Phi(t) = mu({x1 > t})
// tabulated on [0, t_max], and the inverse of Phi.
//
// The tabulation is a cubic Hermite spline with exact slopes -lambda at the
// nodes; panel boundaries come from adaptive Simpson refinement with a width
// cap so spline derivatives stay accurate between nodes. Mass beyond t_max
// (at most eps_tail) is carried as the value Phi(t_max).
class ReducedMeasure {
 public:
  struct BuildOptions {
    double eps_tail_rel = 1e-12;   // admitted tail mass, relative to the total
    double panel_tol_rel = 1e-12;  // Simpson tolerance, relative to the total
    double max_panel_rel = 2e-4;   // panel width cap, relative to t_max
  };

  // Throws MeasureNotFiniteError when mu(R^d_+) is infinite.
  static ReducedMeasure build(const PotentialSplit& V, const BuildOptions& opts);
  static ReducedMeasure build(const PotentialSplit& V) {
    return build(V, BuildOptions());
  }

  double lambda(double t) const;

  // t in [0, inf); clamps to the admitted tail value beyond t_max
  double phi(double t) const;

  // m in [eps_tail, total]; |phi(inverse(m)) - m| <= 1e-10 * total
  double inverse(double m) const;

  double total() const { return total_; }
  double t_max() const { return t_max_; }
  double eps_tail() const { return eps_tail_; }
  const PotentialSplit& potential() const { return potential_; }

 private:
  explicit ReducedMeasure(const PotentialSplit& V) : potential_(V) {}

  PotentialSplit potential_;
  CubicHermiteSpline phi_spline_;
  double total_ = 0.0;
  double t_max_ = 0.0;
  double eps_tail_ = 0.0;
};

// h(m): weighted perimeter of the half-space holding mass m, that is
// w(tau) lambda(tau) at tau = Phi^{-1}(m).
double half_space_perimeter(const ReducedMeasure& mu, const WeightProfile& w, double m);

}  // namespace rsym
