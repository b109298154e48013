#include "rsym/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "rsym/errors.hpp"
#include "rsym/quadrature.hpp"

namespace rsym {

namespace {

// Upper bound for the total axial integral, used only to scale tolerances.
double axial_total_upper(const PotentialSplit& V) {
  switch (V.axial_family()) {
    case AxialPotential::kZero:
      return std::numeric_limits<double>::infinity();
    case AxialPotential::kGaussian:
    case AxialPotential::kSignedParabola:
      return 0.5 * std::sqrt(M_PI / V.axial_c());
    case AxialPotential::kLinear:
      return 1.0 / V.axial_c();
  }
  return 0.0;
}

// Upper bound for the axial tail integral over (T, inf), T > 0.
double axial_tail_bound(const PotentialSplit& V, double T) {
  const double c = V.axial_c();
  switch (V.axial_family()) {
    case AxialPotential::kZero:
      return std::numeric_limits<double>::infinity();
    case AxialPotential::kGaussian:
    case AxialPotential::kSignedParabola:
      return std::exp(-c * T * T) / (2.0 * c * T);
    case AxialPotential::kLinear:
      return std::exp(-c * T) / c;
  }
  return 0.0;
}

double find_t_max(const PotentialSplit& V, double eps_axial) {
  double hi = 1.0;
  while (axial_tail_bound(V, hi) > eps_axial) {
    hi *= 2.0;
    if (hi > 1e6) throw MeasureNotFiniteError("tail bound does not reach the tolerance");
  }
  double lo = hi * 0.5;
  if (hi == 1.0) lo = 1e-3;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (axial_tail_bound(V, mid) > eps_axial ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

ReducedMeasure ReducedMeasure::build(const PotentialSplit& V, const BuildOptions& opts) {
  if (!V.cross_mass_finite())
    throw MeasureNotFiniteError("measure not finite: cross-sectional mass diverges");
  const double axial_upper = axial_total_upper(V);
  if (!std::isfinite(axial_upper))
    throw MeasureNotFiniteError("measure not finite: axial integral diverges");
  const double m2 = V.cross_mass();
  const double total_upper = m2 * axial_upper;

  ReducedMeasure mu(V);
  const double eps_abs = opts.eps_tail_rel * total_upper;
  mu.t_max_ = find_t_max(V, eps_abs / m2);

  const auto density = [&](double t) { return m2 * std::exp(V.v1(t)); };
  std::vector<QuadPanel> panels;
  adaptive_simpson(density, 0.0, mu.t_max_, opts.panel_tol_rel * total_upper, 60,
                   opts.max_panel_rel * mu.t_max_, &panels);

  // Mass beyond t_max: one quadrature stretch plus a negligible far bound.
  const double pad = 2.0 * mu.t_max_;
  const double tail =
      integrate_gk(density, mu.t_max_, pad, 1e-16 * total_upper).value +
      m2 * axial_tail_bound(V, pad);
  mu.eps_tail_ = tail;

  std::vector<double> x, cumulative;
  x.reserve(panels.size() + 1);
  cumulative.reserve(panels.size() + 1);
  x.push_back(0.0);
  cumulative.push_back(0.0);
  for (const QuadPanel& p : panels) {
    x.push_back(p.b);
    cumulative.push_back(cumulative.back() + p.integral);
  }
  mu.total_ = cumulative.back() + tail;

  std::vector<double> phi(x.size()), slope(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    phi[i] = mu.total_ - cumulative[i];
    slope[i] = -density(x[i]);
  }
  mu.phi_spline_ = CubicHermiteSpline(std::move(x), std::move(phi), std::move(slope));

  // The tabulation of a smooth strictly decreasing function with exact slopes
  // must itself decrease; verify at panel midpoints.
  const auto& nodes = mu.phi_spline_.nodes();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double mid = 0.5 * (nodes[i] + nodes[i + 1]);
    if (mu.phi_spline_.derivative(mid) > 0.0)
      throw std::logic_error("tail-mass tabulation lost monotonicity");
  }
  return mu;
}

double ReducedMeasure::lambda(double t) const {
  return potential_.cross_mass() * std::exp(potential_.v1(t));
}

double ReducedMeasure::phi(double t) const {
  if (t < 0.0) throw std::domain_error("phi: abscissa below the half-space");
  if (t >= t_max_) return eps_tail_;
  return phi_spline_.value(t);
}

double ReducedMeasure::inverse(double m) const {
  if (m > total_ * (1.0 + 1e-9) || m < eps_tail_ * (1.0 - 1e-9))
    throw std::range_error("inverse: mass outside (eps_tail, total]");
  m = std::min(m, total_);
  m = std::max(m, eps_tail_);
  double lo = 0.0, hi = t_max_;  // phi(lo) >= m >= phi(hi)
  const double width_tol = 1e-12 * std::max(1.0, t_max_);
  while (hi - lo > width_tol) {
    const double mid = 0.5 * (lo + hi);
    (phi_spline_.value(mid) >= m ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double l = lambda(t);
    if (l <= 0.0) break;
    t += (phi_spline_.value(t) - m) / l;
    t = std::min(std::max(t, 0.0), t_max_);
  }
  return t;
}

double half_space_perimeter(const ReducedMeasure& mu, const WeightProfile& w, double m) {
  const double tau = mu.inverse(m);
  return w.value(tau) * mu.lambda(tau);
}

}  // namespace rsym
