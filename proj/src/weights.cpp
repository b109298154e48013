#include "rsym/weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsym {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

WeightProfile WeightProfile::constant(double kappa) {
  if (!(kappa > 0)) throw std::invalid_argument("constant weight: level must be > 0");
  WeightProfile w;
  w.family_ = WeightFamily::kConstant;
  w.kappa_ = kappa;
  return w;
}

WeightProfile WeightProfile::exponential(double decay_rate) {
  if (!(decay_rate > 0)) throw std::invalid_argument("exponential weight: rate must be > 0");
  WeightProfile w;
  w.family_ = WeightFamily::kExponential;
  w.a_ = decay_rate;
  return w;
}

WeightProfile WeightProfile::shifted_exponential(double decay_rate, double offset) {
  if (!(decay_rate > 0) || offset < 0)
    throw std::invalid_argument("shifted exponential weight: need rate > 0, offset >= 0");
  WeightProfile w;
  w.family_ = WeightFamily::kShiftedExponential;
  w.a_ = decay_rate;
  w.b_ = offset;
  return w;
}

WeightProfile WeightProfile::power(double decay_rate, double cutoff) {
  if (!(decay_rate > 0)) throw std::invalid_argument("power weight: rate must be > 0");
  if (!(cutoff > 0)) throw std::invalid_argument("power weight: cutoff must be > 0");
  WeightProfile w;
  w.family_ = WeightFamily::kPower;
  w.a_ = decay_rate;
  w.delta_ = cutoff;
  return w;
}

WeightProfile WeightProfile::tabulated(std::vector<double> breakpoints,
                                       std::vector<double> values) {
  if (breakpoints.size() < 2 || breakpoints.size() != values.size())
    throw std::invalid_argument("tabulated weight: need >= 2 matching breakpoints/values");
  for (double v : values)
    if (!(v > 0)) throw std::invalid_argument("tabulated weight: values must be > 0");
  WeightProfile w;
  w.family_ = WeightFamily::kTabulated;
  auto slopes = monotone_slopes(breakpoints, values);
  w.spline_ = CubicHermiteSpline(std::move(breakpoints), std::move(values), std::move(slopes));
  return w;
}

void WeightProfile::require_in_domain(double t) const {
  if (t <= domain_min() || t > domain_max())
    throw std::domain_error("weight evaluated outside its domain");
}

double WeightProfile::domain_min() const {
  switch (family_) {
    case WeightFamily::kPower: return delta_;
    case WeightFamily::kTabulated: return spline_.front();
    default: return -kInf;
  }
}

double WeightProfile::domain_max() const {
  return family_ == WeightFamily::kTabulated ? spline_.back() : kInf;
}

double WeightProfile::value(double t) const {
  switch (family_) {
    case WeightFamily::kConstant: return kappa_;
    case WeightFamily::kExponential: return std::exp(-a_ * t);
    case WeightFamily::kShiftedExponential: return b_ + std::exp(-a_ * t);
    case WeightFamily::kPower:
      require_in_domain(t);
      return std::pow(t, -a_);
    case WeightFamily::kTabulated:
      require_in_domain(t);
      return spline_.value(t);
  }
  return 0.0;
}

double WeightProfile::derivative(double t) const {
  switch (family_) {
    case WeightFamily::kConstant: return 0.0;
    case WeightFamily::kExponential: return -a_ * std::exp(-a_ * t);
    case WeightFamily::kShiftedExponential: return -a_ * std::exp(-a_ * t);
    case WeightFamily::kPower:
      require_in_domain(t);
      return -a_ * std::pow(t, -a_ - 1.0);
    case WeightFamily::kTabulated:
      require_in_domain(t);
      return spline_.derivative(t);
  }
  return 0.0;
}

double WeightProfile::second_derivative(double t) const {
  switch (family_) {
    case WeightFamily::kConstant: return 0.0;
    case WeightFamily::kExponential: return a_ * a_ * std::exp(-a_ * t);
    case WeightFamily::kShiftedExponential: return a_ * a_ * std::exp(-a_ * t);
    case WeightFamily::kPower:
      require_in_domain(t);
      return a_ * (a_ + 1.0) * std::pow(t, -a_ - 2.0);
    case WeightFamily::kTabulated: {
      require_in_domain(t);
      // C^1 spline: central difference of the stored derivative
      const double h = 1e-6 * (1.0 + std::abs(t));
      return (spline_.derivative(t + h) - spline_.derivative(t - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

PotentialSplit::PotentialSplit(AxialPotential axial, double axial_c, CrossPotential cross,
                               double cross_c, int dimension)
    : axial_(axial), cross_(cross), c1_(axial_c), c2_(cross_c), dim_(dimension) {
  if (dimension < 1) throw std::invalid_argument("potential: dimension must be >= 1");
  if (axial != AxialPotential::kZero && !(axial_c > 0))
    throw std::invalid_argument("potential: axial coefficient must be > 0");
  if (cross == CrossPotential::kGaussian && !(cross_c > 0))
    throw std::invalid_argument("potential: cross coefficient must be > 0");
}

double PotentialSplit::v1(double t) const {
  switch (axial_) {
    case AxialPotential::kZero: return 0.0;
    case AxialPotential::kGaussian: return -c1_ * t * t;
    case AxialPotential::kSignedParabola: return -c1_ * t * std::abs(t);
    case AxialPotential::kLinear: return -c1_ * t;
  }
  return 0.0;
}

double PotentialSplit::dv1(double t) const {
  switch (axial_) {
    case AxialPotential::kZero: return 0.0;
    case AxialPotential::kGaussian: return -2.0 * c1_ * t;
    case AxialPotential::kSignedParabola: return -2.0 * c1_ * std::abs(t);
    case AxialPotential::kLinear: return -c1_;
  }
  return 0.0;
}

double PotentialSplit::d2v1(double t) const {
  switch (axial_) {
    case AxialPotential::kZero: return 0.0;
    case AxialPotential::kGaussian: return -2.0 * c1_;
    case AxialPotential::kSignedParabola:
      if (t == 0.0)
        throw std::domain_error("second derivative of the signed parabola at its kink");
      return -2.0 * c1_ * (t > 0 ? 1.0 : -1.0);
    case AxialPotential::kLinear: return 0.0;
  }
  return 0.0;
}

bool PotentialSplit::v1_kink_at(double t) const {
  return axial_ == AxialPotential::kSignedParabola && t == 0.0;
}

double PotentialSplit::v2(double y) const {
  return cross_ == CrossPotential::kGaussian ? -c2_ * y * y : 0.0;
}

double PotentialSplit::value(double x1, double y) const { return v1(x1) + v2(y); }

double PotentialSplit::cross_antiderivative(double y) const {
  if (cross_ == CrossPotential::kGaussian) {
    const double r = std::sqrt(c2_);
    return 0.5 * std::sqrt(M_PI / c2_) * std::erf(r * y);
  }
  return y;
}

double PotentialSplit::cross_mass() const {
  if (dim_ == 1) return 1.0;
  if (cross_ == CrossPotential::kZero) return kInf;
  return std::pow(M_PI / c2_, 0.5 * (dim_ - 1));
}

bool PotentialSplit::cross_mass_finite() const { return std::isfinite(cross_mass()); }

double drift_g(const WeightProfile& w, const PotentialSplit& V, double t) {
  return -w.derivative(t) - w.value(t) * V.dv1(t);
}

namespace {

bool exponential_like(const WeightProfile& w) {
  return w.family() == WeightFamily::kExponential ||
         (w.family() == WeightFamily::kShiftedExponential && w.offset() == 0.0);
}

}  // namespace

double ode_condition_residual(const WeightProfile& w, const PotentialSplit& V, double t) {
  if (exponential_like(w) && V.axial_family() == AxialPotential::kSignedParabola) {
    const double a = w.decay_rate();
    const double c = V.axial_c();
    return a * a - 2.0 * c + 2.0 * a * c * std::abs(t);
  }
  if (V.v1_kink_at(t))
    throw std::domain_error("ode condition residual at a potential kink");
  const double wt = w.value(t);
  return (w.second_derivative(t) + V.d2v1(t) * wt + V.dv1(t) * w.derivative(t)) / wt;
}

DriftConditionReport validate_drift_condition(const WeightProfile& w,
                                              const PotentialSplit& V,
                                              std::span<const double> grid) {
  if (grid.size() < 2)
    throw std::invalid_argument("drift condition: need a grid with >= 2 points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("drift condition: grid must be strictly increasing");

  DriftConditionReport rep;
  std::vector<double> g(grid.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    g[i] = drift_g(w, V, grid[i]);
    scale = std::max(scale, std::abs(g[i]));
  }
  rep.min_g = g[0];
  rep.max_g = g[0];
  const double tol = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rep.min_g = std::min(rep.min_g, g[i]);
    rep.max_g = std::max(rep.max_g, g[i]);
    if (g[i] < -tol && !rep.first_negative_t) {
      rep.nonnegative = false;
      rep.first_negative_t = grid[i];
    }
    if (i > 0 && g[i] > g[i - 1] + tol && !rep.first_increase_t) {
      rep.nonincreasing = false;
      rep.first_increase_t = grid[i];
    }
  }

  const bool exp_like = exponential_like(w);
  const bool shifted = w.family() == WeightFamily::kShiftedExponential && w.offset() > 0.0;
  const double a = w.decay_rate();
  const double c = V.axial_c();
  switch (V.axial_family()) {
    case AxialPotential::kSignedParabola:
    case AxialPotential::kGaussian:
      if (exp_like) {
        rep.closed_form_available = true;
        rep.closed_form_criterion = "a^2 - 2c";
        rep.closed_form_value = a * a - 2.0 * c;
        rep.closed_form_exact = true;
      } else if (shifted) {
        // Necessary at t = 0 only: for offset > 0 the drift eventually turns
        // increasing in the far tail, so the grid verdict is authoritative.
        rep.closed_form_available = true;
        rep.closed_form_criterion = "a^2 - 2c(1+b)";
        rep.closed_form_value = a * a - 2.0 * c * (1.0 + w.offset());
        rep.closed_form_exact = false;
      } else if (w.family() == WeightFamily::kPower) {
        rep.closed_form_available = true;
        rep.closed_form_criterion = "a - 1";
        rep.closed_form_value = w.decay_rate() - 1.0;
        rep.closed_form_exact = true;
      }
      break;
    case AxialPotential::kZero:
      if (w.family() == WeightFamily::kConstant) {
        rep.closed_form_available = true;
        rep.closed_form_criterion = "zero drift";
        rep.closed_form_value = 0.0;
        rep.closed_form_exact = true;
      }
      break;
    case AxialPotential::kLinear:
      break;
  }
  rep.closed_form_satisfied = rep.closed_form_available && rep.closed_form_value >= 0.0;
  return rep;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo < hi)) throw std::invalid_argument("uniform_grid: bad range");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace rsym
