#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsym/spline.hpp"

namespace rsym {

enum class WeightFamily { kConstant, kExponential, kShiftedExponential, kPower, kTabulated };

// 1-D weight w(x1) > 0 with a C^1 evaluation on its domain. The power family
// lives on (delta, inf); tabulated weights on their breakpoint range with
// monotonicity-preserving cubic interpolation.
class WeightProfile {
 public:
  static WeightProfile constant(double kappa);
  static WeightProfile exponential(double decay_rate);
  static WeightProfile shifted_exponential(double decay_rate, double offset);
  static WeightProfile power(double decay_rate, double cutoff = 1e-3);
  static WeightProfile tabulated(std::vector<double> breakpoints,
                                 std::vector<double> values);

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

  // open lower end of the admissible domain; -inf when unbounded
  double domain_min() const;
  double domain_max() const;

  WeightFamily family() const { return family_; }
  double decay_rate() const { return a_; }
  double offset() const { return b_; }
  double level() const { return kappa_; }
  double cutoff() const { return delta_; }

 private:
  WeightProfile() = default;
  void require_in_domain(double t) const;

  WeightFamily family_ = WeightFamily::kConstant;
  double a_ = 0.0, b_ = 0.0, kappa_ = 1.0, delta_ = 0.0;
  CubicHermiteSpline spline_;
};

enum class AxialPotential { kZero, kGaussian, kSignedParabola, kLinear };
enum class CrossPotential { kZero, kGaussian };

// Split potential V(x) = V1(x1) + V2(x'). The split makes the reduction to a
// product measure exact: the x1-drift depends on x1 only by construction.
class PotentialSplit {
 public:
  PotentialSplit(AxialPotential axial, double axial_c, CrossPotential cross,
                 double cross_c, int dimension);

  double v1(double t) const;
  double dv1(double t) const;   // continuous for every family
  double d2v1(double t) const;  // throws std::domain_error at a kink
  bool v1_kink_at(double t) const;

  double v2(double y) const;                // d == 2 cross section
  double value(double x1, double y) const;  // V1(x1) + V2(y), d == 2
  double cross_antiderivative(double y) const;  // ∫_0^y e^{V2}

  // M2 = ∫_{R^{d-1}} e^{V2} dx'; infinite for the zero family in d > 1
  double cross_mass() const;
  bool cross_mass_finite() const;

  int dimension() const { return dim_; }
  AxialPotential axial_family() const { return axial_; }
  double axial_c() const { return c1_; }
  CrossPotential cross_family() const { return cross_; }
  double cross_c() const { return c2_; }

 private:
  AxialPotential axial_;
  CrossPotential cross_;
  double c1_, c2_;
  int dim_;
};

// g(t) = -w'(t) - w(t) V1'(t), the divergence density of the calibration
// field -e1 w e^V. Continuous across V1 kinks since V1' is continuous.
double drift_g(const WeightProfile& w, const PotentialSplit& V, double t);

// Residual (w'' + V1'' w + V1' w') / w whose nonnegativity is equivalent to
// the drift being nonincreasing. Analytic families reduce to closed forms
// (a^2 - 2c + 2ac|t| for the exponential/signed-parabola pair); elsewhere the
// raw normalized residual is returned and kinks of V1 are domain errors.
double ode_condition_residual(const WeightProfile& w, const PotentialSplit& V,
                              double t);

struct DriftConditionReport {
  bool nonnegative = true;
  bool nonincreasing = true;
  double min_g = 0.0;
  double max_g = 0.0;
  std::optional<double> first_negative_t;
  std::optional<double> first_increase_t;

  bool closed_form_available = false;
  std::string closed_form_criterion;
  double closed_form_value = 0.0;  // criterion holds iff >= 0
  bool closed_form_satisfied = false;
  bool closed_form_exact = false;  // iff-criterion on the working half-line

  // Grid verdict. Reported as an empirical pass, never as a proof.
  bool empirical_pass() const { return nonnegative && nonincreasing; }
};

// Checks that g is nonnegative and nonincreasing on the sampling grid
// (strictly increasing abscissae) and attaches the closed-form criterion for
// the analytic families.
DriftConditionReport validate_drift_condition(const WeightProfile& w,
                                              const PotentialSplit& V,
                                              std::span<const double> grid);

// Uniform grid helper for the working interval, n >= 2 points.
std::vector<double> uniform_grid(double lo, double hi, int n);

}  // namespace rsym
