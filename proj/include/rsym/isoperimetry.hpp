#pragma once

#include <functional>

#include "rsym/measure.hpp"
#include "rsym/polygon.hpp"
#include "rsym/weights.hpp"

namespace rsym {

// ∫_{∂A} w(x1) e^{V} dH^1, each edge by adaptive Gauss quadrature.
double weighted_perimeter(const Polygon& A, const WeightProfile& w,
                          const PotentialSplit& V);

// mu(A) = ∫_A e^V dx by vertical strips: the cross integral of e^{V2} is the
// closed-form antiderivative difference, the x1 integral is adaptive.
double weighted_area(const Polygon& A, const PotentialSplit& V);

// ∫_{A ∩ {x_lo < x1 < x_hi}} factor(x1) e^V dx; factor may be empty.
double weighted_strip_integral(const Polygon& A, const PotentialSplit& V, double x_lo,
                               double x_hi, const std::function<double(double)>& factor);

// t_A with Phi(t_A) = mu(A).
double half_space_level(const Polygon& A, const ReducedMeasure& mu);

// ∫_{A Δ R_A} |g(x1) - g(t_A)| dmu. The unbounded piece over R_A \ A is
// evaluated as the reduced half-space integral minus the part inside A.
double quantitative_gap(const Polygon& A, double t_A, const WeightProfile& w,
                        const PotentialSplit& V, const ReducedMeasure& mu);

struct IsoReport {
  double mu_A = 0.0;
  double t_A = 0.0;
  double perimeter = 0.0;             // P_{w,V}(A)
  double half_space_perimeter = 0.0;  // P_{w,V}(R_A) = h(mu_A)
  double gap_bound = 0.0;             // quantitative right-hand side
  double calibration = 0.0;           // ∫_A g dmu, a lower bound for P(A)
  double slack = 0.0;                 // P(A) - P(R_A) - max(0, gap_bound)
  bool holds = false;
  bool hypotheses_met = false;
};

// The full certificate for one set. `hypotheses_met` is the drift-condition
// verdict supplied by the caller; the report is produced either way and the
// inequality is only claimed when the hypotheses held.
IsoReport isoperimetric_check(const Polygon& A, const WeightProfile& w,
                              const PotentialSplit& V, const ReducedMeasure& mu,
                              bool hypotheses_met);

}  // namespace rsym
