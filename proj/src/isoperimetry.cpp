#include "rsym/isoperimetry.hpp"

#include <algorithm>
#include <cmath>

#include "rsym/errors.hpp"
#include "rsym/quadrature.hpp"

namespace rsym {

namespace {

// Interior y-extent of the polygon on the vertical line at x, as the sum of
// closed-form cross integrals over the crossing intervals. x must avoid the
// vertex abscissae; quadrature nodes do by construction.
double cross_section_mass(const Polygon& A, const PotentialSplit& V, double x,
                          std::vector<double>* ys) {
  ys->clear();
  const auto& v = A.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    if ((a.x - x) * (b.x - x) < 0.0)
      ys->push_back(a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x));
  }
  if (ys->size() % 2 != 0)
    throw GeometryError("strip integral: odd crossing count at x = " + std::to_string(x));
  std::sort(ys->begin(), ys->end());
  double mass = 0.0;
  for (std::size_t k = 0; k + 1 < ys->size(); k += 2)
    mass += V.cross_antiderivative((*ys)[k + 1]) - V.cross_antiderivative((*ys)[k]);
  return mass;
}

std::vector<double> strip_cuts(const Polygon& A, double lo, double hi) {
  std::vector<double> xs{lo};
  for (const Point& p : A.vertices())
    if (p.x > lo && p.x < hi) xs.push_back(p.x);
  xs.push_back(hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

double weighted_strip_integral(const Polygon& A, const PotentialSplit& V, double x_lo,
                               double x_hi, const std::function<double(double)>& factor) {
  const double lo = std::max(x_lo, A.bbox().x_lo);
  const double hi = std::min(x_hi, A.bbox().x_hi);
  if (!(lo < hi)) return 0.0;
  const auto xs = strip_cuts(A, lo, hi);
  std::vector<double> ys;
  const auto integrand = [&](double x) {
    const double base = std::exp(V.v1(x)) * cross_section_mass(A, V, x, &ys);
    return factor ? factor(x) * base : base;
  };
  // One coarse pass fixes the absolute tolerance scale.
  double coarse = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    coarse += std::abs(gauss_kronrod_15(integrand, xs[i], xs[i + 1], nullptr));
  const double tol = 1e-12 * std::max(1.0, coarse) / static_cast<double>(xs.size());
  return integrate_gk_segmented(integrand, xs, tol).value;
}

double weighted_area(const Polygon& A, const PotentialSplit& V) {
  return weighted_strip_integral(A, V, A.bbox().x_lo, A.bbox().x_hi, nullptr);
}

double weighted_perimeter(const Polygon& A, const WeightProfile& w,
                          const PotentialSplit& V) {
  if (A.min_x() <= w.domain_min())
    throw std::domain_error("weighted perimeter: polygon reaches below the weight domain");
  const auto& v = A.vertices();
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const auto integrand = [&](double s) {
      const double x = a.x + (b.x - a.x) * s;
      const double y = a.y + (b.y - a.y) * s;
      return w.value(x) * std::exp(V.value(x, y)) * len;
    };
    const double coarse = std::abs(gauss_kronrod_15(integrand, 0.0, 1.0, nullptr));
    total += integrate_gk(integrand, 0.0, 1.0, 1e-12 * std::max(1.0, coarse)).value;
  }
  return total;
}

double half_space_level(const Polygon& A, const ReducedMeasure& mu) {
  const double m = weighted_area(A, mu.potential());
  return mu.inverse(m);
}

double quantitative_gap(const Polygon& A, double t_A, const WeightProfile& w,
                        const PotentialSplit& V, const ReducedMeasure& mu) {
  const double g_level = drift_g(w, V, t_A);
  const auto gap_factor = [&](double x) { return std::abs(drift_g(w, V, x) - g_level); };

  const double left = weighted_strip_integral(A, V, A.bbox().x_lo, t_A, gap_factor);
  const double inside = weighted_strip_integral(A, V, t_A, A.bbox().x_hi, gap_factor);

  // Reduced half-space integral, split where g crosses its level so that the
  // absolute value stays smooth per segment.
  const auto reduced = [&](double z) { return gap_factor(z) * mu.lambda(z); };
  std::vector<double> cuts{t_A};
  const int scan = 256;
  double prev = drift_g(w, V, t_A) - g_level;
  for (int i = 1; i <= scan; ++i) {
    const double z = t_A + (mu.t_max() - t_A) * i / scan;
    const double cur = drift_g(w, V, z) - g_level;
    if (prev * cur < 0.0) {
      double lo = t_A + (mu.t_max() - t_A) * (i - 1) / scan, hi = z;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        ((drift_g(w, V, mid) - g_level) * prev > 0.0 ? lo : hi) = mid;
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  cuts.push_back(mu.t_max());
  std::sort(cuts.begin(), cuts.end());
  const double half_space =
      integrate_gk_segmented(reduced, cuts, 1e-13 * std::max(1.0, mu.total())).value;

  return left + (half_space - inside);
}

IsoReport isoperimetric_check(const Polygon& A, const WeightProfile& w,
                              const PotentialSplit& V, const ReducedMeasure& mu,
                              bool hypotheses_met) {
  IsoReport rep;
  rep.hypotheses_met = hypotheses_met;
  rep.mu_A = weighted_area(A, V);
  rep.t_A = mu.inverse(rep.mu_A);
  rep.perimeter = weighted_perimeter(A, w, V);
  rep.half_space_perimeter = half_space_perimeter(mu, w, rep.mu_A);
  rep.gap_bound = quantitative_gap(A, rep.t_A, w, V, mu);
  rep.calibration = weighted_strip_integral(
      A, V, A.bbox().x_lo, A.bbox().x_hi, [&](double x) { return drift_g(w, V, x); });
  const double tol = 1e-8 * (1.0 + rep.perimeter);
  rep.slack = rep.perimeter - rep.half_space_perimeter - std::max(0.0, rep.gap_bound);
  rep.holds = rep.slack >= -tol;
  return rep;
}

}  // namespace rsym
