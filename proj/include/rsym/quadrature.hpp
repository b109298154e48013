#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rsym {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated error estimate
};

// One resolved panel of an adaptive Simpson pass, in left-to-right order.
struct QuadPanel {
  double a = 0.0;
  double b = 0.0;
  double integral = 0.0;
};

namespace detail {

template <class F>
double simpson(const F& f, double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
void simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                 double whole, double abs_tol, double max_width, int depth,
                 int max_depth, std::vector<QuadPanel>* panels, QuadResult* acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = (left + right - whole) / 15.0;
  const bool width_ok = (b - a) <= max_width;
  if ((std::abs(err) <= abs_tol && width_ok) || depth >= max_depth) {
    const double value = left + right + err;
    acc->value += value;
    acc->error += std::abs(err);
    if (panels) panels->push_back({a, b, value});
    return;
  }
  simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * abs_tol, max_width, depth + 1,
              max_depth, panels, acc);
  simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * abs_tol, max_width, depth + 1,
              max_depth, panels, acc);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction. abs_tol is the absolute
// tolerance for the whole interval; panels, when requested, come back in
// ascending order and tile [a,b] exactly.
template <class F>
QuadResult adaptive_simpson(const F& f, double a, double b, double abs_tol,
                            int max_depth = 60,
                            double max_width = std::numeric_limits<double>::infinity(),
                            std::vector<QuadPanel>* panels = nullptr) {
  QuadResult acc;
  if (a == b) return acc;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  detail::simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_width, 0, max_depth,
                      panels, &acc);
  return acc;
}

// Gauss 7 / Kronrod 15 pair on [a,b].
template <class F>
double gauss_kronrod_15(const F& f, double a, double b, double* err) {
  static const double nodes[8] = {
      0.000000000000000, 0.405845151377397, 0.741531185599394, 0.949107912342759,
      0.207784955007898, 0.586087235467691, 0.864864423359769, 0.991455371120813};
  static const double wg[8] = {0.417959183673469, 0.381830050505119,
                               0.279705391489277, 0.129484966168870, 0, 0, 0, 0};
  static const double wk[8] = {0.209482141084728, 0.190350578064785,
                               0.140653259715525, 0.063092092629979,
                               0.204432940075298, 0.169004726639267,
                               0.104790010322250, 0.022935322010529};
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  const double f0 = f(c);
  double g7 = wg[0] * f0;
  double k15 = wk[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = hw * nodes[i];
    const double fi = f(c + dx) + f(c - dx);
    g7 += wg[i] * fi;
    k15 += wk[i] * fi;
  }
  g7 *= hw;
  k15 *= hw;
  if (err) *err = std::abs(k15 - g7);
  return k15;
}

// Adaptive bisection driven by the G7/K15 error estimate.
template <class F>
QuadResult integrate_gk(const F& f, double a, double b, double abs_tol,
                        int max_depth = 40) {
  struct Seg {
    double a, b, tol;
    int depth;
  };
  QuadResult acc;
  if (a == b) return acc;
  std::vector<Seg> stack{{a, b, abs_tol, 0}};
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    double err = 0.0;
    const double v = gauss_kronrod_15(f, s.a, s.b, &err);
    if (err <= s.tol || s.depth >= max_depth) {
      acc.value += v;
      acc.error += err;
      continue;
    }
    const double m = 0.5 * (s.a + s.b);
    stack.push_back({s.a, m, 0.5 * s.tol, s.depth + 1});
    stack.push_back({m, s.b, 0.5 * s.tol, s.depth + 1});
  }
  return acc;
}

// Integrates over [pts.front(), pts.back()] splitting at the interior points
// (integrand kinks, vertex abscissae and the like).
template <class F>
QuadResult integrate_gk_segmented(const F& f, std::span<const double> pts,
                                  double abs_tol_per_segment, int max_depth = 40) {
  if (pts.size() < 2) throw std::invalid_argument("integrate_gk_segmented: need >= 2 points");
  QuadResult acc;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    const QuadResult r = integrate_gk(f, pts[i], pts[i + 1], abs_tol_per_segment, max_depth);
    acc.value += r.value;
    acc.error += r.error;
  }
  return acc;
}

}  // namespace rsym
