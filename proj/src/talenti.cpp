#include "rsym/talenti.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rsym/errors.hpp"
#include "rsym/quadrature.hpp"

namespace rsym {

namespace {

// abscissae of the profile steps inside (t_E, t_max), at most `cap` of them
std::vector<double> step_abscissae(const StepProfile& fstar, const ReducedMeasure& mu,
                                   double mu_E, std::size_t cap) {
  std::vector<double> zs;
  const auto& b = fstar.breakpoints();
  if (b.size() > cap + 2) return zs;
  for (std::size_t j = 1; j + 1 < b.size(); ++j) {
    if (b[j] > mu.eps_tail() * (1.0 + 1e-9) && b[j] < mu_E)
      zs.push_back(mu.inverse(b[j]));
  }
  return zs;
}

}  // namespace

SymmetrizedSolution symmetrized_solution(const MassFunction& f, double mu_E,
                                         const WeightProfile& w,
                                         const ReducedMeasure& mu, double tol_rel) {
  if (std::abs(f.total_mass() - mu_E) > 1e-2 * mu_E)
    throw ConsistencyError("symmetrized solution: source mass does not match mu(E)");

  SymmetrizedSolution vs(decreasing_rearrangement(f), w, &mu);
  vs.mass_ = mu_E;
  vs.t_level_ = mu.inverse(mu_E);

  const double sup_f = vs.fstar_.values().front();
  const double t_lo = vs.t_level_;
  const double t_hi = mu.t_max();
  if (!(t_lo < t_hi))
    throw std::range_error("symmetrized solution: mass leaves no room for the profile");

  std::vector<double> z = step_abscissae(vs.fstar_, mu, mu_E, 64);
  // base grid plus two refinement bands: the slope grows like the inverse
  // density toward the truncation abscissa and needs denser nodes there
  const int base = 2048;
  const double span = t_hi - t_lo;
  for (int k = 0; k <= base; ++k) z.push_back(t_lo + span * k / base);
  for (int k = 0; k <= base; ++k) z.push_back(t_hi - 0.3 * span * k / base);
  for (int k = 0; k <= base; ++k) z.push_back(t_hi - 0.05 * span * k / base);
  std::sort(z.begin(), z.end());
  const double min_gap = 1e-12 * (1.0 + t_hi);
  std::vector<double> nodes{t_lo};
  for (double zi : z)
    if (zi > nodes.back() + min_gap && zi <= t_hi) nodes.push_back(zi);
  if (nodes.back() < t_hi - min_gap) nodes.push_back(t_hi);

  const auto slope = [&](double zi) {
    return vs.fstar_.integral_to(mu.phi(zi)) /
           (w.value(zi) * w.value(zi) * mu.lambda(zi));
  };

  const double tol_abs = tol_rel * std::max(sup_f, 1e-300) * mu_E /
                         static_cast<double>(nodes.size());
  // A dense discrete profile has one tiny slope kink per cell; certifying the
  // absolute budget against thousands of kinks is pointless subdivision, so
  // those builds switch to a relative per-interval tolerance.
  const bool dense = vs.fstar_.steps() > 64;
  std::vector<double> values(nodes.size(), 0.0), slopes(nodes.size());
  slopes[0] = slope(nodes[0]);
  const auto bail = [&](std::size_t upto) {
    nodes.resize(upto);
    values.resize(upto);
    throw UnboundedSolutionError("unbounded symmetrized solution", std::move(nodes),
                                 std::move(values));
  };
  if (!std::isfinite(slopes[0])) bail(1);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    slopes[k + 1] = slope(nodes[k + 1]);
    const double coarse = std::abs(gauss_kronrod_15(slope, nodes[k], nodes[k + 1], nullptr));
    if (!std::isfinite(slopes[k + 1]) || !std::isfinite(coarse)) bail(k + 1);
    // the absolute budget applies where it is reachable; once the profile
    // grows past it (steep tails), a near-machine relative floor takes over
    const double tol =
        std::max(tol_abs, (dense ? 1e-9 : 5e-14) * coarse);
    const QuadResult inc = integrate_gk(slope, nodes[k], nodes[k + 1], tol, 24);
    values[k + 1] = values[k] + inc.value;
    vs.quad_error_ += inc.error;
    if (!std::isfinite(values[k + 1]) || values[k + 1] > 1e30) bail(k + 1);
  }
  vs.spline_ = CubicHermiteSpline(std::move(nodes), std::move(values), std::move(slopes));
  return vs;
}

double SymmetrizedSolution::value(double z) const {
  if (z <= t_level_) return 0.0;
  return spline_.value(z);
}

double SymmetrizedSolution::gradient(double z) const {
  if (z < t_level_ - 1e-12 * (1.0 + std::abs(t_level_)))
    throw std::domain_error("gradient of the symmetrized solution below its support");
  z = std::min(std::max(z, t_level_), mu_->t_max());
  return fstar_.integral_to(mu_->phi(z)) /
         (weight_.value(z) * weight_.value(z) * mu_->lambda(z));
}

double SymmetrizedSolution::flux(double z) const {
  return fstar_.integral_to(mu_->phi(z));
}

double SymmetrizedSolution::reduced_residual(double z) const {
  const double t_hi = mu_->t_max();
  if (!(z > t_level_) || !(z < t_hi))
    throw std::domain_error("reduced residual: need an interior abscissa");
  double h = 1e-5 * (1.0 + std::abs(z));
  h = std::min({h, 0.5 * (z - t_level_), 0.5 * (t_hi - z)});
  const double dflux = (flux(z + h) - flux(z - h)) / (2.0 * h);
  return dflux + fstar_.value(mu_->phi(z)) * mu_->lambda(z);
}

PointwiseComparison compare_pointwise(const GridField& u, const SymmetrizedSolution& vs,
                                      const PotentialSplit& V) {
  const ReducedMeasure& mu = vs.measure();
  const MassFunction fu = to_mass_function(u, V);
  if (std::abs(fu.total_mass() - vs.mass()) > 1e-8 * mu.total())
    throw ConsistencyError("pointwise comparison: solution and profile masses differ");

  PointwiseComparison out;
  out.t_level = vs.t_level();
  out.mass = vs.mass();

  const StepProfile ustar = decreasing_rearrangement(fu);
  const auto& b = ustar.breakpoints();
  const auto& vals = ustar.values();
  out.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < vals.size(); ++j) {
    const double m = b[j + 1];
    if (m < mu.eps_tail() * (1.0 + 1e-9)) continue;
    const double z = mu.inverse(m);  // left end of the step: v is smallest there
    const double viol = vals[j] - vs.value(z);
    if (viol > out.max_violation) {
      out.max_violation = viol;
      out.argmax_z = z;
    }
  }

  // distribution-level domination, sampled across the solution range
  const double umax = vals.front();
  const auto mu_ustar = [&](double t) {
    // cumulative mass of the steps with value > t
    std::size_t lo = 0, hi = vals.size();
    while (lo < hi) {  // first index with value <= t
      const std::size_t mid = (lo + hi) / 2;
      (vals[mid] > t ? lo : hi) = mid + (vals[mid] > t ? 1 : 0);
    }
    return b[lo];
  };
  const auto mu_v = [&](double t) {
    double lo = vs.t_level(), hi = mu.t_max();
    if (t >= vs.value(hi)) return mu.eps_tail();
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      (vs.value(mid) < t ? lo : hi) = mid;
    }
    return mu.phi(0.5 * (lo + hi));
  };
  out.max_distribution_excess = -std::numeric_limits<double>::infinity();
  for (int l = 0; l < 64; ++l) {
    const double t = umax * (l + 0.5) / 64.0;
    out.max_distribution_excess =
        std::max(out.max_distribution_excess, mu_ustar(t) - mu_v(t));
  }
  return out;
}

std::vector<QnormComparison> compare_qnorm(const GridField& u,
                                           const SymmetrizedSolution& vs,
                                           const PotentialSplit& V,
                                           std::span<const double> qs) {
  for (double q : qs)
    if (!(q > 0.0) || q > 2.0)
      throw std::invalid_argument("compare_qnorm: q must lie in (0, 2]");
  const ReducedMeasure& mu = vs.measure();
  const WeightProfile& w = vs.weight();

  std::vector<double> cuts = step_abscissae(vs.fstar(), mu, vs.mass(), 64);
  cuts.push_back(vs.t_level());
  cuts.push_back(mu.t_max());
  if (cuts.size() == 2)
    for (int k = 1; k < 64; ++k)
      cuts.push_back(vs.t_level() + (mu.t_max() - vs.t_level()) * k / 64.0);
  std::sort(cuts.begin(), cuts.end());

  std::vector<QnormComparison> out;
  for (double q : qs) {
    QnormComparison c;
    c.q = q;
    c.lhs = gradient_qnorm(u, w, V, q);
    const auto integrand = [&](double z) {
      return std::pow(vs.gradient(z) * w.value(z), q) * mu.lambda(z);
    };
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      coarse += std::abs(gauss_kronrod_15(integrand, cuts[i], cuts[i + 1], nullptr));
    c.rhs = integrate_gk_segmented(integrand, cuts, 1e-9 * std::max(1.0, coarse) /
                                                        static_cast<double>(cuts.size()))
                .value;
    c.slack = c.rhs - c.lhs;
    out.push_back(c);
  }
  return out;
}

DiagnosticReport estimate_chain_check(const GridField& u, const GridField& f,
                                      const SymmetrizedSolution& vs,
                                      const WeightProfile& w, const PotentialSplit& V,
                                      int n_levels) {
  if (&u.domain() != &f.domain())
    throw ConsistencyError("estimate chain: solution and source domains differ");
  const ReducedMeasure& mu = vs.measure();
  const RectilinearDomain& d = u.domain();
  const double hc = d.hc();
  const double h2 = hc * hc;

  struct NodeData {
    double value, energy, source;
  };
  std::vector<NodeData> nodes(d.node_count());
  double umax = 0.0;
  for (int k = 0; k < d.node_count(); ++k) {
    const auto [i, j] = d.node_coords(k);
    const double x = d.node_x(i);
    const double y = d.node_y(j);
    const double gx = (u.at(i + 1, j) - u.at(i - 1, j)) / (2.0 * hc);
    const double gy = (u.at(i, j + 1) - u.at(i, j - 1)) / (2.0 * hc);
    const double wv = w.value(x);
    const double mass = std::exp(V.value(x, y)) * h2;
    nodes[k] = {std::abs(u[k]), (gx * gx + gy * gy) * wv * wv * mass, f[k] * mass};
    umax = std::max(umax, nodes[k].value);
  }

  DiagnosticReport rep;
  rep.max_level = umax;
  if (umax == 0.0) return rep;

  std::sort(nodes.begin(), nodes.end(),
            [](const NodeData& a, const NodeData& b) { return a.value > b.value; });
  std::vector<double> prefix_energy(nodes.size() + 1, 0.0),
      prefix_source(nodes.size() + 1, 0.0);
  std::vector<double> sorted_values(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    prefix_energy[k + 1] = prefix_energy[k] + nodes[k].energy;
    prefix_source[k + 1] = prefix_source[k] + nodes[k].source;
    sorted_values[k] = nodes[k].value;
  }
  const MassFunction fu = to_mass_function(u, V);
  const StepProfile ustar = decreasing_rearrangement(fu);

  const auto above = [&](const std::vector<double>& prefix, double t) {
    // first sorted index with value <= t
    std::size_t lo = 0, hi = sorted_values.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      (sorted_values[mid] > t ? lo : hi) = mid + (sorted_values[mid] > t ? 1 : 0);
    }
    return prefix[lo];
  };
  const auto mu_u = [&](double t) {
    std::size_t lo = 0, hi = ustar.values().size();
    const auto& vals = ustar.values();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      (vals[mid] > t ? lo : hi) = mid + (vals[mid] > t ? 1 : 0);
    }
    return ustar.breakpoints()[lo];
  };

  const double dt = umax / n_levels;
  const auto mu_v = [&](double t) {
    double lo = vs.t_level(), hi = mu.t_max();
    if (t >= vs.value(hi)) return mu.eps_tail();
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      (vs.value(mid) < t ? lo : hi) = mid;
    }
    return mu.phi(0.5 * (lo + hi));
  };

  for (int l = 0; l < n_levels; ++l) {
    LevelDiagnostics lev;
    lev.t = umax * (l + 0.5) / n_levels;
    lev.energy_slope =
        -(above(prefix_energy, lev.t + 0.5 * dt) - above(prefix_energy, lev.t - 0.5 * dt)) /
        dt;
    lev.source_mass = above(prefix_source, lev.t);

    const double m = mu_u(lev.t);
    if (m > mu.eps_tail() * (1.0 + 1e-9) && m <= mu.total()) {
      const double tau = mu.inverse(m);
      lev.perim_profile = w.value(tau) * mu.lambda(tau);
      lev.perim_mass = half_space_perimeter(mu, w, m);
      const double dmu = (mu_u(lev.t + 0.5 * dt) - mu_u(lev.t - 0.5 * dt)) / dt;
      const double h_m = lev.perim_mass;
      lev.ode_u = vs.fstar().integral_to(m) * dmu / (h_m * h_m);
    }

    const double mv = mu_v(lev.t);
    if (mv > mu.eps_tail() * (1.0 + 1e-9) && lev.t < vs.value(mu.t_max())) {
      // mu_v is smooth, so a fine step is admissible here (unlike mu_u)
      const double dtv = 2e-5 * umax;
      const double dmv = (mu_v(lev.t + dtv) - mu_v(lev.t - dtv)) / (2.0 * dtv);
      const double h_v = half_space_perimeter(mu, w, mv);
      lev.ode_v = vs.fstar().integral_to(mv) * dmv / (h_v * h_v);
    }
    rep.levels.push_back(lev);
  }
  return rep;
}

}  // namespace rsym
