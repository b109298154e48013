#include "rsym/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rsym/errors.hpp"
#include "rsym/quadrature.hpp"

namespace rsym {

StepProfile::StepProfile(std::vector<double> breakpoints, std::vector<double> values,
                         Monotonicity tag)
    : b_(std::move(breakpoints)), v_(std::move(values)), tag_(tag) {
  if (b_.size() != v_.size() + 1 || v_.empty())
    throw std::invalid_argument("step profile: need k+1 breakpoints for k values");
  for (std::size_t i = 0; i + 1 < b_.size(); ++i)
    if (!(b_[i] < b_[i + 1]))
      throw std::invalid_argument("step profile: breakpoints must be strictly increasing");
  if (tag_ == Monotonicity::kNonincreasing)
    for (std::size_t i = 0; i + 1 < v_.size(); ++i)
      if (v_[i] < v_[i + 1]) throw std::invalid_argument("step profile: not nonincreasing");
  if (tag_ == Monotonicity::kNondecreasing)
    for (std::size_t i = 0; i + 1 < v_.size(); ++i)
      if (v_[i] > v_[i + 1]) throw std::invalid_argument("step profile: not nondecreasing");
  prefix_.resize(b_.size());
  prefix_[0] = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    prefix_[i + 1] = prefix_[i] + v_[i] * (b_[i + 1] - b_[i]);
}

double StepProfile::value(double s) const {
  if (s <= b_.front()) return v_.front();
  if (s > b_.back())
    return tag_ == Monotonicity::kNonincreasing ? 0.0 : v_.back();
  // cell index j with s in (b_j, b_{j+1}]
  const auto it = std::lower_bound(b_.begin(), b_.end(), s);
  std::size_t j = static_cast<std::size_t>(it - b_.begin());
  if (j > 0) --j;
  return v_[j];
}

double StepProfile::integral_to(double s) const {
  if (s <= b_.front()) return 0.0;
  if (s >= b_.back()) return prefix_.back();
  const auto it = std::lower_bound(b_.begin(), b_.end(), s);
  std::size_t j = static_cast<std::size_t>(it - b_.begin());
  if (j > 0) --j;
  return prefix_[j] + v_[j] * (s - b_[j]);
}

MassFunction::MassFunction(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("mass function: no cells");
  for (const Cell& c : cells_) {
    if (!(c.mass > 0.0)) throw std::invalid_argument("mass function: masses must be > 0");
    if (c.value < 0.0 || !std::isfinite(c.value))
      throw std::invalid_argument("mass function: values must be finite and >= 0");
    total_ += c.mass;
  }
  if (!std::isfinite(total_)) throw std::invalid_argument("mass function: infinite mass");
}

double distribution(const MassFunction& f, double t) {
  if (t < 0.0) throw std::invalid_argument("distribution: threshold must be >= 0");
  double m = 0.0;
  for (const auto& c : f.cells())
    if (c.value > t) m += c.mass;
  return m;
}

StepProfile decreasing_rearrangement(const MassFunction& f) {
  std::vector<MassFunction::Cell> cells = f.cells();
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.value > b.value; });
  std::vector<double> b{0.0}, v;
  for (const auto& c : cells) {
    if (!v.empty() && v.back() == c.value) {
      b.back() += c.mass;  // merge ties
    } else {
      v.push_back(c.value);
      b.push_back(b.back() + c.mass);
    }
  }
  return StepProfile(std::move(b), std::move(v), Monotonicity::kNonincreasing);
}

RightProfile::RightProfile(StepProfile fstar, const ReducedMeasure* mu)
    : fstar_(std::move(fstar)), mu_(mu) {
  if (fstar_.support_end() > mu_->total() * (1.0 + 1e-8))
    throw ConsistencyError("right rearrangement: mass exceeds the measure total");
}

double RightProfile::value(double z) const { return fstar_.value(mu_->phi(z)); }

RightProfile right_rearrangement(const MassFunction& f, const ReducedMeasure& mu) {
  return RightProfile(decreasing_rearrangement(f), &mu);
}

LayerCake layer_cake_check(const MassFunction& f, const ReducedMeasure& mu, double t) {
  if (t < 0.0) throw std::invalid_argument("layer cake: cut must be >= 0");
  const StepProfile fstar = decreasing_rearrangement(f);
  const double phi_t = mu.phi(t);

  LayerCake out{};
  out.lhs = fstar.integral_to(phi_t);

  // Exact level-side sum: mu_f is constant between consecutive distinct
  // values; on [v_{j+1}, v_j) it equals the cumulative mass b_{j+1}.
  const auto& b = fstar.breakpoints();
  const auto& v = fstar.values();
  double mid = 0.0;
  double upper = v.front();  // top value
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double lower = (j + 1 < v.size()) ? v[j + 1] : 0.0;
    mid += std::min(phi_t, b[j + 1]) * (upper - lower);
    upper = lower;
  }
  out.mid = mid;

  // Spatial route: integrate fstar(phi(z)) lambda(z) over (t, t_max],
  // splitting at the abscissae where the profile steps.
  std::vector<double> cuts{t};
  for (std::size_t j = 1; j + 1 < b.size(); ++j) {
    const double s = b[j];
    if (s > mu.eps_tail() && s < phi_t) cuts.push_back(mu.inverse(s));
  }
  cuts.push_back(mu.t_max());
  std::sort(cuts.begin(), cuts.end());
  const double tol = 1e-10 * std::max(1.0, out.lhs) / std::max<std::size_t>(cuts.size(), 1);
  out.rhs = integrate_gk_segmented(
                [&](double z) { return fstar.value(mu.phi(z)) * mu.lambda(z); },
                cuts, tol)
                .value;
  return out;
}

namespace {

void require_same_decomposition(const MassFunction& f, const MassFunction& g) {
  if (f.size() != g.size())
    throw ConsistencyError("hardy: cell decompositions differ in size");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.cells()[i].mass != g.cells()[i].mass)
      throw ConsistencyError("hardy: cell masses differ");
}

}  // namespace

InequalityPair hardy_littlewood(const MassFunction& f, const MassFunction& g) {
  require_same_decomposition(f, g);
  InequalityPair out{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i)
    out.lhs += f.cells()[i].value * g.cells()[i].value * f.cells()[i].mass;

  // ∫ fstar gstar over merged breakpoints; both profiles are constant on
  // every merged cell, so the sum is exact.
  const StepProfile fs = decreasing_rearrangement(f);
  const StepProfile gs = decreasing_rearrangement(g);
  const auto& fb = fs.breakpoints();
  const auto& gb = gs.breakpoints();
  std::size_t i = 0, j = 0;
  double lo = 0.0;
  const double end = std::min(fb.back(), gb.back());
  while (lo < end) {
    const double hi = std::min(fb[i + 1], gb[j + 1]);
    out.rhs += fs.values()[i] * gs.values()[j] * (hi - lo);
    if (fb[i + 1] <= hi && i + 2 < fb.size()) ++i;
    if (gb[j + 1] <= hi && j + 2 < gb.size()) ++j;
    lo = hi;
  }
  return out;
}

InequalityPair hardy_set_bound(const MassFunction& f,
                               std::span<const std::size_t> subset) {
  InequalityPair out{0.0, 0.0};
  double subset_mass = 0.0;
  for (std::size_t idx : subset) {
    if (idx >= f.size()) throw std::out_of_range("hardy_set_bound: cell index");
    out.lhs += f.cells()[idx].value * f.cells()[idx].mass;
    subset_mass += f.cells()[idx].mass;
  }
  out.rhs = decreasing_rearrangement(f).integral_to(subset_mass);
  return out;
}

}  // namespace rsym
