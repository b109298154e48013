#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsym/measure.hpp"

namespace rsym {

enum class Monotonicity { kNone, kNonincreasing, kNondecreasing };

// Step function on (breakpoints.front(), breakpoints.back()], constant on
// each half-open cell (b_{j-1}, b_j]. Houses decreasing rearrangements and
// related 1-D profiles in the mass variable.
class StepProfile {
 public:
  StepProfile(std::vector<double> breakpoints, std::vector<double> values,
              Monotonicity tag);

  // value on the cell containing s; clamps below the first breakpoint, zero
  // beyond the last for nonincreasing profiles, clamped otherwise
  double value(double s) const;

  // exact ∫_{b0}^{min(s, bk)} of the step function, 0 for s <= b0
  double integral_to(double s) const;

  const std::vector<double>& breakpoints() const { return b_; }
  const std::vector<double>& values() const { return v_; }
  Monotonicity tag() const { return tag_; }
  std::size_t steps() const { return v_.size(); }
  double support_end() const { return b_.back(); }

 private:
  std::vector<double> b_;       // size k+1, strictly increasing
  std::vector<double> v_;       // size k
  std::vector<double> prefix_;  // size k+1, prefix integrals
  Monotonicity tag_;
};

// Nonnegative function paired with cell masses: the single discrete substrate
// every rearrangement identity is computed on.
class MassFunction {
 public:
  struct Cell {
    double value;
    double mass;
  };

  explicit MassFunction(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  double total_mass() const { return total_; }
  std::size_t size() const { return cells_.size(); }

 private:
  std::vector<Cell> cells_;
  double total_ = 0.0;
};

// mu_f(t) = sum of masses of cells with value > t; right-continuous and
// nonincreasing in t.
double distribution(const MassFunction& f, double t);

// Smallest nonincreasing profile equimeasurable with f, on (0, total mass].
// Cells with equal values are merged first.
StepProfile decreasing_rearrangement(const MassFunction& f);

// f composed through the tail-mass function: nondecreasing profile in x1,
// constant on slices. Requires f's mass to fit in the measure.
class RightProfile {
 public:
  RightProfile(StepProfile fstar, const ReducedMeasure* mu);

  double value(double z) const;
  const StepProfile& mass_profile() const { return fstar_; }
  const ReducedMeasure& measure() const { return *mu_; }

 private:
  StepProfile fstar_;
  const ReducedMeasure* mu_;
};

RightProfile right_rearrangement(const MassFunction& f, const ReducedMeasure& mu);

struct LayerCake {
  double lhs;  // mass-side integral of the decreasing rearrangement
  double mid;  // level-side integral of the capped distribution function
  double rhs;  // spatial integral of the right rearrangement beyond the cut
};

// Three independent routes to the same quantity for the cut {x1 > t}:
//   lhs = ∫_0^{Phi(t)} fstar,
//   mid = ∫_0^inf min(Phi(t), mu_f(s)) ds (exact sum over value steps),
//   rhs = ∫_{x1 > t} f* dmu (spatial quadrature).
LayerCake layer_cake_check(const MassFunction& f, const ReducedMeasure& mu, double t);

struct InequalityPair {
  double lhs;
  double rhs;
};

// ∫ f g dmu <= ∫ f* g* dmu, reduced to exact sums: lhs over shared cells,
// rhs as the 1-D integral of the product of decreasing rearrangements.
// f and g must share one cell decomposition (identical masses).
InequalityPair hardy_littlewood(const MassFunction& f, const MassFunction& g);

// ∫_A f dmu <= ∫_0^{mu(A)} fstar, A given as cell indices into f.
InequalityPair hardy_set_bound(const MassFunction& f, std::span<const std::size_t> subset);

}  // namespace rsym
