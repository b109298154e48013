#include "rsym/fuzz.hpp"

#include <cmath>

namespace rsym {

namespace {

std::vector<MassFunction::Cell> random_cells(SplitMix64& rng, double mass_budget,
                                             const MassFunctionFuzz& opts) {
  const int n = static_cast<int>(rng.uniform_int(opts.min_cells, opts.max_cells));
  std::vector<MassFunction::Cell> cells(n);
  double sum = 0.0;
  for (auto& c : cells) {
    c.mass = rng.uniform(0.1, 1.0);
    sum += c.mass;
  }
  const double scale =
      rng.uniform(opts.fraction_lo, opts.fraction_hi) * mass_budget / sum;
  for (auto& c : cells) {
    c.mass *= scale;
    c.value = rng.uniform(0.0, opts.value_hi);
    if (rng.uniform() < opts.tie_probability)
      c.value = std::round(c.value * 10.0) / 10.0;
  }
  return cells;
}

}  // namespace

MassFunction random_mass_function(SplitMix64& rng, double mass_budget,
                                  const MassFunctionFuzz& opts) {
  return MassFunction(random_cells(rng, mass_budget, opts));
}

std::pair<MassFunction, MassFunction> random_mass_function_pair(
    SplitMix64& rng, double mass_budget, const MassFunctionFuzz& opts) {
  auto cells = random_cells(rng, mass_budget, opts);
  auto other = cells;
  for (auto& c : other) {
    c.value = rng.uniform(0.0, opts.value_hi);
    if (rng.uniform() < opts.tie_probability)
      c.value = std::round(c.value * 10.0) / 10.0;
  }
  return {MassFunction(std::move(cells)), MassFunction(std::move(other))};
}

}  // namespace rsym
