#pragma once

#include <utility>

#include "rsym/rearrange.hpp"
#include "rsym/rng.hpp"

namespace rsym {

struct MassFunctionFuzz {
  int min_cells = 1;
  int max_cells = 60;
  double value_hi = 5.0;
  double fraction_lo = 0.2;   // of the mass budget
  double fraction_hi = 0.95;
  double tie_probability = 0.3;
};

// Random cells with masses summing to a random fraction of the budget.
// Rounded values inject ties so the merge path is exercised.
MassFunction random_mass_function(SplitMix64& rng, double mass_budget,
                                  const MassFunctionFuzz& opts);
inline MassFunction random_mass_function(SplitMix64& rng, double mass_budget) {
  return random_mass_function(rng, mass_budget, MassFunctionFuzz{});
}

// Pair on one shared cell decomposition (same masses, independent values).
std::pair<MassFunction, MassFunction> random_mass_function_pair(
    SplitMix64& rng, double mass_budget, const MassFunctionFuzz& opts);
inline std::pair<MassFunction, MassFunction> random_mass_function_pair(
    SplitMix64& rng, double mass_budget) {
  return random_mass_function_pair(rng, mass_budget, MassFunctionFuzz{});
}

}  // namespace rsym
