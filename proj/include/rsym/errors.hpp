#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rsym {

// Measure of the ambient half-space is not finite for the given potential.
class MeasureNotFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent geometric input (polygon, mask, clipping).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched discrete decompositions (cells, masses, domains).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative solve failed to reach the requested tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> residual_history)
      : std::runtime_error(what), residuals(std::move(residual_history)) {}
  std::vector<double> residuals;
};

// The symmetrized profile diverges before the tabulation range is exhausted;
// carries whatever part was tabulated.
class UnboundedSolutionError : public std::runtime_error {
 public:
  UnboundedSolutionError(const std::string& what, std::vector<double> z,
                         std::vector<double> v)
      : std::runtime_error(what), partial_z(std::move(z)), partial_v(std::move(v)) {}
  std::vector<double> partial_z, partial_v;
};

}  // namespace rsym
