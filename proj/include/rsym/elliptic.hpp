#pragma once

#include <array>
#include <span>
#include <vector>

#include "rsym/grid.hpp"
#include "rsym/rearrange.hpp"
#include "rsym/weights.hpp"

namespace rsym {

// Symmetric positive definite five-point operator for
// -div(w^2 e^V grad u) with the coefficient evaluated at face midpoints and
// Dirichlet rows eliminated. Rows are scaled by hc^2, so the quadratic form
// <Au, u> approximates the energy ∫ |grad u|^2 w^2 e^V directly and the
// matching right side is f e^V hc^2 per node.
class DiffusionOperator {
 public:
  static DiffusionOperator assemble(DomainPtr dom, const WeightProfile& w,
                                    const PotentialSplit& V);

  void apply(std::span<const double> x, std::span<double> y) const;
  const std::vector<double>& diagonal() const { return diag_; }
  const RectilinearDomain& domain() const { return *dom_; }
  DomainPtr domain_ptr() const { return dom_; }
  int size() const { return dom_->node_count(); }

  // face coefficients of one node, order west/east/south/north
  std::array<double, 4> face_coefficients(int k) const {
    return {cw_[k], ce_[k], cs_[k], cn_[k]};
  }

 private:
  explicit DiffusionOperator(DomainPtr dom) : dom_(std::move(dom)) {}
  DomainPtr dom_;
  std::vector<double> cw_, ce_, cs_, cn_, diag_;
  std::vector<int> west_, east_, south_, north_;  // neighbor ids, -1 = boundary
};

struct SolveOptions {
  double rel_tol = 1e-10;  // preconditioned residual, relative to the data
  int max_iterations = 100000;
};

struct SolveStats {
  int iterations = 0;
  double rel_residual = 0.0;
};

// Right side f e^V hc^2 sampled at the nodes, then diagonally preconditioned
// conjugate gradients. Throws SolverError (with the residual history) when
// the tolerance is not reached.
GridField solve(const DiffusionOperator& op, const GridField& f,
                const PotentialSplit& V, const SolveOptions& opts = {},
                SolveStats* stats = nullptr);

// ∫_E |grad u|^q w^q dmu with cell-centered gradients (each direction is the
// mean of the two face differences) and midpoint cell masses e^V hc^2.
double gradient_qnorm(const GridField& u, const WeightProfile& w,
                      const PotentialSplit& V, double q);

// Discrete bridge to the rearrangement machinery: one cell per node with
// value |u| and mass e^V hc^2.
MassFunction to_mass_function(const GridField& u, const PotentialSplit& V);

}  // namespace rsym
