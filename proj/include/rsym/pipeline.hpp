#pragma once

#include "rsym/config.hpp"
#include "rsym/talenti.hpp"

namespace rsym {

// One full comparison run: solve on E, symmetrize the data, compare. The
// measure must outlive the result (the profile keeps a reference to it).
struct ComparisonRun {
  GridField u;
  GridField f;
  SymmetrizedSolution vs;
  PointwiseComparison pointwise;
  std::vector<QnormComparison> qnorms;
  DiagnosticReport diagnostics;
  DriftConditionReport drift;
  SolveStats solve_stats;
  double hc = 0.0;
  double tolerance = 0.0;  // pointwise: comparison_slope * hc
  bool pointwise_pass = false;
  bool qnorm_pass = false;
  bool source_strictly_positive = false;

  bool pass() const { return pointwise_pass && qnorm_pass; }
};

ComparisonRun run_comparison(const RunConfig& cfg, const ReducedMeasure& mu);

}  // namespace rsym
