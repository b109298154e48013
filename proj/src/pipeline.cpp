#include "rsym/pipeline.hpp"

#include <cmath>

#include "rsym/elliptic.hpp"

namespace rsym {

ComparisonRun run_comparison(const RunConfig& cfg, const ReducedMeasure& mu) {
  const WeightProfile& w = cfg.weight;
  const PotentialSplit& V = cfg.potential;

  auto dom = cfg.domain.build(cfg.hc);
  const auto op = DiffusionOperator::assemble(dom, w, V);
  auto f = GridField::sample(dom, [&](double x, double y) { return cfg.source(x, y); });

  SolveStats stats;
  auto u = solve(op, f, V, {cfg.tolerances.solver, 100000}, &stats);

  const auto fmass = to_mass_function(f, V);
  auto vs = symmetrized_solution(fmass, fmass.total_mass(), w, mu);

  ComparisonRun run{std::move(u),
                    std::move(f),
                    std::move(vs),
                    {},
                    {},
                    {},
                    {},
                    stats,
                    cfg.hc,
                    cfg.tolerances.comparison_slope * cfg.hc,
                    false,
                    false,
                    cfg.source.strictly_positive()};

  run.pointwise = compare_pointwise(run.u, run.vs, V);
  run.qnorms = compare_qnorm(run.u, run.vs, V, cfg.qlist);
  run.diagnostics = estimate_chain_check(run.u, run.f, run.vs, w, V, 32);

  const double t_hi = cfg.condition_t_hi.value_or(mu.t_max());
  run.drift = validate_drift_condition(
      w, V, uniform_grid(cfg.condition_t_lo, t_hi, cfg.condition_n));

  run.pointwise_pass = run.pointwise.max_violation <= run.tolerance;
  run.qnorm_pass = true;
  for (const auto& q : run.qnorms)
    if (q.lhs > q.rhs * (1.0 + cfg.tolerances.qnorm_rel)) run.qnorm_pass = false;
  return run;
}

}  // namespace rsym
