// Batch driver: every verification is a subcommand taking a JSON config and
// writing CSV or JSON. Exit codes: 0 pass, 1 usage or config error,
// 2 hypothesis or inequality failure, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rsym/config.hpp"
#include "rsym/elliptic.hpp"
#include "rsym/errors.hpp"
#include "rsym/fuzz.hpp"
#include "rsym/isoperimetry.hpp"
#include "rsym/parallel.hpp"
#include "rsym/pipeline.hpp"
#include "rsym/rearrange.hpp"

namespace {

using nlohmann::json;
using namespace rsym;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolated = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::string out_path;  // empty = stdout
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + opt.out_path + "'");
  out << text;
}

void note(const Options& opt, const std::string& message) {
  if (!opt.quiet) std::fprintf(stderr, "%s\n", message.c_str());
}

RunConfig load(const Options& opt) {
  RunConfig cfg = RunConfig::from_file(opt.config_path);
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.seed) cfg.seed = *opt.seed;
  return cfg;
}

json drift_to_json(const DriftConditionReport& rep) {
  json j{{"nonnegative", rep.nonnegative},
         {"nonincreasing", rep.nonincreasing},
         {"min_g", rep.min_g},
         {"max_g", rep.max_g},
         {"empirical_pass", rep.empirical_pass()}};
  if (rep.first_negative_t) j["first_negative_t"] = *rep.first_negative_t;
  if (rep.first_increase_t) j["first_increase_t"] = *rep.first_increase_t;
  if (rep.closed_form_available)
    j["closed_form"] = {{"criterion", rep.closed_form_criterion},
                        {"value", rep.closed_form_value},
                        {"satisfied", rep.closed_form_satisfied},
                        {"exact", rep.closed_form_exact}};
  return j;
}

json report_header(const RunConfig& cfg, const std::string& command) {
  return json{{"command", command},
              {"config_hash", config_hash(cfg)},
              {"interpretation_flags", interpretation_flags()}};
}

int cmd_check_weights(const Options& opt) {
  const RunConfig cfg = load(opt);
  double t_hi = cfg.condition_t_hi.value_or(0.0);
  bool finite_measure = true;
  if (!cfg.condition_t_hi) {
    try {
      t_hi = ReducedMeasure::build(cfg.potential, {cfg.eps_tail_rel, 1e-12, 2e-4}).t_max();
    } catch (const MeasureNotFiniteError&) {
      finite_measure = false;
      t_hi = 10.0;  // fallback working interval
    }
  }
  const auto grid = uniform_grid(cfg.condition_t_lo, t_hi, cfg.condition_n);
  const auto rep = validate_drift_condition(cfg.weight, cfg.potential, grid);

  json j = report_header(cfg, "check-weights");
  j["grid"] = {{"t_lo", cfg.condition_t_lo}, {"t_hi", t_hi}, {"n", cfg.condition_n}};
  j["finite_measure"] = finite_measure;
  j["drift_condition"] = drift_to_json(rep);
  j["verdict"] = rep.empirical_pass() ? "pass" : "violated";
  write_output(opt, j.dump(2) + "\n");
  return rep.empirical_pass() ? kExitOk : kExitViolated;
}

int cmd_isoperimetry(const Options& opt) {
  const RunConfig cfg = load(opt);
  const auto mu = ReducedMeasure::build(cfg.potential, {cfg.eps_tail_rel, 1e-12, 2e-4});
  const double t_hi = cfg.condition_t_hi.value_or(mu.t_max());
  const auto drift = validate_drift_condition(
      cfg.weight, cfg.potential, uniform_grid(cfg.condition_t_lo, t_hi, cfg.condition_n));

  std::string csv = "seed,n_vertices,mu_A,t_A,P_A,P_RA,gap_bound,slack,holds\n";
  if (!drift.empirical_pass()) {
    write_output(opt, csv);
    note(opt, "drift condition violated on the working grid; no trials run");
    return kExitViolated;
  }

  StarPolygonOptions star;
  star.min_x = cfg.weight.domain_min() > 0.0 ? cfg.weight.domain_min() + 1e-3 : 0.0;

  std::vector<std::string> rows(cfg.trials);
  std::atomic<bool> all_hold{true};
  parallel_for(cfg.trials, cfg.threads, [&](int k) {
    const std::uint64_t seed = SplitMix64::derive(cfg.seed, k);
    SplitMix64 rng(seed);
    const Polygon A = random_star_polygon(rng, star);
    const auto rep = isoperimetric_check(A, cfg.weight, cfg.potential, mu, true);
    if (!rep.holds) all_hold = false;
    std::string row = std::to_string(seed);
    row += "," + std::to_string(A.size());
    for (double v : {rep.mu_A, rep.t_A, rep.perimeter, rep.half_space_perimeter,
                     rep.gap_bound, rep.slack})
      row += "," + format_double(v);
    row += rep.holds ? ",1\n" : ",0\n";
    rows[k] = std::move(row);
  });
  for (const auto& r : rows) csv += r;
  write_output(opt, csv);
  return all_hold ? kExitOk : kExitViolated;
}

std::string grid_field_csv(const GridField& u) {
  const auto& d = u.domain();
  std::string csv = "x1,x2,u\n";
  for (int k = 0; k < d.node_count(); ++k) {
    const auto [i, j] = d.node_coords(k);
    csv += format_double(d.node_x(i));
    csv += ",";
    csv += format_double(d.node_y(j));
    csv += ",";
    csv += format_double(u[k]);
    csv += "\n";
  }
  return csv;
}

int cmd_solve(const Options& opt) {
  const RunConfig cfg = load(opt);
  ReducedMeasure::build(cfg.potential, {cfg.eps_tail_rel, 1e-12, 2e-4});  // finite-mass check
  const auto dom = cfg.domain.build(cfg.hc);
  const auto op = DiffusionOperator::assemble(dom, cfg.weight, cfg.potential);
  const auto f =
      GridField::sample(dom, [&](double x, double y) { return cfg.source(x, y); });
  SolveStats stats;
  const auto u = solve(op, f, cfg.potential, {cfg.tolerances.solver, 100000}, &stats);
  write_output(opt, grid_field_csv(u));
  note(opt, "solved " + std::to_string(op.size()) + " unknowns in " +
                std::to_string(stats.iterations) + " iterations");
  return kExitOk;
}

std::string profile_csv(const SymmetrizedSolution& vs) {
  const auto& spl = vs.tabulation();
  std::string csv = "z,v,dv_dz\n";
  for (std::size_t k = 0; k < spl.size(); ++k) {
    csv += format_double(spl.nodes()[k]);
    csv += ",";
    csv += format_double(spl.values()[k]);
    csv += ",";
    csv += format_double(spl.slopes()[k]);
    csv += "\n";
  }
  return csv;
}

int cmd_symmetrize(const Options& opt) {
  const RunConfig cfg = load(opt);
  const auto mu = ReducedMeasure::build(cfg.potential, {cfg.eps_tail_rel, 1e-12, 2e-4});
  const auto dom = cfg.domain.build(cfg.hc);
  const auto f =
      GridField::sample(dom, [&](double x, double y) { return cfg.source(x, y); });
  const auto fmass = to_mass_function(f, cfg.potential);
  try {
    const auto vs = symmetrized_solution(fmass, fmass.total_mass(), cfg.weight, mu);
    write_output(opt, profile_csv(vs));
  } catch (const UnboundedSolutionError& e) {
    std::string csv = "z,v,dv_dz\n";
    for (std::size_t k = 0; k < e.partial_z.size(); ++k)
      csv += format_double(e.partial_z[k]) + "," + format_double(e.partial_v[k]) + ",nan\n";
    write_output(opt, csv);
    note(opt, std::string(e.what()) + "; wrote the partial tabulation");
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_compare(const Options& opt) {
  const RunConfig cfg = load(opt);
  const auto mu = ReducedMeasure::build(cfg.potential, {cfg.eps_tail_rel, 1e-12, 2e-4});
  const auto run = run_comparison(cfg, mu);

  json j = report_header(cfg, "compare");
  j["hc"] = run.hc;
  j["t_E"] = run.pointwise.t_level;
  j["mu_E"] = run.pointwise.mass;
  j["max_violation"] = run.pointwise.max_violation;
  j["argmax_z"] = run.pointwise.argmax_z;
  j["max_distribution_excess"] = run.pointwise.max_distribution_excess;
  j["tolerance"] = run.tolerance;
  j["pointwise_pass"] = run.pointwise_pass;
  j["qnorm_pass"] = run.qnorm_pass;
  j["source_strictly_positive"] = run.source_strictly_positive;
  j["solver"] = {{"iterations", run.solve_stats.iterations},
                 {"rel_residual", run.solve_stats.rel_residual}};
  j["drift_condition"] = drift_to_json(run.drift);
  json qn = json::array();
  for (const auto& q : run.qnorms)
    qn.push_back({{"q", q.q}, {"lhs", q.lhs}, {"rhs", q.rhs}, {"slack", q.slack}});
  j["qnorms"] = qn;
  json levels = json::array();
  for (const auto& lev : run.diagnostics.levels)
    levels.push_back({{"t", lev.t},
                      {"energy_slope", lev.energy_slope},
                      {"source_mass", lev.source_mass},
                      {"perim_profile", lev.perim_profile},
                      {"perim_mass", lev.perim_mass},
                      {"ode_u", lev.ode_u},
                      {"ode_v", lev.ode_v}});
  j["diagnostics"] = {{"max_level", run.diagnostics.max_level}, {"levels", levels}};
  write_output(opt, j.dump(2) + "\n");
  return run.pass() ? kExitOk : kExitViolated;
}

int cmd_hardy(const Options& opt) {
  const RunConfig cfg = load(opt);
  const auto mu = ReducedMeasure::build(cfg.potential, {cfg.eps_tail_rel, 1e-12, 2e-4});
  std::vector<std::string> rows(cfg.trials);
  std::atomic<bool> all_hold{true};
  parallel_for(cfg.trials, cfg.threads, [&](int k) {
    const std::uint64_t seed = SplitMix64::derive(cfg.seed, k);
    SplitMix64 rng(seed);
    const auto [f, g] = random_mass_function_pair(rng, mu.total());
    const auto pair = hardy_littlewood(f, g);
    const bool holds = pair.lhs <= pair.rhs + 1e-10;
    if (!holds) all_hold = false;
    rows[k] = std::to_string(seed) + "," + std::to_string(f.size()) + "," +
              format_double(pair.lhs) + "," + format_double(pair.rhs) + "," +
              format_double(pair.rhs - pair.lhs) + (holds ? ",1\n" : ",0\n");
  });
  std::string csv = "seed,n_cells,lhs,rhs,slack,holds\n";
  for (const auto& r : rows) csv += r;
  write_output(opt, csv);
  return all_hold ? kExitOk : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification driver for weighted rearrangement and comparison checks"};
  app.require_subcommand(1);

  Options opt;
  int trials = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;

  const auto add_common = [&](CLI::App* sub, bool with_trials) {
    sub->add_option("--config", opt.config_path, "JSON config path")->required();
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_flag("--quiet", opt.quiet, "suppress progress notes");
    if (with_trials) {
      sub->add_option("--trials", trials, "number of trials (overrides config)");
      sub->add_option("--seed", seed, "root seed (overrides config)")
          ->each([&](const std::string&) { seed_set = true; });
    }
  };

  auto* sc_weights = app.add_subcommand("check-weights", "drift condition verdict");
  auto* sc_iso = app.add_subcommand("isoperimetry", "perimeter inequality trials");
  auto* sc_solve = app.add_subcommand("solve", "discrete Dirichlet solve");
  auto* sc_symm = app.add_subcommand("symmetrize", "explicit half-space profile");
  auto* sc_comp = app.add_subcommand("compare", "solution vs symmetrized profile");
  auto* sc_hardy = app.add_subcommand("hardy", "rearrangement inequality trials");
  add_common(sc_weights, false);
  add_common(sc_iso, true);
  add_common(sc_solve, false);
  add_common(sc_symm, false);
  add_common(sc_comp, false);
  add_common(sc_hardy, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (trials >= 0) opt.trials = trials;
  if (seed_set) opt.seed = seed;

  try {
    if (sc_weights->parsed()) return cmd_check_weights(opt);
    if (sc_iso->parsed()) return cmd_isoperimetry(opt);
    if (sc_solve->parsed()) return cmd_solve(opt);
    if (sc_symm->parsed()) return cmd_symmetrize(opt);
    if (sc_comp->parsed()) return cmd_compare(opt);
    if (sc_hardy->parsed()) return cmd_hardy(opt);
  } catch (const SolverError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const UnboundedSolutionError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
