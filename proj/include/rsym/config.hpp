#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsym/grid.hpp"
#include "rsym/measure.hpp"
#include "rsym/weights.hpp"

namespace rsym {

struct Tolerances {
  double quadrature = 1e-12;
  double solver = 1e-10;
  // pointwise comparison tolerance is slope * hc; the slope was calibrated
  // once on the slab case and is frozen here
  double comparison_slope = 3.2;
  double qnorm_rel = 1e-2;
};

struct SourceSpec {
  enum class Family { kConstant, kGaussianBump, kPolyGaussian };
  Family family = Family::kConstant;
  double amplitude = 1.0;
  double center_x = 0.0, center_y = 0.0;
  double sigma = 1.0;
  int degree = 2;  // x1-power for the polynomial-times-gaussian family

  double operator()(double x, double y) const;
  bool strictly_positive() const;
};

struct DomainSpec {
  std::vector<RectilinearDomain::Rect> rects;  // union when several
  // explicit mask variant
  bool is_mask = false;
  double x1_lo = 0.0, x2_lo = 0.0;
  int nx = 0, ny = 0;
  std::vector<std::uint8_t> mask;

  DomainPtr build(double hc) const;
};

struct RunConfig {
  int dimension = 2;
  WeightProfile weight = WeightProfile::constant(1.0);
  PotentialSplit potential{AxialPotential::kGaussian, 1.0, CrossPotential::kGaussian,
                           1.0, 2};
  DomainSpec domain;
  double hc = 1.0 / 64.0;
  SourceSpec source;
  Tolerances tolerances;
  double eps_tail_rel = 1e-12;
  std::uint64_t seed = 42;
  int trials = 500;
  int threads = 0;  // 0 = hardware default
  std::vector<double> qlist{0.5, 1.0, 2.0};
  // drift-condition grid; t_hi defaults to the measure truncation abscissa
  double condition_t_lo = 0.0;
  std::optional<double> condition_t_hi;
  int condition_n = 4096;

  std::string canonical_json;  // dump the config hash is taken over

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
};

// FNV-1a over the canonical serialized config
std::string config_hash(const RunConfig& c);

// Flags naming the interpretation choices baked into the numbers; embedded
// in every JSON report.
const std::vector<std::string>& interpretation_flags();

// 17-significant-digit decimal, round-trippable
std::string format_double(double v);

}  // namespace rsym
