#include "rsym/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rsym {

double SourceSpec::operator()(double x, double y) const {
  switch (family) {
    case Family::kConstant:
      return amplitude;
    case Family::kGaussianBump: {
      const double dx = x - center_x;
      const double dy = y - center_y;
      return amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
    case Family::kPolyGaussian: {
      const double dx = x - center_x;
      const double dy = y - center_y;
      return amplitude * std::pow(1.0 + x, degree) *
             std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
  }
  return 0.0;
}

bool SourceSpec::strictly_positive() const { return amplitude > 0.0; }

DomainPtr DomainSpec::build(double hc) const {
  if (is_mask) return RectilinearDomain::from_mask(x1_lo, x2_lo, hc, nx, ny, mask);
  return RectilinearDomain::union_of_rects(rects, hc);
}

namespace {

WeightProfile parse_weight(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "constant") return WeightProfile::constant(j.value("kappa", 1.0));
  if (family == "exponential") return WeightProfile::exponential(j.at("a").get<double>());
  if (family == "shifted_exponential")
    return WeightProfile::shifted_exponential(j.at("a").get<double>(),
                                              j.at("b").get<double>());
  if (family == "power")
    return WeightProfile::power(j.at("a").get<double>(), j.value("delta", 1e-3));
  if (family == "tabulated")
    return WeightProfile::tabulated(j.at("breakpoints").get<std::vector<double>>(),
                                    j.at("values").get<std::vector<double>>());
  throw std::invalid_argument("config: unknown weight family '" + family + "'");
}

AxialPotential parse_axial(const std::string& s) {
  if (s == "zero") return AxialPotential::kZero;
  if (s == "gaussian") return AxialPotential::kGaussian;
  if (s == "signed_parabola") return AxialPotential::kSignedParabola;
  if (s == "linear") return AxialPotential::kLinear;
  throw std::invalid_argument("config: unknown axial potential '" + s + "'");
}

CrossPotential parse_cross(const std::string& s) {
  if (s == "zero") return CrossPotential::kZero;
  if (s == "gaussian") return CrossPotential::kGaussian;
  throw std::invalid_argument("config: unknown cross potential '" + s + "'");
}

SourceSpec parse_source(const nlohmann::json& j) {
  SourceSpec s;
  const std::string family = j.value("family", "constant");
  if (family == "constant") {
    s.family = SourceSpec::Family::kConstant;
    s.amplitude = j.value("value", 1.0);
  } else if (family == "gaussian_bump") {
    s.family = SourceSpec::Family::kGaussianBump;
    s.amplitude = j.value("amplitude", 1.0);
    const auto c = j.at("center").get<std::array<double, 2>>();
    s.center_x = c[0];
    s.center_y = c[1];
    s.sigma = j.at("sigma").get<double>();
  } else if (family == "poly_gaussian") {
    s.family = SourceSpec::Family::kPolyGaussian;
    s.amplitude = j.value("amplitude", 1.0);
    const auto c = j.at("center").get<std::array<double, 2>>();
    s.center_x = c[0];
    s.center_y = c[1];
    s.sigma = j.at("sigma").get<double>();
    s.degree = j.value("degree", 2);
  } else {
    throw std::invalid_argument("config: unknown source family '" + family + "'");
  }
  if (s.amplitude < 0.0)
    throw std::invalid_argument("config: source amplitude must be >= 0");
  return s;
}

RectilinearDomain::Rect parse_rect(const nlohmann::json& j) {
  const auto x1 = j.at("x1").get<std::array<double, 2>>();
  const auto x2 = j.at("x2").get<std::array<double, 2>>();
  return {x1[0], x1[1], x2[0], x2[1]};
}

DomainSpec parse_domain(const nlohmann::json& j) {
  DomainSpec d;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rect") {
    d.rects.push_back(parse_rect(j));
  } else if (kind == "slab") {
    const auto x1 = j.at("x1").get<std::array<double, 2>>();
    const double hw = j.at("half_width").get<double>();
    d.rects.push_back({x1[0], x1[1], -hw, hw});
  } else if (kind == "union" || kind == "lshape") {
    for (const auto& r : j.at("rects")) d.rects.push_back(parse_rect(r));
    if (d.rects.empty()) throw std::invalid_argument("config: empty rectangle union");
  } else if (kind == "mask") {
    d.is_mask = true;
    d.x1_lo = j.at("x1_lo").get<double>();
    d.x2_lo = j.at("x2_lo").get<double>();
    const auto rows = j.at("rows").get<std::vector<std::string>>();
    d.ny = static_cast<int>(rows.size());
    if (d.ny == 0) throw std::invalid_argument("config: empty mask");
    d.nx = static_cast<int>(rows[0].size());
    d.mask.assign(static_cast<std::size_t>(d.nx) * d.ny, 0);
    for (int r = 0; r < d.ny; ++r) {
      if (static_cast<int>(rows[r].size()) != d.nx)
        throw std::invalid_argument("config: ragged mask rows");
      // rows are listed top-to-bottom; row 0 is the highest x2
      const int jrow = d.ny - 1 - r;
      for (int i = 0; i < d.nx; ++i)
        d.mask[static_cast<std::size_t>(jrow) * d.nx + i] = rows[r][i] == '1' ? 1 : 0;
    }
  } else {
    throw std::invalid_argument("config: unknown domain kind '" + kind + "'");
  }
  return d;
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  c.dimension = j.value("dimension", 2);
  if (c.dimension < 1) throw std::invalid_argument("config: dimension must be >= 1");
  c.weight = parse_weight(j.at("weight"));
  const auto& pot = j.at("potential");
  const auto& ax = pot.at("axial");
  const auto& cr = pot.at("cross");
  c.potential = PotentialSplit(parse_axial(ax.at("family").get<std::string>()),
                               ax.value("c", 1.0),
                               parse_cross(cr.at("family").get<std::string>()),
                               cr.value("c", 1.0), c.dimension);
  if (j.contains("domain")) c.domain = parse_domain(j.at("domain"));
  if (j.contains("grid")) c.hc = j.at("grid").at("hc").get<double>();
  if (!(c.hc > 0)) throw std::invalid_argument("config: grid.hc must be > 0");
  if (j.contains("source")) c.source = parse_source(j.at("source"));
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    c.tolerances.quadrature = t.value("quadrature", c.tolerances.quadrature);
    c.tolerances.solver = t.value("solver", c.tolerances.solver);
    c.tolerances.comparison_slope =
        t.value("comparison_slope", c.tolerances.comparison_slope);
    c.tolerances.qnorm_rel = t.value("qnorm_rel", c.tolerances.qnorm_rel);
  }
  c.eps_tail_rel = j.value("eps_tail_rel", 1e-12);
  if (!(c.eps_tail_rel > 0) || c.eps_tail_rel > 1e-6)
    throw std::invalid_argument("config: eps_tail_rel must lie in (0, 1e-6]");
  c.seed = j.value("seed", std::uint64_t{42});
  c.trials = j.value("trials", 500);
  if (c.trials < 0) throw std::invalid_argument("config: trials must be >= 0");
  c.threads = j.value("threads", 0);
  if (j.contains("qlist")) c.qlist = j.at("qlist").get<std::vector<double>>();
  for (double q : c.qlist)
    if (!(q > 0.0) || q > 2.0)
      throw std::invalid_argument("config: qlist entries must lie in (0, 2]");
  if (j.contains("condition_grid")) {
    const auto& g = j.at("condition_grid");
    c.condition_t_lo = g.value("t_lo", 0.0);
    if (g.contains("t_hi") && !g.at("t_hi").is_null())
      c.condition_t_hi = g.at("t_hi").get<double>();
    c.condition_n = g.value("n", 4096);
    if (c.condition_n < 2)
      throw std::invalid_argument("config: condition grid needs >= 2 points");
  }
  c.canonical_json = j.dump();  // nlohmann keeps object keys sorted
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : c.canonical_json) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::vector<std::string>& interpretation_flags() {
  static const std::vector<std::string> flags{
      "acca-integrand=density",
      "v-orientation=nondecreasing",
      "symlc-middle=min-capped",
  };
  return flags;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace rsym
