#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rsym/elliptic.hpp"
#include "rsym/errors.hpp"
#include "rsym/isoperimetry.hpp"
#include "rsym/rng.hpp"

using namespace rsym;

namespace {

PotentialSplit flat_potential() {
  return PotentialSplit(AxialPotential::kZero, 1.0, CrossPotential::kZero, 1.0, 2);
}

PotentialSplit mixed_gaussian() {
  return PotentialSplit(AxialPotential::kGaussian, 1.0, CrossPotential::kGaussian, 1.0, 2);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("flat coefficients reproduce the five-point laplacian stencil") {
  const auto dom = RectilinearDomain::rect({0.0, 1.0, 0.0, 1.0}, 0.25);
  const auto op = DiffusionOperator::assemble(dom, WeightProfile::constant(1.0),
                                              flat_potential());
  // rows are scaled by hc^2: action is 4u - sum of neighbours
  std::vector<double> e(op.size(), 0.0), y(op.size());
  const int center = dom->node_id(1, 1);
  e[center] = 1.0;
  op.apply(e, y);
  CHECK(y[center] == doctest::Approx(4.0));
  CHECK(y[dom->node_id(0, 1)] == doctest::Approx(-1.0));
  CHECK(y[dom->node_id(2, 1)] == doctest::Approx(-1.0));
  CHECK(y[dom->node_id(1, 0)] == doctest::Approx(-1.0));
  CHECK(y[dom->node_id(1, 2)] == doctest::Approx(-1.0));
}

TEST_CASE("single-cell assembly by hand") {
  const double hc = 0.25;
  const auto dom = RectilinearDomain::from_mask(0.5, 0.0, hc, 1, 1, {1});
  const auto w = WeightProfile::exponential(2.0);
  const auto V = mixed_gaussian();
  const auto op = DiffusionOperator::assemble(dom, w, V);
  REQUIRE(op.size() == 1);

  const double x = 0.5 + hc / 2, y = 0.0 + hc / 2;  // the single node
  const auto face = [&](double fx, double fy) {
    const double wv = w.value(fx);
    return wv * wv * std::exp(V.value(fx, fy));
  };
  // every face is a boundary face here, so each transmissibility doubles
  const double diag = 2.0 * (face(x - hc / 2, y) + face(x + hc / 2, y) +
                             face(x, y - hc / 2) + face(x, y + hc / 2));
  std::vector<double> e{1.0}, out{0.0};
  op.apply(e, out);
  CHECK(out[0] == doctest::Approx(diag).epsilon(1e-14));

  // the solved value follows from the 1x1 system
  GridField f(dom);
  f[0] = 3.0;
  const auto u = solve(op, f, V);
  CHECK(u[0] == doctest::Approx(3.0 * std::exp(V.value(x, y)) * hc * hc / diag)
                    .epsilon(1e-12));
}

TEST_CASE("operator symmetry on random vectors") {
  const auto dom = RectilinearDomain::rect({0.25, 1.5, -0.5, 0.75}, 1.0 / 16);
  const auto op = DiffusionOperator::assemble(dom, WeightProfile::shifted_exponential(2.0, 0.1),
                                              mixed_gaussian());
  SplitMix64 rng(31);
  std::vector<double> x(op.size()), y(op.size()), ax(op.size()), ay(op.size());
  for (int trial = 0; trial < 5; ++trial) {
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    for (auto& v : y) v = rng.uniform(-1.0, 1.0);
    op.apply(x, ax);
    op.apply(y, ay);
    CHECK(dot(ax, y) == doctest::Approx(dot(x, ay)).epsilon(1e-12));
  }
}

TEST_CASE("manufactured solution converges at second order") {
  const auto V = flat_potential();
  const auto w = WeightProfile::constant(1.0);
  std::vector<double> errs;
  for (int n : {8, 16, 32}) {
    const double hc = 1.0 / n;
    const auto dom = RectilinearDomain::rect({0.0, 1.0, 0.0, 1.0}, hc);
    const auto op = DiffusionOperator::assemble(dom, w, V);
    const auto f = GridField::sample(dom, [](double x, double y) {
      return 2.0 * M_PI * M_PI * std::sin(M_PI * x) * std::sin(M_PI * y);
    });
    const auto u = solve(op, f, V);
    double err = 0.0;
    for (int k = 0; k < dom->node_count(); ++k) {
      const auto [i, j] = dom->node_coords(k);
      const double exact = std::sin(M_PI * dom->node_x(i)) * std::sin(M_PI * dom->node_y(j));
      err = std::max(err, std::abs(u[k] - exact));
    }
    errs.push_back(err);
  }
  for (std::size_t k = 0; k + 1 < errs.size(); ++k)
    CHECK(std::log2(errs[k] / errs[k + 1]) >= 1.9);
}

TEST_CASE("zero data solves to zero") {
  const auto dom = RectilinearDomain::rect({0.5, 1.5, 0.25, 1.25}, 1.0 / 16);
  const auto op = DiffusionOperator::assemble(dom, WeightProfile::exponential(2.0),
                                              mixed_gaussian());
  const GridField f(dom);
  const auto u = solve(op, f, mixed_gaussian());
  for (int k = 0; k < dom->node_count(); ++k) CHECK(u[k] == 0.0);
}

TEST_CASE("solver meets its residual contract on mixed-gaussian coefficients") {
  const auto dom = RectilinearDomain::rect({0.5, 1.5, 0.25, 1.25}, 1.0 / 32);
  const auto V = mixed_gaussian();
  const auto w = WeightProfile::shifted_exponential(2.0, 0.1);
  const auto op = DiffusionOperator::assemble(dom, w, V);
  const auto f = GridField::sample(dom, [](double, double) { return 1.0; });
  SolveStats stats;
  const auto u = solve(op, f, V, {3e-11, 100000}, &stats);
  CHECK(stats.rel_residual <= 3e-11);

  // plain residual, assembled independently of the solver loop
  std::vector<double> b(op.size()), r(op.size());
  for (int k = 0; k < op.size(); ++k) {
    const auto [i, j] = dom->node_coords(k);
    b[k] = std::exp(V.value(dom->node_x(i), dom->node_y(j))) * (1.0 / 32) * (1.0 / 32);
  }
  op.apply(u.values(), r);
  double num = 0.0, den = 0.0;
  for (int k = 0; k < op.size(); ++k) {
    num += (r[k] - b[k]) * (r[k] - b[k]);
    den += b[k] * b[k];
  }
  CHECK(std::sqrt(num / den) <= 1e-10);
}

TEST_CASE("discrete maximum principle") {
  // L-shaped mask, random nonnegative data
  const RectilinearDomain::Rect a{0.25, 1.25, -0.75, 0.75};
  const RectilinearDomain::Rect b{0.25, 2.25, -0.75, 0.25};
  const auto dom = RectilinearDomain::union_of_rects(std::vector{a, b}, 1.0 / 16);
  const auto V = mixed_gaussian();
  const auto op = DiffusionOperator::assemble(dom, WeightProfile::shifted_exponential(2.0, 0.1), V);
  SplitMix64 rng(32);
  GridField f(dom);
  for (int k = 0; k < dom->node_count(); ++k) f[k] = rng.uniform(0.0, 2.0);
  const auto u = solve(op, f, V);
  for (int k = 0; k < dom->node_count(); ++k) CHECK(u[k] >= 0.0);
}

TEST_CASE("discrete energy identity") {
  const auto dom = RectilinearDomain::rect({0.5, 1.5, 0.25, 1.25}, 1.0 / 32);
  const auto V = mixed_gaussian();
  const auto op = DiffusionOperator::assemble(dom, WeightProfile::shifted_exponential(2.0, 0.1), V);
  const auto f = GridField::sample(
      dom, [](double x, double y) { return 1.0 + x + 0.3 * std::sin(3.0 * y); });
  const auto u = solve(op, f, V);
  std::vector<double> au(op.size());
  op.apply(u.values(), au);
  const double energy = dot(au, u.values());
  double rhs = 0.0;
  const double h2 = dom->hc() * dom->hc();
  for (int k = 0; k < dom->node_count(); ++k) {
    const auto [i, j] = dom->node_coords(k);
    rhs += f[k] * u[k] * std::exp(V.value(dom->node_x(i), dom->node_y(j))) * h2;
  }
  CHECK(energy == doctest::Approx(rhs).epsilon(1e-8));
}

TEST_CASE("gradient q-norm") {
  SUBCASE("vanishes on the zero field") {
    const auto dom = RectilinearDomain::rect({0.0, 1.0, 0.0, 1.0}, 0.25);
    const GridField u(dom);
    CHECK(gradient_qnorm(u, WeightProfile::constant(1.0), flat_potential(), 1.0) == 0.0);
  }
  SUBCASE("matches a brute-force evaluation on a small mask") {
    const double hc = 0.25;
    const auto dom = RectilinearDomain::rect({0.5, 2.0, 0.0, 1.5}, hc);
    const auto V = mixed_gaussian();
    const auto w = WeightProfile::exponential(1.3);
    SplitMix64 rng(33);
    GridField u(dom);
    for (int k = 0; k < dom->node_count(); ++k) u[k] = rng.uniform(-1.0, 1.0);
    for (double q : {0.5, 1.0, 2.0}) {
      double brute = 0.0;
      for (int k = 0; k < dom->node_count(); ++k) {
        const auto [i, j] = dom->node_coords(k);
        const double gx = (u.at(i + 1, j) - u.at(i - 1, j)) / (2 * hc);
        const double gy = (u.at(i, j + 1) - u.at(i, j - 1)) / (2 * hc);
        brute += std::pow(std::hypot(gx, gy) * w.value(dom->node_x(i)), q) *
                 std::exp(V.value(dom->node_x(i), dom->node_y(j))) * hc * hc;
      }
      CHECK(gradient_qnorm(u, w, V, q) == doctest::Approx(brute).epsilon(1e-13));
    }
  }
  SUBCASE("q = 2 approximates the discrete energy on a smooth field") {
    const auto dom = RectilinearDomain::rect({0.0, 1.0, 0.0, 1.0}, 1.0 / 64);
    const auto V = flat_potential();
    const auto w = WeightProfile::constant(1.0);
    const auto op = DiffusionOperator::assemble(dom, w, V);
    const auto f = GridField::sample(dom, [](double x, double y) {
      return 2.0 * M_PI * M_PI * std::sin(M_PI * x) * std::sin(M_PI * y);
    });
    const auto u = solve(op, f, V);
    std::vector<double> au(op.size());
    op.apply(u.values(), au);
    const double energy = dot(au, u.values());
    CHECK(gradient_qnorm(u, w, V, 2.0) == doctest::Approx(energy).epsilon(0.05));
  }
  SUBCASE("q outside (0, 2] is rejected") {
    const auto dom = RectilinearDomain::rect({0.0, 1.0, 0.0, 1.0}, 0.25);
    const GridField u(dom);
    CHECK_THROWS_AS(gradient_qnorm(u, WeightProfile::constant(1.0), flat_potential(), 2.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(gradient_qnorm(u, WeightProfile::constant(1.0), flat_potential(), 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("mass-function bridge") {
  SUBCASE("a constant field merges into one cell") {
    const auto dom = RectilinearDomain::rect({0.5, 1.5, 0.0, 1.0}, 0.25);
    const auto V = mixed_gaussian();
    auto u = GridField::sample(dom, [](double, double) { return -2.0; });
    const auto mf = to_mass_function(u, V);
    const auto fs = decreasing_rearrangement(mf);
    CHECK(fs.steps() == 1);
    CHECK(fs.value(0.5 * mf.total_mass()) == 2.0);  // |u|
  }
  SUBCASE("total mass approaches the weighted area") {
    const auto V = mixed_gaussian();
    const auto dom = RectilinearDomain::rect({0.5, 1.5, 0.25, 1.25}, 1.0 / 64);
    const GridField u(dom);
    const auto mf = to_mass_function(u, V);
    const auto A = Polygon::make({{0.5, 0.25}, {1.5, 0.25}, {1.5, 1.25}, {0.5, 1.25}});
    CHECK(mf.total_mass() == doctest::Approx(weighted_area(A, V)).epsilon(1e-4));
  }
}

TEST_CASE("domain construction guards") {
  CHECK_THROWS_AS(RectilinearDomain::rect({-0.5, 1.0, 0.0, 1.0}, 0.25), GeometryError);
  CHECK_THROWS_AS(RectilinearDomain::rect({0.0, 1.3, 0.0, 1.0}, 0.25), GeometryError);
  // two disconnected blocks
  CHECK_THROWS_AS(RectilinearDomain::from_mask(0.0, 0.0, 0.25, 3, 1, {1, 0, 1}),
                  GeometryError);
  CHECK_THROWS_AS(RectilinearDomain::from_mask(0.0, 0.0, 0.25, 2, 1, {0, 0}),
                  GeometryError);
}
