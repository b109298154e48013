#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rsym/errors.hpp"
#include "rsym/isoperimetry.hpp"
#include "rsym/rng.hpp"

using namespace rsym;

namespace {

PotentialSplit flat_potential() {
  return PotentialSplit(AxialPotential::kZero, 1.0, CrossPotential::kZero, 1.0, 2);
}

PotentialSplit example_potential() {
  // V = -(x1|x1| + x2^2)
  return PotentialSplit(AxialPotential::kSignedParabola, 1.0, CrossPotential::kGaussian,
                        1.0, 2);
}

Polygon rect_polygon(double a, double b, double lo, double hi) {
  return Polygon::make({{a, lo}, {b, lo}, {b, hi}, {a, hi}});
}

// crossing-parity point-in-polygon, independent of the library geometry
bool inside(const Polygon& A, double x, double y) {
  bool in = false;
  const auto& v = A.vertices();
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > y) != (v[j].y > y) &&
        x < (v[j].x - v[i].x) * (y - v[i].y) / (v[j].y - v[i].y) + v[i].x)
      in = !in;
  }
  return in;
}

struct McEstimate {
  double value;
  double sigma;
};

McEstimate monte_carlo_weighted_area(const Polygon& A, const PotentialSplit& V,
                                     const std::function<double(double)>& factor,
                                     int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const auto& bb = A.bbox();
  const double box = (bb.x_hi - bb.x_lo) * (bb.y_hi - bb.y_lo);
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = rng.uniform(bb.x_lo, bb.x_hi);
    const double y = rng.uniform(bb.y_lo, bb.y_hi);
    double val = 0.0;
    if (inside(A, x, y)) {
      val = std::exp(V.value(x, y));
      if (factor) val *= factor(x);
    }
    sum += val;
    sum2 += val * val;
  }
  const double mean = sum / n;
  const double var = std::max(sum2 / n - mean * mean, 0.0);
  return {box * mean, box * std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("euclidean sanity: the unit square has perimeter 4 and area 1") {
  const auto A = rect_polygon(1.0, 2.0, 0.0, 1.0);
  const auto w = WeightProfile::constant(1.0);
  const auto V = flat_potential();
  CHECK(weighted_perimeter(A, w, V) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(weighted_area(A, V) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("degenerate polygons are rejected") {
  CHECK_THROWS_AS(Polygon::make({{0, 0}, {1, 0}, {2, 0}}), GeometryError);   // flat
  CHECK_THROWS_AS(Polygon::make({{0, 0}, {1, 1}, {1, 0}}), GeometryError);   // clockwise
  CHECK_THROWS_AS(Polygon::make({{-1, 0}, {1, 0}, {0, 1}}), GeometryError);  // x < 0
  CHECK_THROWS_AS(
      Polygon::make({{0, 0}, {2, 0}, {0.0, 1.5}, {2, 1.5}}),  // bowtie
      GeometryError);
  CHECK_THROWS_AS(Polygon::make({{0, 0}, {1, 0}}), GeometryError);
}

TEST_CASE("perimeter of a random triangle matches an independent oracle") {
  SplitMix64 rng(21);
  const auto w = WeightProfile::shifted_exponential(1.5, 0.2);
  const auto V = example_potential();
  for (int trial = 0; trial < 20; ++trial) {
    Polygon A = random_star_polygon(rng, {.min_vertices = 3, .max_vertices = 3});
    double oracle = 0.0;
    const auto& v = A.vertices();
    for (std::size_t i = 0; i < 3; ++i) {
      const Point a = v[i], b = v[(i + 1) % 3];
      const double len = std::hypot(b.x - a.x, b.y - a.y);
      oracle += oracles::gauss_legendre(
          [&](double s) {
            const double x = a.x + (b.x - a.x) * s;
            const double y = a.y + (b.y - a.y) * s;
            return w.value(x) * std::exp(V.value(x, y)) * len;
          },
          0.0, 1.0, 32);
    }
    CHECK(weighted_perimeter(A, w, V) == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("weighted area exhausts the total mass on a large box") {
  const auto V = example_potential();
  const auto mu = ReducedMeasure::build(V);
  const auto A = rect_polygon(0.0, mu.t_max(), -8.0, 8.0);
  CHECK(weighted_area(A, V) == doctest::Approx(mu.total()).epsilon(1e-9));
}

TEST_CASE("weighted area of random quadrilaterals within monte-carlo bars") {
  SplitMix64 rng(22);
  const auto V = example_potential();
  for (int trial = 0; trial < 3; ++trial) {
    const Polygon A = random_star_polygon(rng, {.min_vertices = 4, .max_vertices = 4});
    const auto mc = monte_carlo_weighted_area(A, V, nullptr, 10'000'000, 1000 + trial);
    CHECK(std::abs(weighted_area(A, V) - mc.value) <= 4.0 * mc.sigma);
  }
}

TEST_CASE("half-space level: round trips and closed forms") {
  const PotentialSplit V(AxialPotential::kGaussian, 1.0, CrossPotential::kGaussian, 1.0,
                         2);
  const auto mu = ReducedMeasure::build(V);

  SUBCASE("full mass sits at the origin") {
    CHECK(mu.inverse(mu.total()) == doctest::Approx(0.0));
  }
  SUBCASE("slab against the closed form") {
    const auto A = rect_polygon(0.3, 1.4, -7.0, 7.0);
    const double t_A = half_space_level(A, mu);
    // mu(A) = (pi/2)(erf(1.4) - erf(0.3)) for the unit gaussian pair, up to
    // the window truncation, and t_A = erfc^{-1}(2 mu(A) / pi)
    const double mu_A = 0.5 * M_PI * (std::erf(1.4) - std::erf(0.3));
    CHECK(t_A == doctest::Approx(oracles::erfc_inverse(2.0 * mu_A / M_PI)).epsilon(1e-8));
  }
  SUBCASE("definition round trip") {
    const auto A = rect_polygon(0.5, 1.5, -1.0, 1.0);
    const double m = weighted_area(A, V);
    CHECK(std::abs(mu.phi(half_space_level(A, mu)) - m) <= 1e-10 * mu.total());
  }
}

TEST_CASE("quantitative gap on the named cases") {
  const auto w = WeightProfile::exponential(2.0);
  const auto V = example_potential();
  const auto mu = ReducedMeasure::build(V);

  SUBCASE("a full-width slab is its own rearrangement") {
    const auto A = rect_polygon(0.4, mu.t_max(), -8.0, 8.0);
    const double t_A = half_space_level(A, mu);
    CHECK(std::abs(t_A - 0.4) <= 1e-6);
    CHECK(quantitative_gap(A, t_A, w, V, mu) <= 1e-6);
  }
  SUBCASE("the gap is nonnegative on random polygons") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
      const Polygon A = random_star_polygon(rng);
      const double t_A = half_space_level(A, mu);
      CHECK(quantitative_gap(A, t_A, w, V, mu) >= 0.0);
    }
  }
  SUBCASE("the gap matches a monte-carlo split evaluation") {
    SplitMix64 rng(24);
    const Polygon A = random_star_polygon(rng);
    const double t_A = half_space_level(A, mu);
    const auto factor = [&](double x) {
      return std::abs(drift_g(w, V, x) - drift_g(w, V, t_A));
    };
    // A-side piece: MC over A below / above the level
    const auto mc_left = monte_carlo_weighted_area(
        A, V, [&](double x) { return x < t_A ? factor(x) : 0.0; }, 10'000'000, 77);
    const auto mc_inside = monte_carlo_weighted_area(
        A, V, [&](double x) { return x >= t_A ? factor(x) : 0.0; }, 10'000'000, 78);
    // half-space piece by an independent 1-D oracle
    const double half = std::sqrt(M_PI) * oracles::gauss_legendre(
                                              [&](double z) {
                                                return factor(z) * std::exp(V.v1(z));
                                              },
                                              t_A, mu.t_max(), 96);
    const double gap = quantitative_gap(A, t_A, w, V, mu);
    const double mc_gap = mc_left.value + (half - mc_inside.value);
    CHECK(std::abs(gap - mc_gap) <= 4.0 * (mc_left.sigma + mc_inside.sigma) + 1e-6);
  }
}

TEST_CASE("isoperimetric certificate") {
  const auto w = WeightProfile::exponential(2.0);
  const auto V = example_potential();
  const auto mu = ReducedMeasure::build(V);
  const auto grid = uniform_grid(0.0, mu.t_max(), 4096);
  const bool hyp = validate_drift_condition(w, V, grid).empirical_pass();
  REQUIRE(hyp);

  SUBCASE("a clipped half-space slab is the equality case") {
    const auto A = rect_polygon(0.4, mu.t_max(), -8.0, 8.0);
    const auto rep = isoperimetric_check(A, w, V, mu, hyp);
    CHECK(rep.holds);
    CHECK(std::abs(rep.perimeter - rep.half_space_perimeter) <=
          1e-6 * (1.0 + rep.perimeter));
    CHECK(rep.gap_bound <= 1e-6);
  }
  SUBCASE("random star polygons satisfy inequality, gap and calibration") {
    SplitMix64 rng(25);
    for (int trial = 0; trial < 50; ++trial) {
      const Polygon A = random_star_polygon(rng);
      const auto rep = isoperimetric_check(A, w, V, mu, hyp);
      CHECK(rep.holds);
      CHECK(rep.perimeter >= rep.half_space_perimeter - 1e-8 * (1.0 + rep.perimeter));
      CHECK(rep.calibration <= rep.perimeter + 1e-8 * (1.0 + rep.perimeter));
      CHECK(rep.gap_bound >= -1e-12);
    }
  }
  SUBCASE("violated hypotheses are reported, not claimed") {
    const auto w_bad = WeightProfile::exponential(1.0);
    const bool hyp_bad =
        validate_drift_condition(w_bad, V, grid).empirical_pass();
    CHECK_FALSE(hyp_bad);
    SplitMix64 rng(26);
    const Polygon A = random_star_polygon(rng);
    const auto rep = isoperimetric_check(A, w_bad, V, mu, hyp_bad);
    CHECK_FALSE(rep.hypotheses_met);  // report still produced
    CHECK(rep.perimeter > 0.0);
  }
}

TEST_CASE("half-space perimeter computed two ways") {
  // h(m) against the left edge of a thin clipped slab with a wide window
  const auto w = WeightProfile::exponential(2.0);
  const auto V = example_potential();
  const auto mu = ReducedMeasure::build(V);
  for (double t : {0.2, 0.8, 1.7}) {
    const auto A = rect_polygon(t, mu.t_max(), -8.0, 8.0);
    const double m = weighted_area(A, V);
    const double h = half_space_perimeter(mu, w, m);
    // left-edge contribution of the slab perimeter
    const double left_edge =
        w.value(t) * std::exp(V.v1(t)) *
        (V.cross_antiderivative(8.0) - V.cross_antiderivative(-8.0));
    CHECK(h == doctest::Approx(left_edge).epsilon(1e-6));
  }
}

TEST_CASE("power weights reject polygons reaching below the cutoff") {
  const auto w = WeightProfile::power(1.5, 1e-3);
  const auto V = example_potential();
  const auto A = rect_polygon(0.0, 1.0, 0.0, 1.0);
  CHECK_THROWS_AS(weighted_perimeter(A, w, V), std::domain_error);
}
