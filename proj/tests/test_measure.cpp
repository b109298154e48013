#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rsym/errors.hpp"
#include "rsym/measure.hpp"
#include "rsym/rng.hpp"

using namespace rsym;

namespace {

PotentialSplit gaussian_pair(double c1, double c2) {
  return PotentialSplit(AxialPotential::kGaussian, c1, CrossPotential::kGaussian, c2, 2);
}

}  // namespace

TEST_CASE("total mass of the planar gaussian pair is pi/2") {
  const auto mu = ReducedMeasure::build(gaussian_pair(1.0, 1.0));
  CHECK(mu.total() == doctest::Approx(M_PI / 2.0).epsilon(1e-10));
  CHECK(mu.eps_tail() <= 1e-12 * mu.total() * (1.0 + 1e-9));
  CHECK(mu.phi(0.0) == doctest::Approx(mu.total()).epsilon(1e-12));
}

TEST_CASE("flat potentials have no finite measure") {
  const PotentialSplit lebesgue(AxialPotential::kZero, 1.0, CrossPotential::kZero, 1.0, 2);
  CHECK_THROWS_AS(ReducedMeasure::build(lebesgue), MeasureNotFiniteError);
  const PotentialSplit half_line(AxialPotential::kZero, 1.0, CrossPotential::kZero, 1.0, 1);
  CHECK_THROWS_AS(ReducedMeasure::build(half_line), MeasureNotFiniteError);
  // finite cross mass cannot rescue a non-integrable axial part
  const PotentialSplit mixed(AxialPotential::kZero, 1.0, CrossPotential::kGaussian, 1.0, 2);
  CHECK_THROWS_AS(ReducedMeasure::build(mixed), MeasureNotFiniteError);
}

TEST_CASE("signed-parabola total agrees with an independent quadrature oracle") {
  const PotentialSplit V(AxialPotential::kSignedParabola, 1.0, CrossPotential::kGaussian,
                         1.0, 2);
  const auto mu = ReducedMeasure::build(V);
  const double m2 = std::sqrt(M_PI);
  const double oracle =
      m2 * oracles::gauss_legendre([](double t) { return std::exp(-t * t); }, 0.0, 12.0, 96);
  CHECK(mu.total() == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("inversion of the tail-mass function") {
  const auto mu = ReducedMeasure::build(gaussian_pair(1.0, 1.0));

  SUBCASE("the full mass sits at the origin") {
    CHECK(mu.inverse(mu.total()) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("round trip through an evaluated tail mass") {
    const double m = mu.phi(1.0);
    CHECK(mu.inverse(m) == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("matches the inverse complementary error function") {
    // Phi(t) = (pi/2) erfc(t) for the unit gaussian pair
    const double t = mu.inverse(M_PI / 4.0);
    CHECK(t == doctest::Approx(oracles::erfc_inverse(0.5)).epsilon(1e-8));
    CHECK(t == doctest::Approx(0.4769363).epsilon(1e-6));
  }
  SUBCASE("out-of-range masses are rejected") {
    CHECK_THROWS_AS(mu.inverse(mu.total() * 1.01), std::range_error);
    CHECK_THROWS_AS(mu.inverse(mu.eps_tail() * 0.5), std::range_error);
  }
  SUBCASE("inversion contract holds on random masses") {
    SplitMix64 rng(7);
    for (int k = 0; k < 500; ++k) {
      const double m = rng.uniform(mu.eps_tail() * 2.0, mu.total());
      CHECK(std::abs(mu.phi(mu.inverse(m)) - m) <= 1e-10 * mu.total());
    }
  }
  SUBCASE("inverse is strictly decreasing") {
    SplitMix64 rng(8);
    for (int k = 0; k < 1000; ++k) {
      const double m1 = rng.uniform(mu.total() * 1e-6, mu.total());
      const double m2 = rng.uniform(mu.total() * 1e-6, mu.total());
      if (m1 == m2) continue;
      const double lo = std::min(m1, m2), hi = std::max(m1, m2);
      CHECK(mu.inverse(lo) > mu.inverse(hi));
    }
  }
}

TEST_CASE("half-space perimeter through the mass variable") {
  const auto mu = ReducedMeasure::build(gaussian_pair(1.0, 1.0));
  const auto w1 = WeightProfile::constant(1.0);
  // h(total) = w(0) lambda(0) = sqrt(pi)
  CHECK(half_space_perimeter(mu, w1, mu.total()) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
  CHECK(half_space_perimeter(mu, w1, M_PI / 2.0) ==
        doctest::Approx(1.7724539).epsilon(1e-6));

  const auto w = WeightProfile::exponential(2.0);
  CHECK(half_space_perimeter(mu, w, mu.total()) ==
        doctest::Approx(w.value(0.0) * mu.lambda(0.0)).epsilon(1e-10));
}

TEST_CASE("tabulated tail mass differentiates to the density") {
  const auto mu = ReducedMeasure::build(gaussian_pair(1.0, 1.0));
  SplitMix64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double t = rng.uniform(0.01, 3.7);
    const double h = 1e-5 * (1.0 + t);
    const double fd = (mu.phi(t + h) - mu.phi(t - h)) / (2.0 * h);
    CHECK(-fd == doctest::Approx(mu.lambda(t)).epsilon(1e-6));
  }
}

TEST_CASE("reduced divergence identity at quadratic order") {
  const auto w = WeightProfile::shifted_exponential(2.0, 0.1);
  const PotentialSplit V = gaussian_pair(1.0, 1.0);
  const auto mu = ReducedMeasure::build(V);
  // d/dt[-w lambda] = g lambda wherever smooth
  for (double t : {0.4, 1.1, 2.2}) {
    const auto field = [&](double s) { return -w.value(s) * mu.lambda(s); };
    std::vector<double> errs;
    for (double h : {1e-2, 1e-3, 1e-4}) {
      const double fd = oracles::central_diff(field, t, h);
      errs.push_back(std::abs(fd - drift_g(w, V, t) * mu.lambda(t)));
    }
    for (std::size_t k = 0; k + 1 < errs.size(); ++k)
      CHECK(std::log10(errs[k] / errs[k + 1]) >= 1.9);
  }
}

TEST_CASE("linear axial family builds and inverts") {
  const PotentialSplit V(AxialPotential::kLinear, 0.8, CrossPotential::kGaussian, 1.0, 2);
  const auto mu = ReducedMeasure::build(V);
  // total = M2 / c
  CHECK(mu.total() == doctest::Approx(std::sqrt(M_PI) / 0.8).epsilon(1e-10));
  const double m = mu.phi(2.0);
  CHECK(mu.inverse(m) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("negative abscissae are outside the half-space") {
  const auto mu = ReducedMeasure::build(gaussian_pair(1.0, 1.0));
  CHECK_THROWS_AS(mu.phi(-0.1), std::domain_error);
}
