#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "sqg/grid.hpp"
#include "sqg/inequality.hpp"
#include "sqg/operators.hpp"
#include "sqg/sobolev.hpp"

using namespace sqg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
constexpr double pi = std::numbers::pi;

TEST_CASE("hs_norm of single modes") {
  const GridSpec g = make_grid(16, pi);
  const SpectralField s1 = SpectralField::from_function(g, [](double x, double) { return std::sin(x); });
  CHECK_THAT(hs_norm(s1, 0.0), WithinRel(pi * std::sqrt(2.0), 1e-14));
  CHECK_THAT(hs_norm(s1, 1.7), WithinRel(pi * std::sqrt(2.0), 1e-14));
  const SpectralField c = SpectralField::from_function(g, [](double x, double y) { return std::cos(3 * x + 4 * y); });
  for (double s : {-0.5, 0.0, 0.4, 1.0, 2.0})
    CHECK_THAT(hs_norm(c, s), WithinRel(std::pow(5.0, s) * pi * std::sqrt(2.0), 1e-13));
}

TEST_CASE("hs_norm of a Gaussian: |grad G|^2 = pi") {
  const GridSpec g = make_grid(256, 8 * pi);
  const SpectralField G = SpectralField::from_function(g, [](double x, double y) { return std::exp(-(x * x + y * y) / 2); });
  CHECK_THAT(hs_norm(G, 1.0), WithinRel(std::sqrt(pi), 1e-10));
  // |G|_{L2}^2 = pi up to the removed mean (2 pi)^2 / (2L)^2.
  const double mean = 2 * pi / (16 * pi * 16 * pi);
  CHECK_THAT(hs_norm(G, 0.0) * hs_norm(G, 0.0), WithinRel(pi - mean * mean * 256 * pi * pi, 1e-10));
}

TEST_CASE("hs_norm agrees with physical quadrature and with the composition identity") {
  const GridSpec g = make_grid(64, 2.0);
  const SpectralField u = sample_band_limited(g, 1.0, 25.0, 77);
  CHECK_THAT(hs_norm(u, 0.0) * hs_norm(u, 0.0), WithinRel(oracle::physical_l2_squared(u.to_physical(), g), 1e-12));
  const VelocityField d = gradient(u);
  const double grad2 = oracle::physical_l2_squared(d.v1.to_physical(), g) + oracle::physical_l2_squared(d.v2.to_physical(), g);
  CHECK_THAT(hs_norm(u, 1.0) * hs_norm(u, 1.0), WithinRel(grad2, 1e-12));
  for (double s : {-0.3, 0.2, 0.8})
    for (double t : {-0.6, 0.1, 0.5})
      CHECK_THAT(hs_norm(fractional_laplacian(u, t / 2), s), WithinRel(hs_norm(u, s + t), 1e-12));
  CHECK_THAT(hs_inner(u, u, 0.7), WithinRel(std::pow(hs_norm(u, 0.7), 2), 1e-13));
  CHECK_THAT(intersection_norm(u, 0.3, 1.1), WithinRel(hs_norm(u, 0.3) + hs_norm(u, 1.1), 1e-15));
}

TEST_CASE("velocity map is an isometry of every Hs") {
  const GridSpec g = make_grid(64, pi);
  const SpectralField th = sample_band_limited(g, 1.0, 20.0, 5);
  const VelocityField v = velocity_from_theta(th);
  for (double s : {-0.4, 0.0, 0.8, 1.2}) {
    const double vn = std::hypot(hs_norm(v.v1, s), hs_norm(v.v2, s));
    CHECK_THAT(vn, WithinRel(hs_norm(th, s), 1e-13));
  }
}

TEST_CASE("interpolation check on a unit wavenumber mode has a closed form") {
  const GridSpec g = make_grid(16, pi);
  const SpectralField u = SpectralField::from_function(g, [](double x, double) { return std::cos(x); });
  const double n0 = pi * std::sqrt(2.0);
  for (double sigma : {0.0, 0.5, 1.0, 1.9})
    for (double eps : {1.0, 0.1, 0.01}) {
      const InterpolationCheck c = interpolation_check(u, 0.3, sigma, eps);
      const double d = 1 - std::exp(-eps * eps);
      CHECK_THAT(c.lhs, WithinRel(std::pow(eps, -sigma) * d * n0, 1e-10));
      CHECK_THAT(c.rhs, WithinRel(std::sqrt(2.0) * std::pow(n0, sigma / 2) * std::pow(d * n0, 1 - sigma / 2), 1e-10));
      CHECK(c.holds);
    }
  CHECK_THROWS_AS(interpolation_check(SpectralField(g), 0.0, 0.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(interpolation_check(u, 0.0, 2.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(interpolation_check(u, 0.0, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("smoothing scan on a unit mode") {
  const GridSpec g = make_grid(16, pi);
  const SpectralField u = SpectralField::from_function(g, [](double x, double) { return std::cos(x); });
  std::vector<double> eps{0.8, 0.4, 0.2, 0.1};
  const auto rows = smoothing_limit_scan(u, 0.0, 1.0, eps);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double e = eps[i];
    CHECK_THAT(rows[i].value, WithinRel((1 - std::exp(-e * e)) / e * pi * std::sqrt(2.0), 1e-10));
    CHECK_THAT(rows[i].bound, WithinRel(2 * pi * std::sqrt(2.0), 1e-13));
    CHECK(rows[i].within_bound);
    if (i > 0) CHECK(rows[i].value < rows[i - 1].value);
  }
  std::vector<double> bad{0.1, 0.2};
  CHECK_THROWS_AS(smoothing_limit_scan(u, 0.0, 1.0, bad), std::invalid_argument);
  std::vector<double> neg{-0.1};
  CHECK_THROWS_AS(smoothing_limit_scan(u, 0.0, 1.0, neg), std::invalid_argument);
}

TEST_CASE("smoothing_monotone_limit locates the peak of (1 - e^{-t^2}) / t^sigma") {
  CHECK(std::isinf(smoothing_monotone_limit(0.0)));
  for (double sigma : {0.5, 1.0, 1.5, 1.9}) {
    const double t = smoothing_monotone_limit(sigma);
    auto q = [&](double x) { return (1 - std::exp(-x * x)) / std::pow(x, sigma); };
    CHECK(q(t * 0.999) < q(t));
    CHECK(q(t * 1.001) < q(t));
  }
  // sigma = 1: 2 t^2 e^{-t^2} = 1 - e^{-t^2} at t = 1.12091...
  CHECK_THAT(smoothing_monotone_limit(1.0), WithinAbs(1.1209, 1e-4));
}
