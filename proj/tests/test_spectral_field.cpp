#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sqg/errors.hpp"
#include "sqg/field_io.hpp"
#include "sqg/grid.hpp"
#include "sqg/spectral_field.hpp"

using namespace sqg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<double> random_samples(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> s(static_cast<std::size_t>(g.K) * g.K);
  for (double& x : s) x = u(rng);
  return s;
}

}  // namespace

TEST_CASE("make_grid validates and reports the dealias index") {
  const GridSpec g16 = make_grid(16, pi);
  CHECK(g16.dealias_index() == 5);
  CHECK_THAT(g16.wavenumber_unit(), WithinRel(1.0, 1e-15));
  CHECK(make_grid(256, pi).dealias_index() == 85);
  CHECK(make_grid(1024, 16 * pi).dealias_index() == 341);
  CHECK_THROWS_AS(make_grid(15, pi), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, pi), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(48, pi), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, pi, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, pi, 1.5), std::invalid_argument);
  CHECK(make_grid(16, pi, 1.0).dealias_index() == 8);
}

TEST_CASE("grid coordinates start at -L") {
  const GridSpec g = make_grid(32, 2.0);
  CHECK(g.x(0) == -2.0);
  CHECK_THAT(g.x(16), WithinAbs(0.0, 1e-15));
  CHECK(g.mode(31) == -1);
  CHECK(g.index(-1) == 31);
}

TEST_CASE("from_function matches direct summation coefficients") {
  const GridSpec g = make_grid(16, pi);
  auto u = [](double x1, double x2) { return std::cos(x1) + 0.5 * std::sin(2 * x1 + x2) + 0.25 * std::cos(3 * x2); };
  const SpectralField f = SpectralField::from_function(g, u);
  for (int m1 = -3; m1 <= 3; ++m1)
    for (int m2 = -3; m2 <= 3; ++m2) {
      const cplx ref = (m1 == 0 && m2 == 0) ? cplx(0.0) : oracle::direct_coefficient(u, g, m1, m2);
      CHECK(std::abs(f.coeff(m1, m2) - ref) < 1e-14);
    }
  CHECK_THAT(f.coeff(1, 0).real(), WithinRel(0.5, 1e-13));
  CHECK_THAT(f.coeff(2, 1).imag(), WithinRel(-0.25, 1e-13));
}

TEST_CASE("physical round trip reproduces samples") {
  for (int K : {16, 64, 256, 1024}) {
    const GridSpec g = make_grid(K, 3.0);
    std::vector<double> s = random_samples(g, 7);
    double mean = 0.0;
    for (double x : s) mean += x;
    mean /= double(s.size());
    for (double& x : s) x -= mean;
    const std::vector<double> back = SpectralField::from_physical(g, s).to_physical();
    double err = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      err = std::max(err, std::abs(back[i] - s[i]));
      mx = std::max(mx, std::abs(s[i]));
    }
    INFO("K = " << K);
    CHECK(err <= 1e-13 * mx);
  }
}

TEST_CASE("Parseval: lattice sum equals physical quadrature") {
  const GridSpec g = make_grid(128, 2.5);
  std::vector<double> s = random_samples(g, 11);
  const SpectralField f = SpectralField::from_physical(g, s);
  const std::vector<double> zero_mean = f.to_physical();
  double lattice = 0.0;
  for (cplx c : f.data()) lattice += std::norm(c);
  lattice *= 4.0 * g.L * g.L;
  CHECK_THAT(lattice, WithinRel(oracle::physical_l2_squared(zero_mean, g), 1e-12));
  CHECK_THAT(inner_product(f, f), WithinRel(lattice, 1e-14));
}

TEST_CASE("real inputs give Hermitian coefficients with zero mean") {
  const GridSpec g = make_grid(32, pi);
  const SpectralField f = SpectralField::from_physical(g, random_samples(g, 3));
  CHECK(f.hermitian_defect() < 1e-15);
  CHECK(f.coeff(0, 0) == cplx(0.0, 0.0));
  SpectralField h(g);
  h.coeff(2, 1) = cplx(1.0, 2.0);
  CHECK(h.hermitian_defect() > 0.5);
  h.symmetrize();
  CHECK(h.hermitian_defect() == 0.0);
  CHECK(h.coeff(-2, -1) == std::conj(h.coeff(2, 1)));
}

TEST_CASE("dealias flag follows the coefficients") {
  const GridSpec g = make_grid(16, pi);
  SpectralField f(g);
  f.coeff(5, 0) = 1.0;
  f.coeff(-5, 0) = 1.0;
  CHECK(f.is_dealiased());
  CHECK(f.bandwidth() == 5);
  f.coeff(6, 1) = 1.0;
  f.coeff(-6, -1) = 1.0;
  CHECK_FALSE(f.is_dealiased());
  CHECK(f.band_limited_to(6));
  f.dealias();
  CHECK(f.is_dealiased());
  CHECK(f.coeff(6, 1) == cplx(0.0));
}

TEST_CASE("arithmetic is per coefficient and checks grids") {
  const GridSpec g = make_grid(16, pi);
  const SpectralField a = SpectralField::from_function(g, [](double x, double) { return std::sin(x); });
  const SpectralField b = SpectralField::from_function(g, [](double, double y) { return std::cos(2 * y); });
  const SpectralField c = a * 2.0 + b - a;
  CHECK(std::abs(c.coeff(1, 0) - a.coeff(1, 0)) < 1e-15);
  CHECK(std::abs(c.coeff(0, 2) - b.coeff(0, 2)) < 1e-15);
  SpectralField other(make_grid(32, pi));
  CHECK_THROWS_AS(SpectralField(a) += other, GridMismatch);
  CHECK_THROWS_AS(inner_product(a, other), GridMismatch);
}

TEST_CASE("paired inverse transform matches single transforms") {
  const GridSpec g = make_grid(32, 1.0);
  const SpectralField a = SpectralField::from_physical(g, random_samples(g, 1));
  const SpectralField b = SpectralField::from_physical(g, random_samples(g, 2));
  const PhysicalPair p = to_physical_pair(a, b);
  const auto sa = a.to_physical(), sb = b.to_physical();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    CHECK(std::abs(p.first[i] - sa[i]) < 1e-13);
    CHECK(std::abs(p.second[i] - sb[i]) < 1e-13);
  }
}

TEST_CASE("SQGF1 spectral round trip is exact") {
  const GridSpec g = make_grid(16, 1.25);
  const SpectralField f = SpectralField::from_physical(g, random_samples(g, 5));
  std::stringstream ss;
  io::write_field(ss, f, io::Representation::spectral);
  const std::string bytes = ss.str();
  REQUIRE(bytes.size() == io::kHeaderBytes + 16u * 16u * 16u);
  CHECK(bytes.substr(0, 4) == "SQGF");
  std::uint32_t version = 0, K = 0, tag = 7;
  double L = 0.0;
  std::memcpy(&version, bytes.data() + 4, 4);
  std::memcpy(&K, bytes.data() + 8, 4);
  std::memcpy(&tag, bytes.data() + 12, 4);
  std::memcpy(&L, bytes.data() + 16, 8);
  CHECK(version == 1u);
  CHECK(K == 16u);
  CHECK(tag == 0u);
  CHECK(L == 1.25);
  const SpectralField back = io::read_field(ss);
  CHECK(back.grid() == g);
  for (std::size_t i = 0; i < f.data().size(); ++i) CHECK(back.data()[i] == f.data()[i]);
}

TEST_CASE("SQGF1 physical round trip and malformed input") {
  const GridSpec g = make_grid(32, pi);
  const SpectralField f = SpectralField::from_function(g, [](double x, double y) { return std::sin(x) * std::cos(3 * y); });
  std::stringstream ss;
  io::write_field(ss, f, io::Representation::physical);
  REQUIRE(ss.str().size() == io::kHeaderBytes + 8u * 32u * 32u);
  const SpectralField back = io::read_field(ss);
  CHECK(oracle::relative_difference(back, f) < 1e-14);

  std::stringstream bad("SQGX");
  CHECK_THROWS_AS(io::read_field(bad), std::runtime_error);
  std::string truncated;
  {
    std::stringstream s2;
    io::write_field(s2, f, io::Representation::spectral);
    truncated = s2.str().substr(0, 100);
  }
  std::stringstream s3(truncated);
  CHECK_THROWS_AS(io::read_field(s3), std::runtime_error);
}

TEST_CASE("sampled trigonometric polynomials come out exactly band-limited") {
  const GridSpec g = make_grid(256, pi);
  const SpectralField f = SpectralField::from_function(g, [](double x, double y) { return std::cos(x) - 3 * std::sin(2 * x + 5 * y); });
  CHECK(f.bandwidth() == 5);
  CHECK(f.is_dealiased());
  std::size_t nonzero = 0;
  for (cplx c : f.data()) nonzero += c != cplx(0.0);
  CHECK(nonzero == 4);
  const SpectralField r = SpectralField::from_physical(g, random_samples(g, 9));
  CHECK(r.bandwidth() == 128);
}
