#include "sqg/inequality.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "sqg/errors.hpp"
#include "sqg/operators.hpp"
#include "sqg/parallel.hpp"
#include "sqg/sobolev.hpp"

namespace sqg {
namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

SpectralField sample_band_limited(const GridSpec& grid, double k_min, double k_max, std::uint64_t seed) {
  if (!(k_min > 0.0 && k_min < k_max && k_max <= grid.dealias_wavenumber() * (1.0 + 1e-12)))
    throw std::invalid_argument("sample_band_limited: need 0 < k_min < k_max <= dealias wavenumber");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField u(grid);
  const int Md = grid.dealias_index();
  const double unit = grid.wavenumber_unit();
  bool any = false;
  for (int m1 = -Md; m1 <= Md; ++m1)
    for (int m2 = -Md; m2 <= Md; ++m2) {
      const double k = unit * std::hypot(m1, m2);
      if (k < k_min || k > k_max) continue;
      const double re = normal(rng), im = normal(rng);
      u.coeff(m1, m2) = cplx(re, im);
      any = true;
    }
  if (!any) throw std::invalid_argument("sample_band_limited: the annulus holds no lattice points");
  u.symmetrize();
  u *= 1.0 / hs_norm(u, 0.0);
  return u;
}

void validate_product_exponents(const ProductExponents& e) {
  const auto [s1, s2, s3, s4] = e;
  if (!(s1 < 1.0)) throw std::invalid_argument("product exponents violate s1 < 1");
  if (!(s4 < 1.0)) throw std::invalid_argument("product exponents violate s4 < 1");
  if (!close(s1 + s2, s3 + s4)) throw std::invalid_argument("product exponents violate s1 + s2 = s3 + s4");
  if (!(s1 + s2 > 0.0)) throw std::invalid_argument("product exponents violate s = s1 + s2 > 0");
}

void validate_commutator_exponents(const CommutatorExponents& e) {
  const auto [s1, s2, s3, s4, s5, s6] = e;
  if (!(s2 > 0.0)) throw std::invalid_argument("commutator exponents violate s2 > 0");
  if (!(s3 < 2.0)) throw std::invalid_argument("commutator exponents violate s3 < 2");
  if (!(s6 < 1.0)) throw std::invalid_argument("commutator exponents violate s6 < 1");
  if (!close(s1 + s2, s3 + s4) || !close(s1 + s2, s5 + s6))
    throw std::invalid_argument("commutator exponents violate s1 + s2 = s3 + s4 = s5 + s6");
  if (!(s1 + s2 > 0.0)) throw std::invalid_argument("commutator exponents violate s1 + s2 > 0");
}

double product_estimate_ratio(const SpectralField& f, const SpectralField& g, const ProductExponents& e) {
  validate_product_exponents(e);
  const auto [s1, s2, s3, s4] = e;
  const double den = hs_norm(f, s1) * hs_norm(g, s2) + hs_norm(f, s3) * hs_norm(g, s4);
  if (!(den > 0.0)) throw std::invalid_argument("product_estimate_ratio: zero denominator");
  return hs_norm(multiply(f, g), s1 + s2 - 1.0) / den;
}

SpectralField commutator(const SpectralField& f, const SpectralField& g, double s1) {
  return fractional_laplacian(multiply(f, g), s1 / 2.0) - multiply(f, fractional_laplacian(g, s1 / 2.0));
}

double commutator_estimate_ratio(const SpectralField& f, const SpectralField& g, const CommutatorExponents& e) {
  validate_commutator_exponents(e);
  const auto [s1, s2, s3, s4, s5, s6] = e;
  const double den = hs_norm(f, s3) * hs_norm(g, s4) + hs_norm(f, s5) * hs_norm(g, s6);
  if (!(den > 0.0)) throw std::invalid_argument("commutator_estimate_ratio: zero denominator");
  return hs_norm(commutator(f, g, s1), s2 - 1.0) / den;
}

double cancellation_probe(const SpectralField& theta) {
  if (!theta.band_limited_to(theta.grid().K / 4))
    throw BandLimitViolation("cancellation_probe: theta must be band-limited to K/4");
  return std::abs(inner_product(advect(velocity_from_theta(theta), theta), theta));
}

std::string EstimateProbe::to_json() const {
  nlohmann::json j;
  j["kind"] = kind == EstimateKind::product ? "product" : "commutator";
  j["exponents"] = exponents;
  j["samples"] = samples;
  j["seed"] = seed;
  j["K"] = grid.K;
  j["L"] = grid.L;
  j["k_min"] = k_min;
  j["k_max"] = k_max;
  j["worst_ratio"] = worst_ratio;
  j["worst_index"] = worst_index;
  j["witness_files"] = witness_files;
  return j.dump(2);
}

EstimateProbe run_estimate_probe(EstimateKind kind, const std::vector<double>& exponents, const GridSpec& grid,
                                 int samples, std::uint64_t seed, double k_min, double k_max) {
  ProductExponents pe{};
  CommutatorExponents ce{};
  if (kind == EstimateKind::product) {
    if (exponents.size() != 4) throw std::invalid_argument("product estimate takes 4 exponents");
    std::copy(exponents.begin(), exponents.end(), pe.begin());
    validate_product_exponents(pe);
  } else {
    if (exponents.size() != 6) throw std::invalid_argument("commutator estimate takes 6 exponents");
    std::copy(exponents.begin(), exponents.end(), ce.begin());
    validate_commutator_exponents(ce);
  }
  if (samples < 1) throw std::invalid_argument("samples must be positive");

  EstimateProbe probe;
  probe.kind = kind;
  probe.exponents = exponents;
  probe.samples = samples;
  probe.seed = seed;
  probe.grid = grid;
  probe.k_min = k_min;
  probe.k_max = k_max;
  std::vector<double> ratios(static_cast<std::size_t>(samples));
  parallel_for(ratios.size(), [&](std::size_t i) {
    const SpectralField f = sample_band_limited(grid, k_min, k_max, seed + 2 * i);
    const SpectralField g = sample_band_limited(grid, k_min, k_max, seed + 2 * i + 1);
    ratios[i] = kind == EstimateKind::product ? product_estimate_ratio(f, g, pe) : commutator_estimate_ratio(f, g, ce);
  });
  for (std::size_t i = 0; i < ratios.size(); ++i)
    if (ratios[i] > probe.worst_ratio) {
      probe.worst_ratio = ratios[i];
      probe.worst_index = static_cast<int>(i);
    }
  probe.witness_f = sample_band_limited(grid, k_min, k_max, seed + 2 * probe.worst_index);
  probe.witness_g = sample_band_limited(grid, k_min, k_max, seed + 2 * probe.worst_index + 1);
  return probe;
}

ProductExponents operating_product_exponents(double alpha) {
  return {1.0 - alpha, 1.0 - 2.0 * alpha, 1.0 - 2.0 * alpha, 1.0 - alpha};
}

CommutatorExponents operating_commutator_exponents(double alpha) {
  return {2.0 - 3.0 * alpha, 1.0 - alpha, 2.0 - 2.0 * alpha, 1.0 - 2.0 * alpha, 2.0 - 2.0 * alpha, 1.0 - 2.0 * alpha};
}

}  // namespace sqg
