#ifndef SQG_INEQUALITY_HPP
#define SQG_INEQUALITY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

/// Real, mean-zero field with independent complex Gaussian coefficients on
/// k_min <= |k| <= k_max (wavenumber units), unit L2 norm. Requires
/// 0 < k_min < k_max <= dealias wavenumber; throws on an empty annulus.
SpectralField sample_band_limited(const GridSpec& grid, double k_min, double k_max, std::uint64_t seed);

/// (s1, s2, s3, s4) for |fg|_{H^{s-1}} <= C |f|_{s1}|g|_{s2} + C |f|_{s3}|g|_{s4}.
using ProductExponents = std::array<double, 4>;
/// (s1, ..., s6) for |[(-Delta)^{s1/2}, f] g|_{H^{s2-1}} <= C |f|_{s3}|g|_{s4} + C |f|_{s5}|g|_{s6}.
using CommutatorExponents = std::array<double, 6>;

/// Throw std::invalid_argument naming the violated constraint.
void validate_product_exponents(const ProductExponents& e);
void validate_commutator_exponents(const CommutatorExponents& e);

double product_estimate_ratio(const SpectralField& f, const SpectralField& g, const ProductExponents& e);

/// (-Delta)^{s1/2}(fg) - f (-Delta)^{s1/2} g with dealiased products.
SpectralField commutator(const SpectralField& f, const SpectralField& g, double s1);
double commutator_estimate_ratio(const SpectralField& f, const SpectralField& g, const CommutatorExponents& e);

/// |<v . grad theta, theta>_{L2}| with v = velocity_from_theta(theta).
/// Requires theta band-limited to K/4.
double cancellation_probe(const SpectralField& theta);

enum class EstimateKind { product, commutator };

struct EstimateProbe {
  EstimateKind kind = EstimateKind::product;
  std::vector<double> exponents;
  int samples = 0;
  std::uint64_t seed = 0;
  GridSpec grid;
  double k_min = 1.0;
  double k_max = 1.0;
  double worst_ratio = 0.0;
  int worst_index = -1;
  SpectralField witness_f;
  SpectralField witness_g;
  std::vector<std::string> witness_files;

  [[nodiscard]] std::string to_json() const;
};

/// Sample i draws f and g with seeds seed + 2i and seed + 2i + 1, so a probe
/// with more samples extends one with fewer. The exponents are validated first.
EstimateProbe run_estimate_probe(EstimateKind kind, const std::vector<double>& exponents, const GridSpec& grid,
                                 int samples, std::uint64_t seed, double k_min, double k_max);

/// Exponent tuples at the solver's operating point for a given alpha.
ProductExponents operating_product_exponents(double alpha);
CommutatorExponents operating_commutator_exponents(double alpha);

}  // namespace sqg

#endif
