#ifndef SQG_OPERATORS_HPP
#define SQG_OPERATORS_HPP

#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

/// (-Delta)^s: multiplies c(m) by |k|^{2s}. The zero mode stays 0, so for
/// s < 0 this is the inverse restricted to mean-zero fields.
SpectralField fractional_laplacian(const SpectralField& u, double s);

/// v = grad^perp (-Delta)^{-1/2} theta with grad^perp = (d/dx2, -d/dx1).
/// Nyquist modes are dropped (odd-order multipliers are not real there).
VelocityField velocity_from_theta(const SpectralField& theta);

/// Partial derivatives (d/dx1 u, d/dx2 u); Nyquist modes dropped.
VelocityField gradient(const SpectralField& u);

/// Sharp radial cutoff: keeps |k| <= 2^N. N may be fractional.
/// Throws std::invalid_argument if 2^N exceeds the Nyquist wavenumber.
SpectralField project_low(const SpectralField& u, double N);
/// Same cutoff expressed directly as a wavenumber radius.
SpectralField project_radius(const SpectralField& u, double radius);
/// True when every nonzero coefficient satisfies |k| <= radius.
bool in_radius(const SpectralField& u, double radius);

/// Dealiased v . grad theta, computed by physical-space products of the
/// dealiased factors and truncation to the dealias box. Zero mode removed.
/// Throws GridMismatch or BandLimitViolation.
SpectralField advect(const VelocityField& v, const SpectralField& theta);

/// div(v theta), computed the same way; equals advect when div v = 0.
SpectralField advect_divergence_form(const VelocityField& v, const SpectralField& theta);

/// Dealiased product f g with the mean removed.
SpectralField multiply(const SpectralField& f, const SpectralField& g);

/// e^{eps^2 Delta}: multiplies c(m) by exp(-eps^2 |k|^2). eps >= 0.
SpectralField heat_smooth(const SpectralField& u, double eps);

/// Dyadic rescaling u -> 2^a u(2x), from the torus of half-period L to L/2.
/// Requires u band-limited to max(|m1|,|m2|) <= K/4.
SpectralField rescale(const SpectralField& u, double a);

/// Fixed-velocity advection operator; physical velocity samples are cached so
/// repeated applications cost two transforms each.
class Advection {
 public:
  explicit Advection(const VelocityField& v);
  [[nodiscard]] SpectralField apply(const SpectralField& theta) const;
  [[nodiscard]] const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  std::vector<double> v1_;
  std::vector<double> v2_;
};

}  // namespace sqg

#endif
