#ifndef SQG_GRID_HPP
#define SQG_GRID_HPP

#include <numbers>

namespace sqg {

/// Discretization of the plane by the periodic square [-L, L)^2 with K
/// samples per side. Wavenumbers are k = (pi/L) m for integer m.
struct GridSpec {
  int K = 0;
  double L = 0.0;
  double dealias_fraction = 2.0 / 3.0;

  /// M_d = floor(dealias_fraction * K/2).
  [[nodiscard]] int dealias_index() const;
  [[nodiscard]] double wavenumber_unit() const { return std::numbers::pi / L; }
  [[nodiscard]] double nyquist_wavenumber() const { return wavenumber_unit() * K / 2.0; }
  [[nodiscard]] double dealias_wavenumber() const { return wavenumber_unit() * dealias_index(); }
  [[nodiscard]] double spacing() const { return 2.0 * L / K; }
  [[nodiscard]] double x(int j) const { return -L + spacing() * j; }

  /// Signed mode number for an FFT storage index in [0, K).
  [[nodiscard]] int mode(int index) const { return index < K / 2 ? index : index - K; }
  /// Storage index for a signed mode number (taken modulo K).
  [[nodiscard]] int index(int m) const { return ((m % K) + K) % K; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Validated constructor. Throws std::invalid_argument when K is not a power
/// of two >= 16, L <= 0, or the dealias fraction is outside (0, 1].
GridSpec make_grid(int K, double L, double dealias_fraction = 2.0 / 3.0);

}  // namespace sqg

#endif
