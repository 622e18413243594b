#ifndef SQG_SPECTRAL_FIELD_HPP
#define SQG_SPECTRAL_FIELD_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

using cplx = std::complex<double>;

/// A real, mean-zero function on the torus [-L, L)^2 held as the Fourier
/// coefficients c_m of u(x) = sum_m c_m exp(i k(m).x).
///
/// Storage is K x K row-major in FFT order: row index j1 carries mode m1 of the
/// x1 direction. The zero mode is kept at exactly 0. Hermitian symmetry
/// c(-m) = conj c(m) holds for every field built through the public
/// constructors and operators; raw coefficient access can break it, and
/// `symmetrize()` restores it.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid);

  /// Forward transform of K*K physical samples u(x1_i, x2_j) (row i, column j).
  /// The mean is discarded. Coefficients at the transform's rounding level
  /// (16 eps log2(K) max|u|) are set to exactly 0, so sampled trigonometric
  /// polynomials come out band-limited.
  static SpectralField from_physical(const GridSpec& grid, std::span<const double> samples);
  static SpectralField from_function(const GridSpec& grid, const std::function<double(double, double)>& u);

  [[nodiscard]] std::vector<double> to_physical() const;

  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] int size() const { return grid_.K; }

  [[nodiscard]] cplx coeff(int m1, int m2) const { return data_[offset(m1, m2)]; }
  cplx& coeff(int m1, int m2) { return data_[offset(m1, m2)]; }
  [[nodiscard]] std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  /// True when every coefficient with max(|m1|,|m2|) > M_d vanishes.
  [[nodiscard]] bool is_dealiased() const;
  /// True when every coefficient with max(|m1|,|m2|) > max_index vanishes.
  [[nodiscard]] bool band_limited_to(int max_index) const;
  /// Largest max(|m1|,|m2|) with a nonzero coefficient (0 for the zero field).
  [[nodiscard]] int bandwidth() const;
  /// Zeroes all coefficients outside the dealiasing box.
  SpectralField& dealias();

  /// max |c(-m) - conj c(m)| relative to the largest coefficient.
  [[nodiscard]] double hermitian_defect() const;
  /// Replaces c(m) by (c(m) + conj c(-m))/2 and zeroes the mean.
  SpectralField& symmetrize();

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] bool is_zero() const { return max_abs() == 0.0; }

  /// Multiplies each coefficient by mult(k1, k2) evaluated at its wavenumber.
  /// The zero mode is left at 0.
  SpectralField& apply_multiplier(const std::function<cplx(double, double)>& mult);

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  /// a += scale * b, in place.
  SpectralField& add_scaled(double scale, const SpectralField& other);

 private:
  [[nodiscard]] std::size_t offset(int m1, int m2) const {
    return static_cast<std::size_t>(grid_.index(m1)) * static_cast<std::size_t>(grid_.K) +
           static_cast<std::size_t>(grid_.index(m2));
  }
  void require_same_grid(const SpectralField& other, const char* what) const;

  GridSpec grid_{};
  std::vector<cplx> data_;
};

/// A velocity field (v1, v2) on one grid.
struct VelocityField {
  SpectralField v1;
  SpectralField v2;

  [[nodiscard]] const GridSpec& grid() const { return v1.grid(); }
  /// max_k |k1 v1(k) + k2 v2(k)| relative to max_k |k| |v(k)|.
  [[nodiscard]] double divergence_defect() const;
};

/// Physical samples of two real fields from one complex transform.
struct PhysicalPair {
  std::vector<double> first;
  std::vector<double> second;
};
PhysicalPair to_physical_pair(const SpectralField& a, const SpectralField& b);

/// L2 inner product (2L)^2 sum_m Re(a_m conj b_m).
double inner_product(const SpectralField& a, const SpectralField& b);

}  // namespace sqg

#endif
