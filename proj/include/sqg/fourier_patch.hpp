#ifndef SQG_FOURIER_PATCH_HPP
#define SQG_FOURIER_PATCH_HPP

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace sqg {

using cplx = std::complex<double>;

/// One block of samples of a continuum Fourier transform on the lattice
/// h * Z^2. Sample (i1, i2) sits at xi = h * (origin + (i1, i2)); storage is
/// row-major with i1 (the xi1 direction) slowest.
struct Patch {
  std::array<long, 2> origin{0, 0};
  int n1 = 0;
  int n2 = 0;
  std::vector<cplx> values;

  [[nodiscard]] cplx at(int i1, int i2) const { return values[static_cast<std::size_t>(i1) * n2 + i2]; }
  cplx& at(int i1, int i2) { return values[static_cast<std::size_t>(i1) * n2 + i2]; }
  [[nodiscard]] bool contains(long j1, long j2) const {
    return j1 >= origin[0] && j1 < origin[0] + n1 && j2 >= origin[1] && j2 < origin[1] + n2;
  }
};

struct PatchNorm {
  double value = 0.0;
  /// |value - value on the 2h subgrid|, a conservative quadrature error.
  double error_estimate = 0.0;
};

/// A real function on R^2 given by its unitary transform
/// U(xi) = (2 pi)^{-1} \int u(x) e^{-i x.xi} dx, sampled on compact patches
/// of a common lattice. The represented transform is the sum of the patches,
/// so |u|_{L2}^2 = \int |U|^2 and U_{fg} = (2 pi)^{-1} U_f * U_g.
class FourierPatch {
 public:
  /// Widest box a convolution may produce, in frequency units.
  static constexpr double kMaxSide = 8.0;

  FourierPatch() = default;
  explicit FourierPatch(double h);

  /// Samples fn on the lattice box [lo1, hi1] x [lo2, hi2] (lattice indices).
  static FourierPatch sample(double h, std::array<long, 2> lo, std::array<long, 2> hi,
                             const std::function<cplx(double, double)>& fn);

  [[nodiscard]] double spacing() const { return h_; }
  [[nodiscard]] const std::vector<Patch>& patches() const { return patches_; }
  void add_patch(Patch p);

  /// Multiplies the transform by symbol(xi1, xi2); the value at xi = 0 is
  /// replaced by 0 when the symbol is singular there.
  [[nodiscard]] FourierPatch multiplied(const std::function<cplx(double, double)>& symbol) const;
  [[nodiscard]] FourierPatch scaled(cplx factor) const;
  /// Physical-space modulation u(x) e^{i omega x1} with omega = shift * h.
  [[nodiscard]] FourierPatch shifted(std::array<long, 2> shift) const;

  FourierPatch& operator+=(const FourierPatch& other);
  friend FourierPatch operator+(FourierPatch a, const FourierPatch& b) { return a += b; }
  friend FourierPatch operator-(FourierPatch a, const FourierPatch& b) { return a += b.scaled(-1.0); }

  /// Overlapping patches merged so that every lattice point is held once.
  [[nodiscard]] FourierPatch consolidated() const;

  /// Sum of all patches at a lattice point.
  [[nodiscard]] cplx value_at(long j1, long j2) const;
  [[nodiscard]] double max_abs() const;
  /// max |U(-xi) - conj U(xi)| relative to max |U|.
  [[nodiscard]] double hermitian_defect() const;
  /// Largest |U| at a lattice point failing `inside`, relative to max |U|.
  [[nodiscard]] double mass_outside(const std::function<bool(double, double)>& inside) const;
  /// Smallest lattice box holding every patch: {lo1, lo2, hi1, hi2}.
  [[nodiscard]] std::array<long, 4> bounding_box() const;

 private:
  double h_ = 0.0;
  std::vector<Patch> patches_;
};

/// Transform of the product of the two physical functions, by zero-padded FFT
/// convolution of every patch pair. Throws std::length_error when an output
/// box would exceed kMaxSide.
FourierPatch convolve(const FourierPatch& a, const FourierPatch& b);

/// sqrt(\int |xi|^{2s} |U|^2 dxi) by trapezoid quadrature over the consolidated
/// patches. The origin is left out of the lattice sum and replaced by the
/// zeta-function correction for the |xi|^{2s} singularity, which keeps
/// negative s accurate. Throws std::domain_error when s <= -1 and a patch
/// covers xi = 0.
PatchNorm patch_hs_norm(const FourierPatch& u, double s);

/// Unitary 1D transform U(tau) = (2 pi)^{-1/2} \int u(x) e^{-i x tau} dx on
/// the lattice h * Z, as a single contiguous segment.
struct FourierLine {
  double h = 0.0;
  long origin = 0;
  std::vector<cplx> values;

  [[nodiscard]] double tau(std::size_t i) const { return h * static_cast<double>(origin + static_cast<long>(i)); }
  [[nodiscard]] cplx value_at(long j) const;
  [[nodiscard]] FourierLine multiplied(const std::function<cplx(double)>& symbol) const;
  [[nodiscard]] FourierLine shifted(long shift) const;
  /// sqrt(\int |tau|^{2s} |U|^2 dtau) by the trapezoid rule with the origin
  /// singularity corrected. Throws std::domain_error for s <= -1/2 when the
  /// segment covers tau = 0.
  [[nodiscard]] double hs_norm(double s) const;
};

/// Transform of the product of two 1D functions: (2 pi)^{-1/2} U_a * U_b.
FourierLine convolve(const FourierLine& a, const FourierLine& b);

/// Sum of two lines on a common lattice, over the union of their segments.
FourierLine add(const FourierLine& a, const FourierLine& b);

/// Separable 2D function a(x1) b(x2): U = U_a(xi1) U_b(xi2).
Patch outer(const FourierLine& a, const FourierLine& b);

}  // namespace sqg

#endif
