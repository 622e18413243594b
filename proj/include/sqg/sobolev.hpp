#ifndef SQG_SOBOLEV_HPP
#define SQG_SOBOLEV_HPP

#include <span>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

/// Homogeneous Sobolev norm sqrt((2L)^2 sum_{k != 0} |k|^{2s} |c(k)|^2).
/// hs_norm(u, 0) is the L2 norm over the torus.
double hs_norm(const SpectralField& u, double s);

/// Ḣ^s inner product (2L)^2 sum_{k != 0} |k|^{2s} Re(a_k conj b_k).
double hs_inner(const SpectralField& a, const SpectralField& b, double s);

/// Norm of the intersection space: hs_norm(u, s) + hs_norm(u, s2).
double intersection_norm(const SpectralField& u, double s, double s2);

struct InterpolationCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Compares eps^{-sigma} |e^{eps^2 Delta}u - u|_{s-sigma} against
/// sqrt(2) |u|_s^{sigma/2} |e^{eps^2 Delta}u - u|_s^{1-sigma/2}.
/// Requires u != 0, 0 <= sigma < 2, eps > 0.
InterpolationCheck interpolation_check(const SpectralField& u, double s, double sigma, double eps);

struct SmoothingScanRow {
  double eps = 0.0;
  double value = 0.0;  ///< eps^{-sigma} |e^{eps^2 Delta}u - u|_{s-sigma}
  double bound = 0.0;  ///< 2^{(3-sigma)/2} |u|_s
  bool within_bound = false;
};

/// One row per eps. eps_sequence must be positive and strictly decreasing,
/// sigma in [0, 2).
std::vector<SmoothingScanRow> smoothing_limit_scan(const SpectralField& u, double s, double sigma,
                                                   std::span<const double> eps_sequence);

/// Largest t such that (1 - e^{-t^2}) / t^sigma is nondecreasing on (0, t].
/// Infinite for sigma = 0. Scans with eps * k_max below this value decrease
/// monotonically as eps shrinks.
double smoothing_monotone_limit(double sigma);

}  // namespace sqg

#endif
