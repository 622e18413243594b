#include "sqg/sobolev.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqg/errors.hpp"
#include "sqg/operators.hpp"

namespace sqg {

double hs_inner(const SpectralField& a, const SpectralField& b, double s) {
  if (!(a.grid() == b.grid())) throw GridMismatch("hs_inner: fields live on different grids");
  const GridSpec& g = a.grid();
  const int K = g.K;
  const double unit = g.wavenumber_unit();
  const auto da = a.data(), db = b.data();
  double sum = 0.0;
  for (int j1 = 0; j1 < K; ++j1) {
    const double k1 = unit * g.mode(j1);
    for (int j2 = 0; j2 < K; ++j2) {
      const std::size_t i = static_cast<std::size_t>(j1) * K + j2;
      const double re = da[i].real() * db[i].real() + da[i].imag() * db[i].imag();
      if (re == 0.0 || i == 0) continue;
      const double k2 = unit * g.mode(j2);
      sum += std::pow(k1 * k1 + k2 * k2, s) * re;
    }
  }
  const double side = 2.0 * g.L;
  return side * side * sum;
}

double hs_norm(const SpectralField& u, double s) { return std::sqrt(std::max(0.0, hs_inner(u, u, s))); }

double intersection_norm(const SpectralField& u, double s, double s2) { return hs_norm(u, s) + hs_norm(u, s2); }

InterpolationCheck interpolation_check(const SpectralField& u, double s, double sigma, double eps) {
  if (u.is_zero()) throw std::invalid_argument("interpolation_check: zero field");
  if (!(sigma >= 0.0 && sigma < 2.0)) throw std::invalid_argument("interpolation_check: sigma must lie in [0, 2)");
  if (!(eps > 0.0)) throw std::invalid_argument("interpolation_check: eps must be positive");
  const SpectralField diff = heat_smooth(u, eps) - u;
  InterpolationCheck out;
  out.lhs = std::pow(eps, -sigma) * hs_norm(diff, s - sigma);
  out.rhs = std::sqrt(2.0) * std::pow(hs_norm(u, s), sigma / 2.0) * std::pow(hs_norm(diff, s), 1.0 - sigma / 2.0);
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-10);
  return out;
}

std::vector<SmoothingScanRow> smoothing_limit_scan(const SpectralField& u, double s, double sigma,
                                                   std::span<const double> eps_sequence) {
  if (!(sigma >= 0.0 && sigma < 2.0)) throw std::invalid_argument("smoothing_limit_scan: sigma must lie in [0, 2)");
  for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] > 0.0)) throw std::invalid_argument("smoothing_limit_scan: eps must be positive");
    if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))
      throw std::invalid_argument("smoothing_limit_scan: eps sequence must be strictly decreasing");
  }
  const double bound = std::pow(2.0, (3.0 - sigma) / 2.0) * hs_norm(u, s);
  std::vector<SmoothingScanRow> rows;
  rows.reserve(eps_sequence.size());
  for (double eps : eps_sequence) {
    const SpectralField diff = heat_smooth(u, eps) - u;
    SmoothingScanRow row;
    row.eps = eps;
    row.value = std::pow(eps, -sigma) * hs_norm(diff, s - sigma);
    row.bound = bound;
    row.within_bound = row.value <= bound * (1.0 + 1e-10);
    rows.push_back(row);
  }
  return rows;
}

double smoothing_monotone_limit(double sigma) {
  if (sigma <= 0.0) return std::numeric_limits<double>::infinity();
  // d/dt log g(t) = 2t e^{-t^2}/(1 - e^{-t^2}) - sigma/t changes sign once.
  auto slope = [sigma](double t) {
    const double t2 = t * t;
    return 2.0 * t2 * std::exp(-t2) / -std::expm1(-t2) - sigma;
  };
  double lo = 1e-8, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace sqg
