// Independent reference computations for the test suites.
#ifndef SQG_TEST_ORACLES_HPP
#define SQG_TEST_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "sqg/spectral_field.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Riemann sum of u^2 over the torus samples.
inline double physical_l2_squared(const std::vector<double>& samples, const sqg::GridSpec& g) {
  double s = 0.0;
  for (double x : samples) s += x * x;
  return s * g.spacing() * g.spacing();
}

/// Coefficient by direct summation: (1/K^2) sum_j u(x_j) e^{-i k.x_j}.
inline cplx direct_coefficient(const std::function<double(double, double)>& u, const sqg::GridSpec& g, int m1, int m2) {
  cplx sum = 0.0;
  const double k = g.wavenumber_unit();
  for (int i = 0; i < g.K; ++i)
    for (int j = 0; j < g.K; ++j) {
      const double x1 = g.x(i), x2 = g.x(j);
      sum += u(x1, x2) * std::exp(cplx(0.0, -k * (m1 * x1 + m2 * x2)));
    }
  return sum / double(g.K * g.K);
}

/// u(x + a) on the torus, as a coefficient phase.
inline sqg::SpectralField translate(const sqg::SpectralField& u, double a1, double a2) {
  sqg::SpectralField out(u);
  const auto& g = u.grid();
  const double k = g.wavenumber_unit();
  for (int j1 = 0; j1 < g.K; ++j1)
    for (int j2 = 0; j2 < g.K; ++j2) {
      const int m1 = g.mode(j1), m2 = g.mode(j2);
      out.coeff(m1, m2) *= std::exp(cplx(0.0, k * (m1 * a1 + m2 * a2)));
    }
  return out;
}

/// Solves theta + (-Delta)^{-alpha} P_N (v . grad theta) = (-Delta)^{-alpha} P_N f
/// with v = grad^perp (-Delta)^{-1/2} theta_v by assembling the Galerkin matrix
/// from the convolution sum (v . grad theta)^(k) = sum_q v^(k - q) . (i q) theta^(q)
/// and factorizing it. theta_v must be band-limited to the dealias box.
inline sqg::SpectralField dense_galerkin_solve(const sqg::SpectralField& theta_v, const sqg::SpectralField& f, double N,
                                               double alpha) {
  const auto& g = f.grid();
  const double unit = g.wavenumber_unit();
  const double r2 = std::exp2(2.0 * N);
  const int Md = g.dealias_index();
  std::vector<std::array<int, 2>> modes;
  for (int m1 = -g.K / 2 + 1; m1 < g.K / 2; ++m1)
    for (int m2 = -g.K / 2 + 1; m2 < g.K / 2; ++m2) {
      const double kk = unit * unit * (m1 * m1 + m2 * m2);
      if ((m1 != 0 || m2 != 0) && kk <= r2 * (1 + 1e-14)) modes.push_back({m1, m2});
    }
  auto vhat = [&](int d1, int d2, int comp) -> cplx {
    if (std::max(std::abs(d1), std::abs(d2)) > Md || (d1 == 0 && d2 == 0)) return 0.0;
    const double k1 = unit * d1, k2 = unit * d2, kn = std::hypot(k1, k2);
    const cplx t = theta_v.coeff(d1, d2);
    return comp == 0 ? cplx(0.0, k2 / kn) * t : cplx(0.0, -k1 / kn) * t;
  };
  const int n = static_cast<int>(modes.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n);
  Eigen::VectorXcd b(n);
  for (int a = 0; a < n; ++a) {
    const auto [k1, k2] = modes[a];
    const double w = std::pow(unit * unit * (k1 * k1 + k2 * k2), -alpha);
    b(a) = w * f.coeff(k1, k2);
    for (int c = 0; c < n; ++c) {
      const auto [q1, q2] = modes[c];
      const cplx conv = vhat(k1 - q1, k2 - q2, 0) * cplx(0.0, unit * q1) + vhat(k1 - q1, k2 - q2, 1) * cplx(0.0, unit * q2);
      M(a, c) += w * conv;
    }
  }
  const Eigen::VectorXcd x = M.partialPivLu().solve(b);
  sqg::SpectralField out(g);
  for (int a = 0; a < n; ++a) out.coeff(modes[a][0], modes[a][1]) = x(a);
  return out;
}

/// Relative max-coefficient difference.
inline double relative_difference(const sqg::SpectralField& a, const sqg::SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    num = std::max(num, std::abs(a.data()[i] - b.data()[i]));
    den = std::max(den, std::abs(b.data()[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace oracle

#endif
