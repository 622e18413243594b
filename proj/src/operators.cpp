#include "sqg/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sqg/errors.hpp"

namespace sqg {
namespace {

template <typename Fn>
void for_each_mode(const GridSpec& g, Fn&& fn) {
  const int K = g.K;
  const double unit = g.wavenumber_unit();
  for (int j1 = 0; j1 < K; ++j1) {
    const int m1 = g.mode(j1);
    for (int j2 = 0; j2 < K; ++j2) {
      const int m2 = g.mode(j2);
      fn(static_cast<std::size_t>(j1) * K + j2, m1, m2, unit * m1, unit * m2);
    }
  }
}

void require_dealiased(const SpectralField& u, const char* what) {
  if (!u.is_dealiased())
    throw BandLimitViolation(std::string(what) + ": input is not dealiased to M_d = " +
                             std::to_string(u.grid().dealias_index()));
}

SpectralField forward_product(const GridSpec& g, const std::vector<double>& samples) {
  SpectralField out = SpectralField::from_physical(g, samples);
  out.dealias();
  return out;
}

}  // namespace

SpectralField fractional_laplacian(const SpectralField& u, double s) {
  SpectralField out(u);
  auto data = out.data();
  for_each_mode(u.grid(), [&](std::size_t i, int m1, int m2, double k1, double k2) {
    if (m1 == 0 && m2 == 0) {
      data[i] = 0.0;
      return;
    }
    if (data[i] != cplx(0.0, 0.0)) data[i] *= std::pow(k1 * k1 + k2 * k2, s);
  });
  return out;
}

VelocityField velocity_from_theta(const SpectralField& theta) {
  const GridSpec& g = theta.grid();
  VelocityField v{SpectralField(g), SpectralField(g)};
  auto src = theta.data();
  auto d1 = v.v1.data();
  auto d2 = v.v2.data();
  const int nyq = -g.K / 2;
  for_each_mode(g, [&](std::size_t i, int m1, int m2, double k1, double k2) {
    if ((m1 == 0 && m2 == 0) || m1 == nyq || m2 == nyq) return;
    const double inv = 1.0 / std::hypot(k1, k2);
    d1[i] = cplx(0.0, k2 * inv) * src[i];
    d2[i] = cplx(0.0, -k1 * inv) * src[i];
  });
  return v;
}

VelocityField gradient(const SpectralField& u) {
  const GridSpec& g = u.grid();
  VelocityField out{SpectralField(g), SpectralField(g)};
  auto src = u.data();
  auto d1 = out.v1.data();
  auto d2 = out.v2.data();
  const int nyq = -g.K / 2;
  for_each_mode(g, [&](std::size_t i, int m1, int m2, double k1, double k2) {
    if (m1 == nyq || m2 == nyq) return;
    d1[i] = cplx(0.0, k1) * src[i];
    d2[i] = cplx(0.0, k2) * src[i];
  });
  return out;
}

SpectralField project_radius(const SpectralField& u, double radius) {
  SpectralField out(u);
  auto data = out.data();
  const double r2 = radius * radius * (1.0 + 1e-14);
  for_each_mode(u.grid(), [&](std::size_t i, int, int, double k1, double k2) {
    if (k1 * k1 + k2 * k2 > r2) data[i] = 0.0;
  });
  return out;
}

SpectralField project_low(const SpectralField& u, double N) {
  const double radius = std::exp2(N);
  if (radius > u.grid().nyquist_wavenumber() * (1.0 + 1e-12))
    throw std::invalid_argument("project_low: 2^N = " + std::to_string(radius) +
                                " exceeds the Nyquist wavenumber " +
                                std::to_string(u.grid().nyquist_wavenumber()));
  return project_radius(u, radius);
}

bool in_radius(const SpectralField& u, double radius) {
  bool inside = true;
  auto data = u.data();
  const double r2 = radius * radius * (1.0 + 1e-14);
  for_each_mode(u.grid(), [&](std::size_t i, int, int, double k1, double k2) {
    if (k1 * k1 + k2 * k2 > r2 && data[i] != cplx(0.0, 0.0)) inside = false;
  });
  return inside;
}

Advection::Advection(const VelocityField& v) : grid_(v.v1.grid()) {
  if (!(v.v1.grid() == v.v2.grid())) throw GridMismatch("Advection: velocity components on different grids");
  require_dealiased(v.v1, "advect");
  require_dealiased(v.v2, "advect");
  auto pair = to_physical_pair(v.v1, v.v2);
  v1_ = std::move(pair.first);
  v2_ = std::move(pair.second);
}

SpectralField Advection::apply(const SpectralField& theta) const {
  if (!(theta.grid() == grid_)) throw GridMismatch("advect: velocity and scalar live on different grids");
  require_dealiased(theta, "advect");
  const VelocityField grad = gradient(theta);
  const auto g = to_physical_pair(grad.v1, grad.v2);
  std::vector<double> prod(v1_.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = v1_[i] * g.first[i] + v2_[i] * g.second[i];
  return forward_product(grid_, prod);
}

SpectralField advect(const VelocityField& v, const SpectralField& theta) { return Advection(v).apply(theta); }

SpectralField advect_divergence_form(const VelocityField& v, const SpectralField& theta) {
  if (!(v.grid() == theta.grid())) throw GridMismatch("advect_divergence_form: grid mismatch");
  require_dealiased(v.v1, "advect_divergence_form");
  require_dealiased(v.v2, "advect_divergence_form");
  require_dealiased(theta, "advect_divergence_form");
  const auto vp = to_physical_pair(v.v1, v.v2);
  const auto tp = theta.to_physical();
  std::vector<double> f1(tp.size()), f2(tp.size());
  for (std::size_t i = 0; i < tp.size(); ++i) {
    f1[i] = vp.first[i] * tp[i];
    f2[i] = vp.second[i] * tp[i];
  }
  const GridSpec& g = theta.grid();
  // The flux is a quadratic product: its modes up to 2 M_d alias onto modes
  // beyond M_d only, so truncating after differentiation is exact.
  const SpectralField flux1 = SpectralField::from_physical(g, f1);
  const SpectralField flux2 = SpectralField::from_physical(g, f2);
  SpectralField out(g);
  auto o = out.data();
  auto a = flux1.data();
  auto b = flux2.data();
  const int nyq = -g.K / 2;
  for_each_mode(g, [&](std::size_t i, int m1, int m2, double k1, double k2) {
    if (m1 == nyq || m2 == nyq) return;
    o[i] = cplx(0.0, k1) * a[i] + cplx(0.0, k2) * b[i];
  });
  out.dealias();
  return out;
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw GridMismatch("multiply: grid mismatch");
  require_dealiased(f, "multiply");
  require_dealiased(g, "multiply");
  const auto p = to_physical_pair(f, g);
  std::vector<double> prod(p.first.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = p.first[i] * p.second[i];
  return forward_product(f.grid(), prod);
}

SpectralField heat_smooth(const SpectralField& u, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("heat_smooth: eps must be nonnegative");
  SpectralField out(u);
  if (eps == 0.0) return out;
  auto data = out.data();
  const double e2 = eps * eps;
  for_each_mode(u.grid(), [&](std::size_t i, int, int, double k1, double k2) {
    if (data[i] != cplx(0.0, 0.0)) data[i] *= std::exp(-e2 * (k1 * k1 + k2 * k2));
  });
  return out;
}

SpectralField rescale(const SpectralField& u, double a) {
  const GridSpec& g = u.grid();
  if (!u.band_limited_to(g.K / 4))
    throw BandLimitViolation("rescale: field must be band-limited to K/4 = " + std::to_string(g.K / 4));
  GridSpec half = make_grid(g.K, g.L / 2.0, g.dealias_fraction);
  SpectralField out(half);
  auto src = u.data();
  auto dst = out.data();
  const double factor = std::exp2(a);
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = factor * src[i];
  return out;
}

}  // namespace sqg
