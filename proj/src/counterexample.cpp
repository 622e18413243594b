#include "sqg/counterexample.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sqg/errors.hpp"
#include "sqg/parallel.hpp"
#include "sqg/sobolev.hpp"

namespace sqg {
namespace {

constexpr cplx kI(0.0, 1.0);

long lattice_per_unit(double h) {
  const double inv = 1.0 / h;
  const long M = std::lround(inv);
  if (M < 1 || std::abs(inv - static_cast<double>(M)) > 1e-9 * inv)
    throw std::invalid_argument("patch spacing h must be 1/M for an integer M");
  return M;
}

FourierPatch single(double h, Patch p, cplx scale = 1.0) {
  FourierPatch out(h);
  if (scale != cplx(1.0, 0.0))
    for (cplx& z : p.values) z *= scale;
  out.add_patch(std::move(p));
  return out;
}

double norm_of(const FourierPatch& u, double s) { return patch_hs_norm(u, s).value; }

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double phi_hat(double tau) {
  const double a = std::abs(tau);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return 1.0 - smooth_step(a - 1.0);
}

PhiProfile build_phi(double h) {
  if (!(h > 0.0) || h > 1.0 / 16.0 + 1e-15)
    throw std::invalid_argument("build_phi: spacing h must satisfy 0 < h <= 1/16 to resolve the transition");
  const long M = lattice_per_unit(h);
  PhiProfile p;
  p.h = h;
  p.phi.h = h;
  p.phi.origin = -2 * M;
  p.phi.values.resize(static_cast<std::size_t>(4 * M + 1));
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < p.phi.values.size(); ++i) p.phi.values[i] = phi_hat(p.phi.tau(i)) * norm;
  p.derivative = p.phi.multiplied([](double t) { return kI * t; });
  p.square = convolve(p.phi, p.phi);
  p.phi_dphi = convolve(p.phi, p.derivative);
  p.l4_norm = std::sqrt(p.square.hs_norm(0.0));
  p.square_h1 = p.square.hs_norm(1.0);
  return p;
}

void CounterexampleSpec::validate() const {
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be nonnegative");
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must lie in (0, 1/2)");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (n > 40) throw std::invalid_argument("n must be at most 40");
}

FourierPatch patch_fractional_laplacian(const FourierPatch& u, double s) {
  return u.multiplied([s](double a, double b) { return cplx(std::pow(a * a + b * b, s), 0.0); });
}

FourierPatch patch_bilinear_B(const FourierPatch& a, const FourierPatch& b, double alpha) {
  const FourierPatch ta = patch_fractional_laplacian(a, -alpha);
  const FourierPatch tb = patch_fractional_laplacian(b, -alpha);
  const FourierPatch v1 = ta.multiplied([](double x1, double x2) { return kI * x2 / std::hypot(x1, x2); });
  const FourierPatch v2 = ta.multiplied([](double x1, double x2) { return -kI * x1 / std::hypot(x1, x2); });
  const FourierPatch d1 = tb.multiplied([](double x1, double) { return kI * x1; });
  const FourierPatch d2 = tb.multiplied([](double, double x2) { return kI * x2; });
  return patch_fractional_laplacian(convolve(v1, d1) + convolve(v2, d2), -alpha);
}

Forces build_forces(const CounterexampleSpec& spec, const PhiProfile& phi) {
  spec.validate();
  const double h = phi.h;
  const long W = lattice_per_unit(h) << spec.n;
  const double a = spec.alpha;
  const Patch base = outer(phi.phi, phi.phi);

  Patch plus = base, minus = base;
  plus.origin[0] += W;
  minus.origin[0] -= W;
  // sin(w x1) shifts the transform to +-w with weights 1/(2i), -1/(2i).
  FourierPatch g = single(h, plus, -0.5 * kI) + single(h, minus, 0.5 * kI);
  Forces out;
  out.g = patch_fractional_laplacian(g, a).scaled(spec.delta * std::exp2(-(2.0 - 2.0 * a) * spec.n));
  out.h = patch_fractional_laplacian(single(h, base), a + 0.5).scaled(spec.delta * std::exp2(-(1.0 - 2.0 * a) * spec.n));
  out.f = out.g + out.h;
  return out;
}

SecondIterate decompose_second_iterate(const CounterexampleSpec& spec, const PhiProfile& phi) {
  spec.validate();
  const double h = phi.h;
  const double a = spec.alpha;
  const double s = 2.0 - 2.0 * a;
  const long W = lattice_per_unit(h) << spec.n;
  const Forces F = build_forces(spec, phi);
  const double d2 = spec.delta * spec.delta;

  SecondIterate out;
  {
    // delta^2 2^{-(2-4a)n} (-Delta)^{-a}[phi(x1)^2 cos(2^n x1) phi(x2) phi'(x2)]
    FourierPatch b = single(h, outer(phi.square.shifted(W), phi.phi_dphi), 0.5) +
                     single(h, outer(phi.square.shifted(-W), phi.phi_dphi), 0.5);
    out.b11 = patch_fractional_laplacian(b, -a).scaled(d2 * std::exp2(-(2.0 - 4.0 * a) * spec.n));
  }
  {
    // delta^2 2^{-(3-4a)n} (-Delta)^{-a}[phi phi'(x1) sin(2^n x1) phi phi'(x2)]
    FourierPatch b = single(h, outer(phi.phi_dphi.shifted(W), phi.phi_dphi), -0.5 * kI) +
                     single(h, outer(phi.phi_dphi.shifted(-W), phi.phi_dphi), 0.5 * kI);
    out.b12 = patch_fractional_laplacian(b, -a).scaled(d2 * std::exp2(-(3.0 - 4.0 * a) * spec.n));
  }
  {
    const FourierPatch th = patch_fractional_laplacian(F.h, -a);
    const FourierPatch tg = patch_fractional_laplacian(F.g, -a);
    const FourierPatch r1 = th.multiplied([](double x1, double x2) { return kI * x1 / std::hypot(x1, x2); });
    const FourierPatch dg2 = tg.multiplied([](double, double x2) { return kI * x2; });
    out.b2 = patch_fractional_laplacian(convolve(r1, dg2), -a);
  }
  out.bhg = patch_bilinear_B(F.h, F.g, a);
  out.bgh = patch_bilinear_B(F.g, F.h, a);
  out.bhh = patch_bilinear_B(F.h, F.h, a);
  out.gap = patch_bilinear_B(F.g, F.g, a) - patch_bilinear_B(F.f, F.f, a);

  out.b11_norm = norm_of(out.b11, s);
  out.b12_norm = norm_of(out.b12, s);
  out.b2_norm = norm_of(out.b2, s);
  out.bgh_norm = norm_of(out.bgh, s);
  out.bhh_norm = norm_of(out.bhh, s);
  const PatchNorm gap = patch_hs_norm(out.gap, s);
  out.gap_norm = gap.value;
  out.gap_error_estimate = gap.error_estimate;
  out.identity_defect = ratio(norm_of(out.bhg - (out.b11 + out.b12 - out.b2), s), norm_of(out.bhg, s));
  out.expansion_defect = ratio(norm_of(out.gap + out.bhg + out.bgh + out.bhh, s), out.gap_norm);
  const double lo = std::exp2(spec.n) - 4.0, hi = std::exp2(spec.n) + 4.0;
  out.b11_outside_annulus = out.b11.mass_outside([lo, hi](double x1, double x2) {
    const double r = std::hypot(x1, x2);
    return r >= lo - 1e-12 && r <= hi + 1e-12;
  });
  return out;
}

RiemannLebesgue riemann_lebesgue_check(const PhiProfile& phi, int n) {
  if (n < 1) throw std::invalid_argument("riemann_lebesgue_check: n must be at least 1");
  const FourierLine& sq = phi.square;
  const long W = lattice_per_unit(phi.h) << n;
  // phi^2 cos(w x) has transform (U(tau - w) + U(tau + w)) / 2; its squared
  // norm is (2|U|^2 + 2 Re <U(. - w), U(. + w)>) / 4.
  const double norm2 = std::pow(sq.hs_norm(0.0), 2);
  double cross = 0.0;
  const long len = static_cast<long>(sq.values.size());
  for (long j = sq.origin + W; j < sq.origin + W + len; ++j) {
    const cplx up = sq.value_at(j - W);
    const cplx down = sq.value_at(j + W);
    cross += (up * std::conj(down)).real();
  }
  cross *= phi.h;
  RiemannLebesgue out;
  out.value2 = 0.25 * (2.0 * norm2 + 2.0 * cross);
  out.limit2 = 0.5 * norm2;
  out.rel_dev = std::abs(out.value2 - out.limit2) / out.limit2;
  return out;
}

TorusTransfer to_torus(const FourierPatch& u, const GridSpec& grid) {
  const double h = u.spacing();
  const double qd = grid.wavenumber_unit() / h;
  const long q = std::lround(qd);
  if (q < 1 || std::abs(qd - static_cast<double>(q)) > 1e-9 * qd)
    throw std::invalid_argument("to_torus: the lattice spacing pi/L must be an integer multiple of the patch spacing");
  const FourierPatch c = u.consolidated();
  const double kd = grid.dealias_wavenumber() * (1.0 + 1e-12);
  const double floor_abs = 1e-13 * c.max_abs();
  const int Md = grid.dealias_index();
  TorusTransfer out{SpectralField(grid), 0.0};
  const double side = 2.0 * grid.L;
  const double scale = 2.0 * std::numbers::pi / (side * side);
  for (const Patch& p : c.patches())
    for (int i = 0; i < p.n1; ++i)
      for (int j = 0; j < p.n2; ++j) {
        const long j1 = p.origin[0] + i, j2 = p.origin[1] + j;
        const cplx z = p.at(i, j);
        if (std::abs(z) > floor_abs && (std::abs(h * j1) > kd || std::abs(h * j2) > kd))
          throw BandLimitViolation("to_torus: patch support reaches |xi| = " +
                                   std::to_string(std::max(std::abs(h * j1), std::abs(h * j2))) +
                                   " beyond the dealias wavenumber " + std::to_string(grid.dealias_wavenumber()));
        if (j1 % q != 0 || j2 % q != 0) continue;
        const long m1 = j1 / q, m2 = j2 / q;
        if (std::abs(m1) > Md || std::abs(m2) > Md || (m1 == 0 && m2 == 0)) continue;
        out.field.coeff(static_cast<int>(m1), static_cast<int>(m2)) += scale * z;
      }
  const double patch_l2 = patch_hs_norm(u, 0.0).value;
  out.periodization_error = patch_l2 > 0.0 ? std::abs(hs_norm(out.field, 0.0) - patch_l2) / patch_l2 : 0.0;
  return out;
}

bool torus_feasible(const CounterexampleSpec& spec, const GridSpec& grid) {
  const double qd = grid.wavenumber_unit() / spec.h;
  if (std::abs(qd - std::round(qd)) > 1e-9 * qd || std::round(qd) < 1.0) return false;
  return std::exp2(spec.n) + 2.0 <= grid.dealias_wavenumber();
}

void NormTable::write_csv(std::ostream& os) const {
  os << "n,d_low,d_crit,g2_gap,b11,b12,b2,bgh,full_gap,rem_f,rem_g\r\n";
  auto num = [](double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
  };
  auto opt = [&](const std::optional<double>& x) { return x ? num(*x) : std::string(); };
  for (const NormRow& r : rows) {
    os << r.n << ',' << num(r.d_low) << ',' << num(r.d_crit) << ',' << num(r.g2_gap) << ',' << num(r.b11) << ','
       << num(r.b12) << ',' << num(r.b2) << ',' << num(r.bgh) << ',' << opt(r.full_gap) << ',' << opt(r.rem_f) << ','
       << opt(r.rem_g) << "\r\n";
  }
}

NormTable nonuniform_experiment(const NonuniformConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw std::invalid_argument("n range must satisfy 1 <= n_min <= n_max");
  CounterexampleSpec base{cfg.delta, cfg.alpha, cfg.n_min, cfg.h};
  base.validate();
  const PhiProfile phi = build_phi(cfg.h);

  NormTable table;
  table.delta = cfg.delta;
  table.alpha = cfg.alpha;
  const std::size_t count = static_cast<std::size_t>(cfg.n_max - cfg.n_min + 1);
  table.rows.resize(count);
  const double a = cfg.alpha;
  parallel_for(count, [&](std::size_t i) {
    CounterexampleSpec spec = base;
    spec.n = cfg.n_min + static_cast<int>(i);
    const Forces F = build_forces(spec, phi);
    const SecondIterate S = decompose_second_iterate(spec, phi);
    NormRow& r = table.rows[i];
    r.n = spec.n;
    r.d_low = norm_of(F.h, -a);
    r.d_crit = norm_of(F.h, 2.0 - 4.0 * a);
    r.g2_gap = S.gap_norm;
    r.b11 = S.b11_norm;
    r.b12 = S.b12_norm;
    r.b2 = S.b2_norm;
    r.bgh = S.bgh_norm;
  });

  if (cfg.torus) {
    SolverConfig solver = cfg.torus->solver;
    solver.alpha = a;
    const double s = 2.0 - 2.0 * a;
    for (NormRow& r : table.rows) {
      CounterexampleSpec spec = base;
      spec.n = r.n;
      if (!torus_feasible(spec, cfg.torus->grid)) {
        table.warnings.push_back("n = " + std::to_string(r.n) + ": carrier 2^n + 2 exceeds the dealias wavenumber " +
                                 std::to_string(cfg.torus->grid.dealias_wavenumber()) +
                                 "; torus columns left empty");
        continue;
      }
      const Forces F = build_forces(spec, phi);
      const SpectralField f = to_torus(F.f, cfg.torus->grid).field;
      const SpectralField g = to_torus(F.g, cfg.torus->grid).field;
      const PairGap pg = solve_pair_gap(f, g, solver);
      const SpectralField t2f = picard_theta2(f, a), t2g = picard_theta2(g, a);
      r.full_gap = pg.gap_crit;
      r.gap_low = pg.gap_low;
      r.rem_f = hs_norm(pg.theta_f - picard_theta1(f, a) - t2f, s);
      r.rem_g = hs_norm(pg.theta_g - picard_theta1(g, a) - t2g, s);
      r.torus_g2_gap = hs_norm(t2f - t2g, s);
      const double lower = r.g2_gap - r.d_crit - *r.rem_f - *r.rem_g;
      r.sanity_ok = *r.full_gap >= lower - 1e-6 * std::max(r.g2_gap, r.d_crit);
    }
  }
  return table;
}

double log2_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log2_slope: need two or more points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += std::log2(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (std::log2(y[i]) - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace sqg
