#include "sqg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sqg/operators.hpp"
#include "sqg/sobolev.hpp"

namespace sqg {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void require_truncatable(const GridSpec& g, double N) {
  const double radius = std::exp2(N);
  if (radius > g.dealias_wavenumber() * (1.0 + 1e-12))
    throw std::invalid_argument("truncation 2^N = " + fmt(radius) + " exceeds the dealias wavenumber " +
                                fmt(g.dealias_wavenumber()));
}

// (-Delta)^{-alpha} P_N (v . grad theta)
SpectralField perturbation(const Advection& adv, const SpectralField& theta, double radius, double alpha) {
  return fractional_laplacian(project_radius(adv.apply(theta), radius), -alpha);
}

struct Krylov {
  const Advection& adv;
  double radius;
  double alpha;
  SpectralField apply(const SpectralField& x) const { return x + perturbation(adv, x, radius, alpha); }
};

double l2(const SpectralField& u) { return std::sqrt(std::max(0.0, inner_product(u, u))); }

LinearSolveResult gmres(const Krylov& op, const SpectralField& b, SpectralField x, const SolverConfig& cfg) {
  const double bnorm = l2(b);
  LinearSolveResult out;
  if (bnorm == 0.0) {
    out.theta = SpectralField(b.grid());
    return out;
  }
  const double target = cfg.inner_tol * bnorm;
  const int m = cfg.gmres_restart;
  int iters = 0;
  SpectralField best = x;
  double best_res = std::numeric_limits<double>::infinity();

  while (true) {
    SpectralField r = b - op.apply(x);
    const double beta = l2(r);
    if (beta < best_res) {
      best_res = beta;
      best = x;
    }
    if (beta <= target) break;
    if (iters >= cfg.max_inner)
      throw NonConvergence("linear_solve: GMRES reached " + std::to_string(cfg.max_inner) +
                               " iterations, relative residual " + fmt(best_res / bnorm),
                           best, best_res / bnorm);

    std::vector<SpectralField> V;
    V.reserve(m + 1);
    V.push_back(r * (1.0 / beta));
    std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
    g[0] = beta;
    int j = 0;
    for (; j < m && iters < cfg.max_inner; ++j) {
      ++iters;
      SpectralField w = op.apply(V[j]);
      for (int i = 0; i <= j; ++i) {
        H[i][j] = inner_product(w, V[i]);
        w.add_scaled(-H[i][j], V[i]);
      }
      H[j + 1][j] = l2(w);
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
        H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t;
      }
      const double denom = std::hypot(H[j][j], H[j + 1][j]);
      cs[j] = H[j][j] / denom;
      sn[j] = H[j + 1][j] / denom;
      const double hjj1 = H[j + 1][j];
      H[j][j] = denom;
      H[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      const bool breakdown = hjj1 <= 1e-300;
      if (!breakdown) V.push_back(w * (1.0 / hjj1));
      if (std::abs(g[j + 1]) <= 0.5 * target || breakdown) {
        ++j;
        break;
      }
    }
    std::vector<double> y(j, 0.0);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < j; ++k) s -= H[i][k] * y[k];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < j; ++i) x.add_scaled(y[i], V[i]);
  }
  out.theta = std::move(best);
  out.iterations = iters;
  out.relative_residual = best_res / bnorm;
  return out;
}

LinearSolveResult fixed_point(const Krylov& op, const SpectralField& b, SpectralField x, const SolverConfig& cfg) {
  const double bnorm = l2(b);
  LinearSolveResult out;
  if (bnorm == 0.0) {
    out.theta = SpectralField(b.grid());
    return out;
  }
  SpectralField best = x;
  double best_res = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    SpectralField next = b - perturbation(op.adv, x, op.radius, op.alpha);
    const double res = l2(next - x);  // equals |A x - b|
    if (res < best_res) {
      best_res = res;
      best = x;
    }
    if (res <= cfg.inner_tol * bnorm) {
      out.iterations = it;
      break;
    }
    if (it >= cfg.max_inner || !std::isfinite(res))
      throw NonConvergence("linear_solve: fixed-point iteration reached " + std::to_string(cfg.max_inner) +
                               " iterations, relative residual " + fmt(best_res / bnorm),
                           best, best_res / bnorm);
    x = std::move(next);
  }
  out.theta = std::move(best);
  out.relative_residual = best_res / bnorm;
  return out;
}

SpectralField galerkin_residual_field(const SpectralField& theta, const SpectralField& f, double N, double alpha) {
  SpectralField r = fractional_laplacian(theta, alpha);
  r += project_low(advect(velocity_from_theta(theta), theta), N);
  r -= project_low(f, N);
  return r;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw std::invalid_argument("alpha must lie in (0, 1/2]");
  if (!(inner_tol > 0.0)) throw std::invalid_argument("inner_tol must be positive");
  if (!(outer_tol > 0.0)) throw std::invalid_argument("outer_tol must be positive");
  if (max_inner < 1) throw std::invalid_argument("max_inner must be at least 1");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be at least 1");
  if (gmres_restart < 1) throw std::invalid_argument("gmres_restart must be at least 1");
  if (!(smallness_threshold > 0.0)) throw std::invalid_argument("smallness_threshold must be positive");
  for (std::size_t i = 1; i < N_schedule.size(); ++i)
    if (!(N_schedule[i] > N_schedule[i - 1])) throw std::invalid_argument("N_schedule must be strictly increasing");
}

std::vector<double> default_schedule(const GridSpec& grid) {
  const double top = std::log2(grid.dealias_wavenumber());
  std::vector<double> out;
  for (int N = 1; N <= static_cast<int>(std::floor(top + 1e-12)); ++N) out.push_back(N);
  if (out.empty() || top - out.back() > 1e-9) out.push_back(top);
  return out;
}

SmallnessViolation::SmallnessViolation(double N_, double norm_, double threshold_)
    : std::runtime_error("smallness gate: |v|_{H^{2-2alpha}} = " + fmt(norm_) + " exceeds the threshold " +
                         fmt(threshold_) + " at N = " + fmt(N_)),
      N(N_),
      norm(norm_),
      threshold(threshold_) {}

NonConvergence::NonConvergence(const std::string& what, SpectralField best_, double residual_)
    : std::runtime_error(what), best(std::move(best_)), residual(residual_) {}

double velocity_norm(const VelocityField& v, double s) {
  const double a = hs_norm(v.v1, s), b = hs_norm(v.v2, s);
  return std::sqrt(a * a + b * b);
}

SpectralField apply_lax_milgram_operator(const VelocityField& v, const SpectralField& theta, double N, double alpha) {
  require_truncatable(theta.grid(), N);
  const double radius = std::exp2(N);
  if (!in_radius(theta, radius))
    throw std::invalid_argument("apply_lax_milgram_operator: theta is not in the range of P_N");
  Advection adv(v);
  return theta + perturbation(adv, theta, radius, alpha);
}

LinearSolveResult linear_solve(const VelocityField& v, const SpectralField& f, double N, const SolverConfig& cfg,
                               const std::optional<SpectralField>& initial) {
  cfg.validate();
  require_truncatable(f.grid(), N);
  const double vn = velocity_norm(v, 2.0 - 2.0 * cfg.alpha);
  if (vn > cfg.smallness_threshold) throw SmallnessViolation(N, vn, cfg.smallness_threshold);

  const double radius = std::exp2(N);
  const SpectralField b = fractional_laplacian(project_radius(f, radius), -cfg.alpha);
  SpectralField x0 = b;
  if (initial) {
    if (!(initial->grid() == f.grid())) throw std::invalid_argument("linear_solve: initial iterate on another grid");
    x0 = project_radius(*initial, radius);
  }
  Advection adv(v);
  const Krylov op{adv, radius, cfg.alpha};
  return cfg.method == InnerMethod::gmres ? gmres(op, b, std::move(x0), cfg) : fixed_point(op, b, std::move(x0), cfg);
}

std::string SolveReport::to_json() const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["converged"] = converged;
  j["residual"] = residual;
  j["galerkin_residual"] = galerkin_residual;
  j["f_h_minus_alpha"] = f_h_minus_alpha;
  j["f_h_crit"] = f_h_crit;
  j["empirical_c_star"] = empirical_c_star;
  j["tail_constant"] = tail_constant;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : steps)
    arr.push_back({{"n", s.N},
                   {"h_alpha", s.h_alpha},
                   {"h_crit", s.h_crit},
                   {"diff_h_alpha", s.diff_h_alpha},
                   {"inner_iters", s.inner_iters},
                   {"residual", s.residual}});
  j["steps"] = std::move(arr);
  return j.dump(2);
}

OuterResult outer_iterate(const SpectralField& f, const SolverConfig& cfg) {
  cfg.validate();
  const GridSpec& grid = f.grid();
  const double alpha = cfg.alpha;
  const double s_crit = 2.0 - 2.0 * alpha;
  const std::vector<double> schedule = cfg.N_schedule.empty() ? default_schedule(grid) : cfg.N_schedule;
  if (schedule.empty()) throw std::invalid_argument("N_schedule is empty");
  for (double N : schedule) require_truncatable(grid, N);

  OuterResult out;
  SolveReport& rep = out.report;
  rep.alpha = alpha;
  rep.f_h_minus_alpha = hs_norm(f, -alpha);
  rep.f_h_crit = hs_norm(f, 2.0 - 4.0 * alpha);
  const double target = cfg.outer_tol * rep.f_h_minus_alpha;

  auto record = [&](double N, const SpectralField& theta, double diff, int iters) {
    OuterStep s;
    s.N = N;
    s.h_alpha = hs_norm(theta, alpha);
    s.h_crit = hs_norm(theta, s_crit);
    s.diff_h_alpha = diff;
    s.inner_iters = iters;
    s.residual = residual(theta, project_low(f, N), alpha).r_norm_h_minus_alpha;
    rep.steps.push_back(s);
  };

  SpectralField theta = fractional_laplacian(project_low(f, schedule[0]), -alpha);
  record(schedule[0], theta, hs_norm(theta, alpha), 0);

  double N_last = schedule[0];
  bool done = f.is_zero();
  for (std::size_t idx = 1; !done; ++idx) {
    const double N = idx < schedule.size() ? schedule[idx] : schedule.back();
    if (static_cast<int>(idx) >= cfg.max_outer) {
      const double r = residual(theta, project_low(f, N_last), alpha).r_norm_h_minus_alpha;
      throw NonConvergence("outer_iterate: reached " + std::to_string(cfg.max_outer) + " outer steps, residual " + fmt(r),
                           theta, r);
    }
    const VelocityField v = velocity_from_theta(theta);
    const double vn = velocity_norm(v, s_crit);
    if (vn > cfg.smallness_threshold) throw SmallnessViolation(N, vn, cfg.smallness_threshold);
    LinearSolveResult lin = linear_solve(v, f, N, cfg, theta);
    const double diff = hs_norm(lin.theta - theta, alpha);
    theta = std::move(lin.theta);
    N_last = N;
    record(N, theta, diff, lin.iterations);
    if (idx + 1 >= schedule.size() && diff <= target) {
      const double rg = hs_norm(galerkin_residual_field(theta, f, N, alpha), -alpha);
      done = rg <= target;
    }
  }

  rep.residual = residual(theta, project_low(f, N_last), alpha).r_norm_h_minus_alpha;
  rep.galerkin_residual = hs_norm(galerkin_residual_field(theta, f, N_last, alpha), -alpha);
  rep.converged = true;
  rep.empirical_c_star = rep.f_h_crit > 0.0 ? hs_norm(theta, s_crit) / rep.f_h_crit : 0.0;
  for (std::size_t i = 0; i + 1 < rep.steps.size(); ++i) {
    const double excess = rep.steps[i + 1].diff_h_alpha - 0.75 * rep.steps[i].diff_h_alpha;
    rep.tail_constant = std::max(rep.tail_constant, excess / std::exp2(-alpha * rep.steps[i].N / 2.0));
  }
  out.theta = std::move(theta);
  return out;
}

Residual residual(const SpectralField& theta, const SpectralField& f, double alpha) {
  Residual out;
  out.r_field = fractional_laplacian(theta, alpha);
  out.r_field += advect(velocity_from_theta(theta), theta);
  out.r_field -= f;
  out.r_norm_h_minus_alpha = hs_norm(out.r_field, -alpha);
  return out;
}

SpectralField picard_theta1(const SpectralField& a, double alpha) { return fractional_laplacian(a, -alpha); }

SpectralField bilinear_B(const SpectralField& a, const SpectralField& b, double alpha) {
  const SpectralField ta = picard_theta1(a, alpha);
  const SpectralField tb = picard_theta1(b, alpha);
  return fractional_laplacian(advect(velocity_from_theta(ta), tb), -alpha);
}

SpectralField picard_theta2(const SpectralField& a, double alpha) { return bilinear_B(a, a, alpha) * -1.0; }

PairGap solve_pair_gap(const SpectralField& f, const SpectralField& g, const SolverConfig& cfg) {
  PairGap out;
  const double alpha = cfg.alpha;
  const SpectralField d = f - g;
  out.d_low = hs_norm(d, -alpha);
  out.d_crit = hs_norm(d, 2.0 - 4.0 * alpha);
  out.theta_f = outer_iterate(f, cfg).theta;
  out.theta_g = outer_iterate(g, cfg).theta;
  const SpectralField gap = out.theta_f - out.theta_g;
  out.gap_low = hs_norm(gap, alpha);
  out.gap_crit = hs_norm(gap, 2.0 - 2.0 * alpha);
  return out;
}

}  // namespace sqg
