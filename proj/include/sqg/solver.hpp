#ifndef SQG_SOLVER_HPP
#define SQG_SOLVER_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

enum class InnerMethod { gmres, fixed_point };

struct SolverConfig {
  double alpha = 0.4;
  double inner_tol = 1e-11;
  double outer_tol = 1e-7;
  int max_inner = 400;
  int max_outer = 60;
  int gmres_restart = 40;
  /// Truncation exponents; empty means default_schedule(grid).
  std::vector<double> N_schedule;
  /// Largest admissible |v|_{H^{2-2alpha}} for a linear solve.
  double smallness_threshold = 0.1;
  InnerMethod method = InnerMethod::gmres;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// 1, 2, ..., floor(log2 k_d), then log2 k_d itself when that is not an
/// integer, where k_d is the dealias wavenumber.
std::vector<double> default_schedule(const GridSpec& grid);

/// The velocity is too large for the truncated problem to be coercive.
class SmallnessViolation : public std::runtime_error {
 public:
  SmallnessViolation(double N, double norm, double threshold);
  double N;
  double norm;
  double threshold;
};

/// An iteration cap was reached. Carries the best iterate seen.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, SpectralField best, double residual);
  SpectralField best;
  double residual;
};

/// |v|_{H^s} for a velocity: sqrt(|v1|^2 + |v2|^2).
double velocity_norm(const VelocityField& v, double s);

/// theta + (-Delta)^{-alpha} P_N (v . grad theta). theta must lie in the
/// range of P_N (std::invalid_argument otherwise).
SpectralField apply_lax_milgram_operator(const VelocityField& v, const SpectralField& theta, double N, double alpha);

struct LinearSolveResult {
  SpectralField theta;
  int iterations = 0;
  /// |A theta - b|_{L2} / |b|_{L2} with b = (-Delta)^{-alpha} P_N f.
  double relative_residual = 0.0;
};

/// Solves (-Delta)^alpha theta + P_N(v . grad theta) = P_N f in the range of
/// P_N. The default initial iterate is (-Delta)^{-alpha} P_N f.
/// Throws SmallnessViolation or NonConvergence.
LinearSolveResult linear_solve(const VelocityField& v, const SpectralField& f, double N, const SolverConfig& cfg,
                               const std::optional<SpectralField>& initial = std::nullopt);

struct OuterStep {
  double N = 0.0;
  double h_alpha = 0.0;
  double h_crit = 0.0;
  double diff_h_alpha = 0.0;
  int inner_iters = 0;
  /// Equation residual of this iterate in H^{-alpha}.
  double residual = 0.0;
};

struct SolveReport {
  double alpha = 0.0;
  std::vector<OuterStep> steps;
  bool converged = false;
  /// |(-Delta)^alpha theta + v . grad theta - P_N f|_{H^{-alpha}} at the final N.
  double residual = 0.0;
  /// The same with the Galerkin projection applied to the nonlinear term.
  double galerkin_residual = 0.0;
  double f_h_minus_alpha = 0.0;
  double f_h_crit = 0.0;
  /// |theta|_{H^{2-2alpha}} / |f|_{H^{2-4alpha}}.
  double empirical_c_star = 0.0;
  /// Smallest C with diff_{i+1} <= 0.75 diff_i + C 2^{-alpha N_i / 2} for all i.
  double tail_constant = 0.0;

  [[nodiscard]] std::string to_json() const;
};

struct OuterResult {
  SpectralField theta;
  SolveReport report;
};

/// theta_0 = 0, theta_1 = (-Delta)^{-alpha} P_{N_1} f, then each theta_{i+1}
/// solves the truncated linear problem with v from theta_i, walking the
/// schedule and repeating its last entry until the H^alpha difference falls
/// below outer_tol |f|_{H^{-alpha}}.
OuterResult outer_iterate(const SpectralField& f, const SolverConfig& cfg);

struct Residual {
  SpectralField r_field;
  double r_norm_h_minus_alpha = 0.0;
};

/// r = (-Delta)^alpha theta + v(theta) . grad theta - f.
Residual residual(const SpectralField& theta, const SpectralField& f, double alpha);

/// (-Delta)^{-alpha} a.
SpectralField picard_theta1(const SpectralField& a, double alpha);

/// (-Delta)^{-alpha}[v(theta_1[a]) . grad theta_1[b]]; a, b dealiased.
SpectralField bilinear_B(const SpectralField& a, const SpectralField& b, double alpha);

/// -B[a, a].
SpectralField picard_theta2(const SpectralField& a, double alpha);

struct PairGap {
  double d_low = 0.0;
  double d_crit = 0.0;
  double gap_low = 0.0;
  double gap_crit = 0.0;
  SpectralField theta_f;
  SpectralField theta_g;
};

PairGap solve_pair_gap(const SpectralField& f, const SpectralField& g, const SolverConfig& cfg);

}  // namespace sqg

#endif
