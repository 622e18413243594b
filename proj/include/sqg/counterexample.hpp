#ifndef SQG_COUNTEREXAMPLE_HPP
#define SQG_COUNTEREXAMPLE_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sqg/fourier_patch.hpp"
#include "sqg/grid.hpp"
#include "sqg/solver.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

/// Smooth step S(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) on (0, 1).
double smooth_step(double t);
/// Even profile: 1 on |tau| <= 1, 0 on |tau| >= 2, 1 - S(|tau| - 1) between.
double phi_hat(double tau);

/// The 1D profile phi through its unitary transform phi_hat / sqrt(2 pi),
/// sampled on [-2, 2] with spacing h.
struct PhiProfile {
  double h = 0.0;
  FourierLine phi;
  FourierLine derivative;  ///< phi'
  FourierLine square;      ///< phi^2
  FourierLine phi_dphi;    ///< phi phi'
  double l4_norm = 0.0;    ///< |phi|_{L4(R)}
  double square_h1 = 0.0;  ///< |phi^2|_{H^1(R)}
};

/// Requires h <= 1/16 with 1/h an integer (carriers 2^n then sit on the
/// lattice). Throws std::invalid_argument otherwise.
PhiProfile build_phi(double h);

struct CounterexampleSpec {
  double delta = 0.02;
  double alpha = 0.4;
  int n = 4;
  double h = 1.0 / 32.0;

  /// delta >= 0, 0 < alpha < 1/2, n >= 1.
  void validate() const;
};

struct Forces {
  FourierPatch f;
  FourierPatch g;
  FourierPatch h;
};

/// g_n = delta 2^{-(2-2 alpha) n} (-Delta)^alpha [phi(x1) phi(x2) sin(2^n x1)],
/// h_n = delta 2^{-(1-2 alpha) n} (-Delta)^{alpha+1/2} [phi(x1) phi(x2)],
/// f_n = g_n + h_n.
Forces build_forces(const CounterexampleSpec& spec, const PhiProfile& phi);

/// Picard-level operations on the patch backend.
FourierPatch patch_fractional_laplacian(const FourierPatch& u, double s);
/// (-Delta)^{-alpha}[v(theta_1[a]) . grad theta_1[b]].
FourierPatch patch_bilinear_B(const FourierPatch& a, const FourierPatch& b, double alpha);

struct SecondIterate {
  FourierPatch b11;  ///< separable route
  FourierPatch b12;  ///< separable route
  FourierPatch b2;   ///< (-Delta)^{-alpha}[d1 R theta_1[h] d2 theta_1[g]] by 2D convolution
  FourierPatch bhg;  ///< B[h, g] by 2D convolution
  FourierPatch bgh;
  FourierPatch bhh;
  FourierPatch gap;  ///< theta_2[f] - theta_2[g] = -B[f, f] + B[g, g]

  double b11_norm = 0.0;
  double b12_norm = 0.0;
  double b2_norm = 0.0;
  double bgh_norm = 0.0;
  double bhh_norm = 0.0;
  double gap_norm = 0.0;
  double gap_error_estimate = 0.0;
  /// |B[h, g] - (b11 + b12 - b2)| / |B[h, g]|.
  double identity_defect = 0.0;
  /// |gap + B[h, g] + B[g, h] + B[h, h]| / |gap|.
  double expansion_defect = 0.0;
  /// Relative magnitude of b11 outside 2^n - 4 <= |xi| <= 2^n + 4.
  double b11_outside_annulus = 0.0;
};

/// All norms in H^{2-2 alpha}.
SecondIterate decompose_second_iterate(const CounterexampleSpec& spec, const PhiProfile& phi);

struct RiemannLebesgue {
  double value2 = 0.0;  ///< \int phi^4 cos^2(2^n x) dx
  double limit2 = 0.0;  ///< |phi|_{L4}^4 / 2
  double rel_dev = 0.0;
};

RiemannLebesgue riemann_lebesgue_check(const PhiProfile& phi, int n);

struct TorusTransfer {
  SpectralField field;
  /// |torus L2 norm - patch L2 norm| / patch L2 norm.
  double periodization_error = 0.0;
};

/// Samples the transform on the torus lattice: c_m = 2 pi U(k_m) / (2L)^2.
/// Requires pi/L to be an integer multiple of the patch spacing; throws
/// BandLimitViolation when the support leaves the dealias box.
TorusTransfer to_torus(const FourierPatch& u, const GridSpec& grid);

/// Whether f_n fits inside the dealias box of the grid.
bool torus_feasible(const CounterexampleSpec& spec, const GridSpec& grid);

struct NormRow {
  int n = 0;
  double d_low = 0.0;
  double d_crit = 0.0;
  double g2_gap = 0.0;
  double b11 = 0.0;
  double b12 = 0.0;
  double b2 = 0.0;
  double bgh = 0.0;
  std::optional<double> full_gap;
  std::optional<double> rem_f;
  std::optional<double> rem_g;
  /// Torus-side extras, present with full_gap.
  std::optional<double> gap_low;
  std::optional<double> torus_g2_gap;
  /// full_gap >= g2_gap - d_crit - rem_f - rem_g, the triangle inequality
  /// behind the non-uniform continuity argument.
  std::optional<bool> sanity_ok;
};

struct NormTable {
  double delta = 0.0;
  double alpha = 0.0;
  std::vector<NormRow> rows;
  std::vector<std::string> warnings;

  /// RFC-4180 CSV with columns n, d_low, d_crit, g2_gap, b11, b12, b2, bgh,
  /// full_gap, rem_f, rem_g; unpopulated cells are empty.
  void write_csv(std::ostream& os) const;
};

struct TorusOptions {
  GridSpec grid;
  SolverConfig solver;
};

struct NonuniformConfig {
  int n_min = 3;
  int n_max = 10;
  double delta = 0.02;
  double alpha = 0.4;
  double h = 1.0 / 32.0;
  std::optional<TorusOptions> torus;
};

/// Patch columns for every n; torus columns for torus-feasible n (the others
/// are left empty with a warning).
NormTable nonuniform_experiment(const NonuniformConfig& cfg);

/// Least-squares slope of log2(y) against x.
double log2_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sqg

#endif
