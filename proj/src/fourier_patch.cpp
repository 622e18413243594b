#include "sqg/fourier_patch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/zeta.hpp>

#include "sqg/fft.hpp"

namespace sqg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int good_size(int n) {
  for (int m = std::max(n, 1);; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

// Trapezoid weight of index i in [0, n).
double edge_weight(int i, int n) { return (n > 1 && (i == 0 || i == n - 1)) ? 0.5 : 1.0; }

// Dirichlet beta, sum_k (-1)^k (2k+1)^{-x}. The alternating series is summed
// with the Cohen-Rodriguez Villegas-Zagier acceleration for x > 0; x <= 0
// goes through the functional equation.
double dirichlet_beta(double x) {
  if (x <= 0.0) {
    const double y = 1.0 - x;
    return std::pow(2.0 / std::numbers::pi, y) * std::sin(std::numbers::pi * y / 2.0) * std::tgamma(y) *
           dirichlet_beta(y);
  }
  const int n = 48;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d, sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * std::pow(2.0 * k + 1.0, -x);
    b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
  }
  return sum / d;
}

// Analytic continuation of sum_{m in Z^2, m != 0} |m|^{2s}, which is
// 4 zeta(-s) beta(-s). A lattice sum that skips the origin misses
// -h^{2+2s} times this constant times the integrand's smooth factor at 0.
double lattice_zeta(double s) { return 4.0 * boost::math::zeta(-s) * dirichlet_beta(-s); }

Patch convolve_pair(const Patch& a, const Patch& b, double h) {
  const int m1 = a.n1 + b.n1 - 1, m2 = a.n2 + b.n2 - 1;
  if ((m1 - 1) * h > FourierPatch::kMaxSide * (1.0 + 1e-12) || (m2 - 1) * h > FourierPatch::kMaxSide * (1.0 + 1e-12))
    throw std::length_error("convolve: output box " + std::to_string((m1 - 1) * h) + " x " +
                            std::to_string((m2 - 1) * h) + " exceeds the patch side limit");
  const int p1 = good_size(m1), p2 = good_size(m2);
  std::vector<cplx> A(static_cast<std::size_t>(p1) * p2), B(A.size());
  for (int i = 0; i < a.n1; ++i)
    for (int j = 0; j < a.n2; ++j) A[static_cast<std::size_t>(i) * p2 + j] = a.at(i, j);
  for (int i = 0; i < b.n1; ++i)
    for (int j = 0; j < b.n2; ++j) B[static_cast<std::size_t>(i) * p2 + j] = b.at(i, j);
  fft::transform_2d(A, p1, p2, fft::Direction::forward);
  fft::transform_2d(B, p1, p2, fft::Direction::forward);
  for (std::size_t i = 0; i < A.size(); ++i) A[i] *= B[i];
  fft::transform_2d(A, p1, p2, fft::Direction::backward);
  const double scale = h * h / kTwoPi / (static_cast<double>(p1) * p2);
  Patch out;
  out.origin = {a.origin[0] + b.origin[0], a.origin[1] + b.origin[1]};
  out.n1 = m1;
  out.n2 = m2;
  out.values.resize(static_cast<std::size_t>(m1) * m2);
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j) out.at(i, j) = A[static_cast<std::size_t>(i) * p2 + j] * scale;
  return out;
}

bool all_zero(const std::vector<cplx>& v) {
  return std::all_of(v.begin(), v.end(), [](cplx z) { return z == cplx(0.0, 0.0); });
}

}  // namespace

FourierPatch::FourierPatch(double h) : h_(h) {
  if (!(h > 0.0)) throw std::invalid_argument("FourierPatch: spacing must be positive");
}

FourierPatch FourierPatch::sample(double h, std::array<long, 2> lo, std::array<long, 2> hi,
                                  const std::function<cplx(double, double)>& fn) {
  FourierPatch out(h);
  Patch p;
  p.origin = lo;
  p.n1 = static_cast<int>(hi[0] - lo[0] + 1);
  p.n2 = static_cast<int>(hi[1] - lo[1] + 1);
  if (p.n1 <= 0 || p.n2 <= 0) throw std::invalid_argument("FourierPatch::sample: empty box");
  p.values.resize(static_cast<std::size_t>(p.n1) * p.n2);
  for (int i = 0; i < p.n1; ++i)
    for (int j = 0; j < p.n2; ++j) p.at(i, j) = fn(h * (lo[0] + i), h * (lo[1] + j));
  out.add_patch(std::move(p));
  return out;
}

void FourierPatch::add_patch(Patch p) {
  if (p.n1 <= 0 || p.n2 <= 0 || p.values.size() != static_cast<std::size_t>(p.n1) * p.n2)
    throw std::invalid_argument("FourierPatch: malformed patch");
  patches_.push_back(std::move(p));
}

FourierPatch FourierPatch::multiplied(const std::function<cplx(double, double)>& symbol) const {
  FourierPatch out(*this);
  for (Patch& p : out.patches_)
    for (int i = 0; i < p.n1; ++i)
      for (int j = 0; j < p.n2; ++j) {
        cplx& z = p.at(i, j);
        if (z == cplx(0.0, 0.0)) continue;
        const cplx m = symbol(h_ * (p.origin[0] + i), h_ * (p.origin[1] + j));
        z = (std::isfinite(m.real()) && std::isfinite(m.imag())) ? z * m : cplx(0.0, 0.0);
      }
  return out;
}

FourierPatch FourierPatch::scaled(cplx factor) const {
  FourierPatch out(*this);
  for (Patch& p : out.patches_)
    for (cplx& z : p.values) z *= factor;
  return out;
}

FourierPatch FourierPatch::shifted(std::array<long, 2> shift) const {
  FourierPatch out(*this);
  for (Patch& p : out.patches_) {
    p.origin[0] += shift[0];
    p.origin[1] += shift[1];
  }
  return out;
}

FourierPatch& FourierPatch::operator+=(const FourierPatch& other) {
  if (patches_.empty() && h_ == 0.0) h_ = other.h_;
  if (std::abs(other.h_ - h_) > 1e-15 * h_ && !other.patches_.empty())
    throw std::invalid_argument("FourierPatch: spacings differ");
  patches_.insert(patches_.end(), other.patches_.begin(), other.patches_.end());
  return *this;
}

FourierPatch FourierPatch::consolidated() const {
  const std::size_t n = patches_.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto overlaps = [](const Patch& a, const Patch& b) {
    return a.origin[0] < b.origin[0] + b.n1 && b.origin[0] < a.origin[0] + a.n1 && a.origin[1] < b.origin[1] + b.n2 &&
           b.origin[1] < a.origin[1] + a.n2;
  };
  // Merging enlarges boxes, so repeat until no two groups overlap.
  std::vector<Patch> boxes = patches_;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::size_t ri = find(i), rj = find(j);
        if (ri == rj || !overlaps(boxes[ri], boxes[rj])) continue;
        Patch& a = boxes[ri];
        const Patch& b = boxes[rj];
        const long lo1 = std::min(a.origin[0], b.origin[0]), lo2 = std::min(a.origin[1], b.origin[1]);
        const long hi1 = std::max(a.origin[0] + a.n1, b.origin[0] + b.n1);
        const long hi2 = std::max(a.origin[1] + a.n2, b.origin[1] + b.n2);
        a.origin = {lo1, lo2};
        a.n1 = static_cast<int>(hi1 - lo1);
        a.n2 = static_cast<int>(hi2 - lo2);
        parent[rj] = ri;
        changed = true;
      }
  }
  FourierPatch out(h_);
  for (std::size_t r = 0; r < n; ++r) {
    if (find(r) != r) continue;
    Patch merged;
    merged.origin = boxes[r].origin;
    merged.n1 = boxes[r].n1;
    merged.n2 = boxes[r].n2;
    merged.values.assign(static_cast<std::size_t>(merged.n1) * merged.n2, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      if (find(k) != r) continue;
      const Patch& p = patches_[k];
      const long d1 = p.origin[0] - merged.origin[0], d2 = p.origin[1] - merged.origin[1];
      for (int i = 0; i < p.n1; ++i)
        for (int j = 0; j < p.n2; ++j) merged.at(static_cast<int>(d1 + i), static_cast<int>(d2 + j)) += p.at(i, j);
    }
    out.patches_.push_back(std::move(merged));
  }
  return out;
}

cplx FourierPatch::value_at(long j1, long j2) const {
  cplx sum = 0.0;
  for (const Patch& p : patches_)
    if (p.contains(j1, j2)) sum += p.at(static_cast<int>(j1 - p.origin[0]), static_cast<int>(j2 - p.origin[1]));
  return sum;
}

double FourierPatch::max_abs() const {
  double m = 0.0;
  for (const Patch& p : consolidated().patches_)
    for (cplx z : p.values) m = std::max(m, std::abs(z));
  return m;
}

double FourierPatch::hermitian_defect() const {
  const FourierPatch c = consolidated();
  double m = 0.0, d = 0.0;
  for (const Patch& p : c.patches_)
    for (int i = 0; i < p.n1; ++i)
      for (int j = 0; j < p.n2; ++j) {
        const cplx z = p.at(i, j);
        m = std::max(m, std::abs(z));
        d = std::max(d, std::abs(c.value_at(-(p.origin[0] + i), -(p.origin[1] + j)) - std::conj(z)));
      }
  return m > 0.0 ? d / m : 0.0;
}

double FourierPatch::mass_outside(const std::function<bool(double, double)>& inside) const {
  const FourierPatch c = consolidated();
  double m = 0.0, out = 0.0;
  for (const Patch& p : c.patches_)
    for (int i = 0; i < p.n1; ++i)
      for (int j = 0; j < p.n2; ++j) {
        const double a = std::abs(p.at(i, j));
        m = std::max(m, a);
        if (a > 0.0 && !inside(h_ * (p.origin[0] + i), h_ * (p.origin[1] + j))) out = std::max(out, a);
      }
  return m > 0.0 ? out / m : 0.0;
}

std::array<long, 4> FourierPatch::bounding_box() const {
  if (patches_.empty()) return {0, 0, -1, -1};
  std::array<long, 4> b{patches_[0].origin[0], patches_[0].origin[1], patches_[0].origin[0], patches_[0].origin[1]};
  for (const Patch& p : patches_) {
    b[0] = std::min(b[0], p.origin[0]);
    b[1] = std::min(b[1], p.origin[1]);
    b[2] = std::max(b[2], p.origin[0] + p.n1 - 1);
    b[3] = std::max(b[3], p.origin[1] + p.n2 - 1);
  }
  return b;
}

FourierPatch convolve(const FourierPatch& a, const FourierPatch& b) {
  if (std::abs(a.spacing() - b.spacing()) > 1e-15 * a.spacing())
    throw std::invalid_argument("convolve: spacings differ");
  FourierPatch out(a.spacing());
  for (const Patch& pa : a.patches()) {
    if (all_zero(pa.values)) continue;
    for (const Patch& pb : b.patches()) {
      if (all_zero(pb.values)) continue;
      out.add_patch(convolve_pair(pa, pb, a.spacing()));
    }
  }
  return out;
}

PatchNorm patch_hs_norm(const FourierPatch& u, double s) {
  const FourierPatch c = u.consolidated();
  const double h = c.spacing();
  double fine = 0.0, coarse = 0.0;
  double origin_fine = 0.0, origin_coarse = 0.0;
  for (const Patch& p : c.patches()) {
    if (s <= -1.0 && p.contains(0, 0))
      throw std::domain_error("patch_hs_norm: |xi|^{2s} is not integrable at the origin for s = " + std::to_string(s));
    // The 2h subgrid uses even lattice indices; its trapezoid edges are the
    // first and last even index inside the patch.
    const long e1 = p.origin[0] + (p.origin[0] & 1L), e2 = p.origin[1] + (p.origin[1] & 1L);
    const int c1 = p.n1 > (e1 - p.origin[0]) ? static_cast<int>((p.origin[0] + p.n1 - 1 - e1) / 2 + 1) : 0;
    const int c2 = p.n2 > (e2 - p.origin[1]) ? static_cast<int>((p.origin[1] + p.n2 - 1 - e2) / 2 + 1) : 0;
    for (int i = 0; i < p.n1; ++i)
      for (int j = 0; j < p.n2; ++j) {
        const long j1 = p.origin[0] + i, j2 = p.origin[1] + j;
        const double a = std::norm(p.at(i, j));
        if (a == 0.0) continue;
        const double wf = edge_weight(i, p.n1) * edge_weight(j, p.n2);
        const double wc = edge_weight(static_cast<int>((j1 - e1) / 2), c1) * edge_weight(static_cast<int>((j2 - e2) / 2), c2);
        if (j1 == 0 && j2 == 0) {
          origin_fine = wf * a;
          origin_coarse = wc * a;
          continue;
        }
        const double x1 = h * j1, x2 = h * j2;
        const double term = std::pow(x1 * x1 + x2 * x2, s) * a;
        fine += wf * term;
        if (((j1 | j2) & 1L) == 0) coarse += wc * term;
      }
  }
  // Punctured trapezoid plus the singularity correction at the origin; for
  // s = 0 the correction is exactly the origin's own trapezoid term.
  double zeta = 0.0;
  if (origin_fine > 0.0 || origin_coarse > 0.0) zeta = s == 0.0 ? -1.0 : lattice_zeta(s);
  const double H = 2.0 * h;
  const double fine_sq = fine * h * h - std::pow(h, 2.0 + 2.0 * s) * zeta * origin_fine;
  const double coarse_sq = coarse * H * H - std::pow(H, 2.0 + 2.0 * s) * zeta * origin_coarse;
  PatchNorm out;
  out.value = std::sqrt(std::max(0.0, fine_sq));
  out.error_estimate = std::abs(out.value - std::sqrt(std::max(0.0, coarse_sq)));
  return out;
}

cplx FourierLine::value_at(long j) const {
  const long i = j - origin;
  return (i >= 0 && i < static_cast<long>(values.size())) ? values[static_cast<std::size_t>(i)] : cplx(0.0, 0.0);
}

FourierLine FourierLine::multiplied(const std::function<cplx(double)>& symbol) const {
  FourierLine out(*this);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (out.values[i] != cplx(0.0, 0.0)) out.values[i] *= symbol(tau(i));
  return out;
}

FourierLine FourierLine::shifted(long shift) const {
  FourierLine out(*this);
  out.origin += shift;
  return out;
}

double FourierLine::hs_norm(double s) const {
  double sum = 0.0, at_zero = 0.0;
  const int n = static_cast<int>(values.size());
  for (int i = 0; i < n; ++i) {
    const double a = std::norm(values[static_cast<std::size_t>(i)]);
    if (origin + i == 0) {
      at_zero = edge_weight(i, n) * a;
      continue;
    }
    sum += edge_weight(i, n) * std::pow(std::abs(tau(static_cast<std::size_t>(i))), 2.0 * s) * a;
  }
  if (at_zero > 0.0 && s <= -0.5)
    throw std::domain_error("FourierLine::hs_norm: |tau|^{2s} is not integrable at the origin for s = " + std::to_string(s));
  // 1D analogue of the punctured-lattice correction: sum_{m != 0} |m|^{2s} = 2 zeta(-2s).
  const double zeta = at_zero > 0.0 ? (s == 0.0 ? -1.0 : 2.0 * boost::math::zeta(-2.0 * s)) : 0.0;
  return std::sqrt(std::max(0.0, sum * h - std::pow(h, 1.0 + 2.0 * s) * zeta * at_zero));
}

FourierLine convolve(const FourierLine& a, const FourierLine& b) {
  if (std::abs(a.h - b.h) > 1e-15 * a.h) throw std::invalid_argument("convolve: spacings differ");
  const std::size_t m = a.values.size() + b.values.size() - 1;
  const int p = good_size(static_cast<int>(m));
  std::vector<cplx> A(static_cast<std::size_t>(p)), B(A.size());
  std::copy(a.values.begin(), a.values.end(), A.begin());
  std::copy(b.values.begin(), b.values.end(), B.begin());
  fft::transform_1d(A, fft::Direction::forward);
  fft::transform_1d(B, fft::Direction::forward);
  for (std::size_t i = 0; i < A.size(); ++i) A[i] *= B[i];
  fft::transform_1d(A, fft::Direction::backward);
  FourierLine out;
  out.h = a.h;
  out.origin = a.origin + b.origin;
  out.values.resize(m);
  const double scale = a.h / std::sqrt(kTwoPi) / p;
  for (std::size_t i = 0; i < m; ++i) out.values[i] = A[i] * scale;
  return out;
}

FourierLine add(const FourierLine& a, const FourierLine& b) {
  if (a.values.empty()) return b;
  if (b.values.empty()) return a;
  FourierLine out;
  out.h = a.h;
  out.origin = std::min(a.origin, b.origin);
  const long end = std::max(a.origin + static_cast<long>(a.values.size()), b.origin + static_cast<long>(b.values.size()));
  out.values.resize(static_cast<std::size_t>(end - out.origin));
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const long j = out.origin + static_cast<long>(i);
    out.values[i] = a.value_at(j) + b.value_at(j);
  }
  return out;
}

Patch outer(const FourierLine& a, const FourierLine& b) {
  Patch p;
  p.origin = {a.origin, b.origin};
  p.n1 = static_cast<int>(a.values.size());
  p.n2 = static_cast<int>(b.values.size());
  p.values.resize(static_cast<std::size_t>(p.n1) * p.n2);
  for (int i = 0; i < p.n1; ++i)
    for (int j = 0; j < p.n2; ++j) p.at(i, j) = a.values[static_cast<std::size_t>(i)] * b.values[static_cast<std::size_t>(j)];
  return p;
}

}  // namespace sqg
