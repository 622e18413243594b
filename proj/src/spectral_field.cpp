#include "sqg/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "sqg/errors.hpp"
#include "sqg/fft.hpp"

namespace sqg {
namespace {

// Samples sit at x_j = -L + j h, so exp(i k x_j) = (-1)^m exp(2 pi i m j / K).
inline double parity(int j1, int j2) { return ((j1 + j2) & 1) ? -1.0 : 1.0; }

}  // namespace

SpectralField::SpectralField(const GridSpec& grid)
    : grid_(grid), data_(static_cast<std::size_t>(grid.K) * static_cast<std::size_t>(grid.K)) {}

SpectralField SpectralField::from_physical(const GridSpec& grid, std::span<const double> samples) {
  const int K = grid.K;
  if (samples.size() != static_cast<std::size_t>(K) * static_cast<std::size_t>(K))
    throw std::invalid_argument("from_physical: expected K*K samples");
  SpectralField out(grid);
  double peak = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out.data_[i] = cplx(samples[i], 0.0);
    peak = std::max(peak, std::abs(samples[i]));
  }
  fft::transform_2d(out.data_, K, K, fft::Direction::forward);
  const double norm = 1.0 / (static_cast<double>(K) * K);
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::log2(static_cast<double>(K)) * peak;
  for (int j1 = 0; j1 < K; ++j1)
    for (int j2 = 0; j2 < K; ++j2) {
      cplx& c = out.data_[static_cast<std::size_t>(j1) * K + j2];
      c *= norm * parity(j1, j2);
      if (std::abs(c) <= floor) c = 0.0;
    }
  out.data_[0] = 0.0;
  return out;
}

SpectralField SpectralField::from_function(const GridSpec& grid, const std::function<double(double, double)>& u) {
  const int K = grid.K;
  std::vector<double> samples(static_cast<std::size_t>(K) * K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) samples[static_cast<std::size_t>(i) * K + j] = u(grid.x(i), grid.x(j));
  return from_physical(grid, samples);
}

std::vector<double> SpectralField::to_physical() const {
  const int K = grid_.K;
  std::vector<cplx> work(data_);
  for (int j1 = 0; j1 < K; ++j1)
    for (int j2 = 0; j2 < K; ++j2) work[static_cast<std::size_t>(j1) * K + j2] *= parity(j1, j2);
  fft::transform_2d(work, K, K, fft::Direction::backward);
  std::vector<double> out(work.size());
  std::transform(work.begin(), work.end(), out.begin(), [](const cplx& z) { return z.real(); });
  return out;
}

bool SpectralField::band_limited_to(int max_index) const {
  const int K = grid_.K;
  for (int j1 = 0; j1 < K; ++j1) {
    const int a1 = std::abs(grid_.mode(j1));
    for (int j2 = 0; j2 < K; ++j2) {
      if (std::max(a1, std::abs(grid_.mode(j2))) > max_index &&
          data_[static_cast<std::size_t>(j1) * K + j2] != cplx(0.0, 0.0))
        return false;
    }
  }
  return true;
}

bool SpectralField::is_dealiased() const { return band_limited_to(grid_.dealias_index()); }

int SpectralField::bandwidth() const {
  const int K = grid_.K;
  int width = 0;
  for (int j1 = 0; j1 < K; ++j1) {
    const int a1 = std::abs(grid_.mode(j1));
    for (int j2 = 0; j2 < K; ++j2)
      if (data_[static_cast<std::size_t>(j1) * K + j2] != cplx(0.0, 0.0))
        width = std::max(width, std::max(a1, std::abs(grid_.mode(j2))));
  }
  return width;
}

SpectralField& SpectralField::dealias() {
  const int K = grid_.K;
  const int md = grid_.dealias_index();
  for (int j1 = 0; j1 < K; ++j1) {
    const int a1 = std::abs(grid_.mode(j1));
    for (int j2 = 0; j2 < K; ++j2)
      if (std::max(a1, std::abs(grid_.mode(j2))) > md) data_[static_cast<std::size_t>(j1) * K + j2] = 0.0;
  }
  return *this;
}

double SpectralField::hermitian_defect() const {
  const int K = grid_.K;
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int j1 = 0; j1 < K; ++j1)
    for (int j2 = 0; j2 < K; ++j2) {
      const int m1 = grid_.mode(j1), m2 = grid_.mode(j2);
      worst = std::max(worst, std::abs(coeff(-m1, -m2) - std::conj(coeff(m1, m2))));
    }
  return worst / scale;
}

SpectralField& SpectralField::symmetrize() {
  const int K = grid_.K;
  std::vector<cplx> out(data_.size());
  for (int j1 = 0; j1 < K; ++j1)
    for (int j2 = 0; j2 < K; ++j2) {
      const int m1 = grid_.mode(j1), m2 = grid_.mode(j2);
      out[static_cast<std::size_t>(j1) * K + j2] = 0.5 * (coeff(m1, m2) + std::conj(coeff(-m1, -m2)));
    }
  data_ = std::move(out);
  data_[0] = 0.0;
  return *this;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

SpectralField& SpectralField::apply_multiplier(const std::function<cplx(double, double)>& mult) {
  const int K = grid_.K;
  const double unit = grid_.wavenumber_unit();
  for (int j1 = 0; j1 < K; ++j1) {
    const double k1 = unit * grid_.mode(j1);
    for (int j2 = 0; j2 < K; ++j2) {
      auto& c = data_[static_cast<std::size_t>(j1) * K + j2];
      if (c == cplx(0.0, 0.0)) continue;
      c *= mult(k1, unit * grid_.mode(j2));
    }
  }
  data_[0] = 0.0;
  return *this;
}

void SpectralField::require_same_grid(const SpectralField& other, const char* what) const {
  if (!(grid_ == other.grid_)) throw GridMismatch(std::string(what) + ": fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

SpectralField& SpectralField::add_scaled(double scale, const SpectralField& other) {
  require_same_grid(other, "add_scaled");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += scale * other.data_[i];
  return *this;
}

double VelocityField::divergence_defect() const {
  const GridSpec& g = v1.grid();
  const int K = g.K;
  const double unit = g.wavenumber_unit();
  double worst = 0.0, scale = 0.0;
  for (int j1 = 0; j1 < K; ++j1)
    for (int j2 = 0; j2 < K; ++j2) {
      const int m1 = g.mode(j1), m2 = g.mode(j2);
      const double k1 = unit * m1, k2 = unit * m2;
      const cplx a = v1.coeff(m1, m2), b = v2.coeff(m1, m2);
      worst = std::max(worst, std::abs(k1 * a + k2 * b));
      scale = std::max(scale, std::hypot(k1, k2) * std::sqrt(std::norm(a) + std::norm(b)));
    }
  return scale == 0.0 ? 0.0 : worst / scale;
}

PhysicalPair to_physical_pair(const SpectralField& a, const SpectralField& b) {
  const GridSpec& g = a.grid();
  if (!(g == b.grid())) throw GridMismatch("to_physical_pair: fields live on different grids");
  const int K = g.K;
  std::vector<cplx> work(a.data().size());
  const auto da = a.data(), db = b.data();
  for (int j1 = 0; j1 < K; ++j1)
    for (int j2 = 0; j2 < K; ++j2) {
      const std::size_t i = static_cast<std::size_t>(j1) * K + j2;
      work[i] = (da[i] + cplx(0.0, 1.0) * db[i]) * parity(j1, j2);
    }
  fft::transform_2d(work, K, K, fft::Direction::backward);
  PhysicalPair out{std::vector<double>(work.size()), std::vector<double>(work.size())};
  for (std::size_t i = 0; i < work.size(); ++i) {
    out.first[i] = work[i].real();
    out.second[i] = work[i].imag();
  }
  return out;
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("inner_product: fields live on different grids");
  const auto da = a.data(), db = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) sum += da[i].real() * db[i].real() + da[i].imag() * db[i].imag();
  const double side = 2.0 * a.grid().L;
  return side * side * sum;
}

}  // namespace sqg
