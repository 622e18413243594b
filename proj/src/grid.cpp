#include "sqg/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqg {

int GridSpec::dealias_index() const {
  return static_cast<int>(std::floor(dealias_fraction * K / 2.0 + 1e-12));
}

GridSpec make_grid(int K, double L, double dealias_fraction) {
  if (K < 16 || (K & (K - 1)) != 0)
    throw std::invalid_argument("make_grid: K must be a power of two >= 16, got " + std::to_string(K));
  if (!(L > 0.0) || !std::isfinite(L))
    throw std::invalid_argument("make_grid: half-period L must be positive, got " + std::to_string(L));
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw std::invalid_argument("make_grid: dealias_fraction must lie in (0, 1]");
  return GridSpec{K, L, dealias_fraction};
}

}  // namespace sqg
