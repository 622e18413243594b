#include "sqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sqg::fft {
namespace {

// The FFTW planner is not thread-safe; execution with new-array functions is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n1, int n2, Direction dir) {
    const auto key = std::make_tuple(n1, n2, dir == Direction::forward);
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t count = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
    if (buf == nullptr) throw std::bad_alloc();
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = n1 == 1 ? fftw_plan_dft_1d(n2, buf, buf, sign, flags)
                             : fftw_plan_dft_2d(n1, n2, buf, buf, sign, flags);
    fftw_free(buf);
    if (plan == nullptr) throw std::runtime_error("fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void transform_2d(std::span<cplx> data, int n1, int n2, Direction dir) {
  if (n1 <= 0 || n2 <= 0 || data.size() != static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2))
    throw std::invalid_argument("transform_2d: size mismatch");
  fftw_plan plan = cache().get(n1, n2, dir);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

void transform_1d(std::span<cplx> data, Direction dir) {
  if (data.empty()) return;
  fftw_plan plan = cache().get(1, static_cast<int>(data.size()), dir);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace sqg::fft
