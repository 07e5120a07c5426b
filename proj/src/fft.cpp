#include "nonkp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace nonkp::fft {
namespace {

using PlanKey = std::tuple<int, int, int, bool>;  // rank, n0, n1, forward

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::span<const int> shape, Direction dir) {
    const int rank = static_cast<int>(shape.size());
    const PlanKey key{rank, shape[0], rank > 1 ? shape[1] : 0, dir == Direction::Forward};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int n : shape) total *= static_cast<std::size_t>(n);
    std::vector<Complex> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    // FFTW_ESTIMATE keeps plans (and therefore results) reproducible run to run.
    fftw_plan plan = fftw_plan_dft(rank, shape.data(), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void execute(std::span<Complex> data, std::span<const int> shape, Direction dir) {
  if (shape.empty() || shape.size() > 2) {
    throw std::invalid_argument("fft: only 1D and 2D transforms are supported");
  }
  std::size_t total = 1;
  for (int n : shape) {
    if (n <= 0) throw std::invalid_argument("fft: extents must be positive");
    total *= static_cast<std::size_t>(n);
  }
  if (total != data.size()) throw std::invalid_argument("fft: data size does not match shape");

  fftw_plan plan = cache().get(shape, dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace nonkp::fft
