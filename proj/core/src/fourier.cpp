#include "fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace eternal::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Convolver::Convolver(std::size_t M) : M_(M) {
  grid_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * M));
  spec_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * M));
  auto* g = reinterpret_cast<fftw_complex*>(grid_);
  auto* s = reinterpret_cast<fftw_complex*>(spec_);
  std::lock_guard lock(planner_mutex());
  const int n = static_cast<int>(M);
  backward_ = fftw_plan_dft_1d(n, s, g, FFTW_BACKWARD, FFTW_ESTIMATE);
  forward_ = fftw_plan_dft_1d(n, g, s, FFTW_FORWARD, FFTW_ESTIMATE);
}

Convolver::~Convolver() {
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(backward_));
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  }
  fftw_free(grid_);
  fftw_free(spec_);
}

void Convolver::to_grid(std::span<const std::complex<double>> full, std::size_t K) {
  std::fill(spec_, spec_ + M_, std::complex<double>(0.0, 0.0));
  // full holds k = -K..K in order
  for (std::size_t i = 0; i < full.size(); ++i) {
    const long k = static_cast<long>(i) - static_cast<long>(K);
    const std::size_t slot = k >= 0 ? static_cast<std::size_t>(k) : M_ - static_cast<std::size_t>(-k);
    spec_[slot] = full[i];
  }
  fftw_execute(static_cast<fftw_plan>(backward_));
}

void Convolver::square_to_spectrum(std::span<std::complex<double>> full, std::size_t K) {
  for (std::size_t j = 0; j < M_; ++j) grid_[j] *= grid_[j];
  fftw_execute(static_cast<fftw_plan>(forward_));
  const double scale = 1.0 / static_cast<double>(M_);
  for (std::size_t i = 0; i < full.size(); ++i) {
    const long k = static_cast<long>(i) - static_cast<long>(K);
    const std::size_t slot = k >= 0 ? static_cast<std::size_t>(k) : M_ - static_cast<std::size_t>(-k);
    full[i] = spec_[slot] * scale;
  }
}

std::size_t good_fft_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace eternal::detail
