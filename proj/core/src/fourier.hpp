#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace eternal::detail {

/// Pseudo-spectral squaring on a uniform grid of M points over [0, 1).
/// Coefficients are full Fourier c_k, k in [-K, K], stored at slot k mod M.
class Convolver {
 public:
  explicit Convolver(std::size_t M);
  ~Convolver();
  Convolver(const Convolver&) = delete;
  Convolver& operator=(const Convolver&) = delete;

  std::size_t size() const { return M_; }

  /// Loads coefficients, leaves grid values w(j / M) in grid().
  void to_grid(std::span<const std::complex<double>> full, std::size_t K);
  /// Squares the grid values in place and transforms back; reads c_k, |k| <= K, into out.
  void square_to_spectrum(std::span<std::complex<double>> full, std::size_t K);

  std::span<std::complex<double>> grid() { return {grid_, M_}; }

 private:
  std::size_t M_;
  std::complex<double>* grid_ = nullptr;
  std::complex<double>* spec_ = nullptr;
  void* backward_ = nullptr;
  void* forward_ = nullptr;
};

/// Smallest 2^a 3^b 5^c not below n.
std::size_t good_fft_size(std::size_t n);

}  // namespace eternal::detail
