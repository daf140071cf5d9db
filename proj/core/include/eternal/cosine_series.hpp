#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eternal {

/// Even Fourier profile x -> sum_k a_k cos(2 pi k x) on the half interval [0, 1/2].
///
/// Every truncation satisfies the Neumann condition at x = 0 and x = 1/2.
/// Products and derivatives are exact in coefficient space, so the L2 norms
/// reported here carry no quadrature error.
class CosineSeries {
 public:
  CosineSeries() = default;
  explicit CosineSeries(std::vector<double> coeffs);

  static CosineSeries constant(double value);

  /// Highest stored harmonic K (size - 1); zero for the empty series.
  std::size_t truncation() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Coefficient a_k; harmonics beyond the truncation read as zero.
  double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  double operator()(double x) const;
  double derivative(double x) const;

  CosineSeries second_derivative() const;
  /// Exact product via the product-to-sum rule.
  CosineSeries product(const CosineSeries& other) const;
  /// Resize to harmonics 0..K, padding with zeros.
  CosineSeries resized(std::size_t K) const;

  CosineSeries& operator+=(const CosineSeries& other);
  CosineSeries& operator-=(const CosineSeries& other);
  CosineSeries& operator*=(double s);

  /// Inner product and norm in L2(0, 1/2).
  double inner(const CosineSeries& other) const;
  double l2_norm() const;

  /// Number of strict sign changes on a uniform grid of the open interval (0, 1/2).
  int sign_changes(std::size_t samples = 2000) const;

 private:
  std::vector<double> coeffs_;
};

CosineSeries operator+(CosineSeries a, const CosineSeries& b);
CosineSeries operator-(CosineSeries a, const CosineSeries& b);
CosineSeries operator*(double s, CosineSeries a);

}  // namespace eternal
