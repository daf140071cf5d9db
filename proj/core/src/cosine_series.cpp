#include "eternal/cosine_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eternal {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CosineSeries::CosineSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

CosineSeries CosineSeries::constant(double value) { return CosineSeries({value}); }

double CosineSeries::operator()(double x) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) sum += coeffs_[k] * std::cos(kTwoPi * k * x);
  return sum;
}

double CosineSeries::derivative(double x) const {
  double sum = 0.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    sum -= coeffs_[k] * kTwoPi * k * std::sin(kTwoPi * k * x);
  return sum;
}

CosineSeries CosineSeries::second_derivative() const {
  std::vector<double> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const double wk = kTwoPi * static_cast<double>(k);
    out[k] = -wk * wk * coeffs_[k];
  }
  return CosineSeries(std::move(out));
}

CosineSeries CosineSeries::product(const CosineSeries& other) const {
  if (coeffs_.empty() || other.coeffs_.empty()) return {};
  const std::size_t K = truncation() + other.truncation();
  std::vector<double> out(K + 1, 0.0);
  // cos(k) cos(l) = (cos(k + l) + cos(|k - l|)) / 2
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0.0) continue;
    for (std::size_t l = 0; l < other.coeffs_.size(); ++l) {
      const double c = 0.5 * coeffs_[k] * other.coeffs_[l];
      out[k + l] += c;
      out[k > l ? k - l : l - k] += c;
    }
  }
  return CosineSeries(std::move(out));
}

CosineSeries CosineSeries::resized(std::size_t K) const {
  std::vector<double> out(K + 1, 0.0);
  std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), K + 1), out.begin());
  return CosineSeries(std::move(out));
}

CosineSeries& CosineSeries::operator+=(const CosineSeries& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

CosineSeries& CosineSeries::operator-=(const CosineSeries& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

CosineSeries& CosineSeries::operator*=(double s) {
  for (double& a : coeffs_) a *= s;
  return *this;
}

double CosineSeries::inner(const CosineSeries& other) const {
  // int_0^{1/2} cos^2(2 pi k x) dx = 1/4 for k >= 1, 1/2 for k = 0
  const std::size_t n = std::min(coeffs_.size(), other.coeffs_.size());
  if (n == 0) return 0.0;
  double sum = 0.5 * coeffs_[0] * other.coeffs_[0];
  for (std::size_t k = 1; k < n; ++k) sum += 0.25 * coeffs_[k] * other.coeffs_[k];
  return sum;
}

double CosineSeries::l2_norm() const { return std::sqrt(inner(*this)); }

int CosineSeries::sign_changes(std::size_t samples) const {
  int changes = 0;
  int last_sign = 0;
  for (std::size_t i = 1; i < samples; ++i) {
    const double v = (*this)(0.5 * static_cast<double>(i) / static_cast<double>(samples));
    const int s = (v > 0) - (v < 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes;
}

CosineSeries operator+(CosineSeries a, const CosineSeries& b) { return a += b; }
CosineSeries operator-(CosineSeries a, const CosineSeries& b) { return a -= b; }
CosineSeries operator*(double s, CosineSeries a) { return a *= s; }

}  // namespace eternal
