#pragma once

// Shared small utilities: constants, a dense row-major matrix, and
// compensated summation for long Monte-Carlo accumulations.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace conoma {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline double dbm_per_hz_to_w_per_hz(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// Pairwise (cascade) summation. The result depends only on the element
// order, never on which thread produced which element.
inline double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

inline double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean of empty sample");
  return pairwise_sum(v) / static_cast<double>(v.size());
}

// Standard error of the mean; 0 for a single observation.
inline double standard_error(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("standard error of empty sample");
  if (n == 1) return 0.0;
  const double m = mean(v);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (v[i] - m) * (v[i] - m);
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  return std::sqrt(var / static_cast<double>(n));
}

}  // namespace conoma
