#pragma once

#include <atomic>
#include <iostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "conoma/common.hpp"

namespace conoma {

/// Jain fairness index (sum r)^2 / (n sum r^2) over all users; 1 at perfect
/// equality, 1/n when a single user takes everything. All-zero rate vectors
/// are mapped to 0 with a warning since the ratio is undefined there.
inline double jain_index(std::span<const double> rates) {
  if (rates.empty()) throw std::invalid_argument("Jain index of an empty rate vector");
  double sum = 0.0, sum_sq = 0.0;
  for (double r : rates) {
    if (r < 0.0) throw std::invalid_argument("Jain index requires non-negative rates");
    sum += r;
    sum_sq += r * r;
  }
  if (sum_sq == 0.0) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::clog << "conoma: Jain index of all-zero rates defined as 0 (further warnings suppressed)\n";
    return 0.0;
  }
  return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

inline double jain_index(const std::vector<double>& rates) {
  return jain_index(std::span<const double>(rates));
}

}  // namespace conoma
