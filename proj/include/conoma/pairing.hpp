#pragma once

// One-to-one pairing between weak and strong user slots, stored as the
// permutation sigma: weak slot -> strong slot. Constructing from any raw
// representation validates bijectivity, so downstream code never sees an
// infeasible pairing.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conoma/common.hpp"

namespace conoma {

class Pairing {
 public:
  Pairing() = default;

  explicit Pairing(std::vector<int> strong_of) : strong_of_(std::move(strong_of)) {
    const int k = static_cast<int>(strong_of_.size());
    std::vector<char> seen(k, 0);
    for (int j : strong_of_) {
      if (j < 0 || j >= k || seen[j]) throw std::invalid_argument("pairing is not a bijection");
      seen[j] = 1;
    }
  }

  static Pairing identity(int k) {
    std::vector<int> v(k);
    for (int i = 0; i < k; ++i) v[i] = i;
    return Pairing(std::move(v));
  }

  /// Builds from a 0/1 assignment matrix; rejects anything whose rows or
  /// columns do not sum to exactly one.
  static Pairing from_matrix(const Matrix& z) {
    if (!z.square()) throw std::invalid_argument("pairing matrix must be square");
    const int k = static_cast<int>(z.rows());
    std::vector<int> strong_of(k, -1);
    std::vector<int> col_sum(k, 0);
    for (int i = 0; i < k; ++i) {
      int row_sum = 0;
      for (int j = 0; j < k; ++j) {
        const double v = z(i, j);
        if (v != 0.0 && v != 1.0) throw std::invalid_argument("pairing matrix entries must be 0 or 1");
        if (v == 1.0) {
          ++row_sum;
          ++col_sum[j];
          strong_of[i] = j;
        }
      }
      if (row_sum != 1) throw std::invalid_argument("pairing matrix row must sum to 1");
    }
    for (int j = 0; j < k; ++j)
      if (col_sum[j] != 1) throw std::invalid_argument("pairing matrix column must sum to 1");
    return Pairing(std::move(strong_of));
  }

  int strong_of(int weak_slot) const { return strong_of_[static_cast<std::size_t>(weak_slot)]; }
  int size() const { return static_cast<int>(strong_of_.size()); }
  const std::vector<int>& map() const { return strong_of_; }

  friend bool operator==(const Pairing&, const Pairing&) = default;

 private:
  std::vector<int> strong_of_;
};

// Link selection per weak slot: 1 = relayed over the strong user's RF hop,
// 0 = direct optical link.
using LinkSelection = std::vector<int>;

inline int relayed_count(const LinkSelection& x) {
  int n = 0;
  for (int v : x) {
    if (v != 0 && v != 1) throw std::invalid_argument("link selection entries must be 0 or 1");
    n += v;
  }
  return n;
}

}  // namespace conoma
