#pragma once

// One-to-one weak-to-strong assignment. The utility matrix holds the
// objective contribution of every candidate pair under the current powers
// and link choices; the Hungarian method then maximizes the total. Ties are
// resolved toward the lexicographically smallest permutation so repeated
// runs are reproducible.

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "conoma/common.hpp"
#include "conoma/objective.hpp"
#include "conoma/pairing.hpp"
#include "conoma/system.hpp"

namespace conoma {

inline Matrix build_utility_matrix(const PairedSystem& sys, const std::vector<double>& weak_power,
                                   const std::vector<double>& strong_power, const LinkSelection& x,
                                   const WeightSet& w) {
  const int k = sys.pair_count();
  const int n_f = relayed_count(x);
  Matrix u(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      u(i, j) = pair_utility(sys, i, j, x[i], n_f, weak_power[i], strong_power[j], w);
  return u;
}

namespace detail {

// Augmenting-path assignment with potentials, minimizing total cost.
inline std::vector<int> lap_min(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

inline double assignment_value(const Matrix& u, const std::vector<int>& sigma) {
  double s = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) s += u(i, sigma[i]);
  return s;
}

// Optimal completion of a partial assignment: rows `rows` matched to some
// permutation of columns `cols`, maximizing utility.
inline std::vector<int> best_completion(const Matrix& u, const std::vector<int>& rows,
                                        const std::vector<int>& cols) {
  const int m = static_cast<int>(rows.size());
  Matrix cost(m, m);
  for (int r = 0; r < m; ++r) {
    double row_max = u(rows[r], cols[0]);
    for (int c = 1; c < m; ++c) row_max = std::max(row_max, u(rows[r], cols[c]));
    for (int c = 0; c < m; ++c) cost(r, c) = row_max - u(rows[r], cols[c]);
  }
  return lap_min(cost);
}

}  // namespace detail

/// Maximum-utility one-to-one assignment. Among all permutations attaining
/// the optimal total, returns the lexicographically smallest.
inline Pairing hungarian_solve(const Matrix& u) {
  if (!u.square() || u.rows() == 0) throw std::invalid_argument("utility matrix must be square and non-empty");
  if (!u.all_finite()) throw std::invalid_argument("utility matrix must be finite");
  const int k = static_cast<int>(u.rows());

  std::vector<int> all_rows(k), all_cols(k);
  for (int i = 0; i < k; ++i) all_rows[i] = all_cols[i] = i;
  std::vector<int> sigma(k);
  {
    const std::vector<int> sub = detail::best_completion(u, all_rows, all_cols);
    for (int i = 0; i < k; ++i) sigma[i] = sub[i];
  }
  const double best = detail::assignment_value(u, sigma);

  // Lexicographic pass: for each row in turn, try every smaller column that
  // still admits an optimal completion. Values are compared exactly; the
  // sweep only ever swaps between permutations of identical total utility.
  std::vector<char> col_used(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < sigma[i]; ++j) {
      if (col_used[j]) continue;
      std::vector<int> rest_rows, rest_cols;
      for (int r = i + 1; r < k; ++r) rest_rows.push_back(r);
      for (int c = 0; c < k; ++c)
        if (!col_used[c] && c != j) rest_cols.push_back(c);
      std::vector<int> candidate(sigma.begin(), sigma.begin() + i);
      candidate.push_back(j);
      if (!rest_rows.empty()) {
        const std::vector<int> sub = detail::best_completion(u, rest_rows, rest_cols);
        candidate.resize(k);
        for (std::size_t r = 0; r < rest_rows.size(); ++r) candidate[rest_rows[r]] = rest_cols[sub[r]];
      }
      if (detail::assignment_value(u, candidate) == best) {
        sigma = candidate;
        break;
      }
    }
    col_used[sigma[i]] = 1;
  }
  return Pairing(sigma);
}

}  // namespace conoma
