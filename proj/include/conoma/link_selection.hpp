#pragma once

// Link selection for fixed powers and pairing. Row k of the advantage
// matrix scores every weak user's relayed-minus-direct weighted rate under
// the assumption that exactly k relays share the RF band; the best vector
// with exactly k ones is then the row's top-k set. Trying every k (plus the
// all-direct vector) therefore covers the whole 2^K space.

#include <algorithm>
#include <numeric>
#include <vector>

#include "conoma/common.hpp"
#include "conoma/objective.hpp"
#include "conoma/pairing.hpp"
#include "conoma/system.hpp"

namespace conoma {

inline Matrix relay_advantage_matrix(const PairedSystem& sys, const Pairing& pairing,
                                     const std::vector<double>& weak_power,
                                     const std::vector<double>& strong_power, const WeightSet& w) {
  const int k = sys.pair_count();
  const double bv = sys.phy.vlc_bandwidth;
  Matrix s(k, k);
  for (int row = 0; row < k; ++row) {
    const int n_f = row + 1;
    for (int i = 0; i < k; ++i) {
      const int j = pairing.strong_of(i);
      const double relayed = relayed_rate(sys, i, j, weak_power[i], strong_power[j], n_f);
      const double direct = rate_weak_direct(weak_power[i], strong_power[j], sys.psi_weak[i], bv, k);
      s(row, i) = w.weak[i] * (relayed - direct);
    }
  }
  return s;
}

/// Picks the link vector maximizing the weighted objective among the K
/// top-k candidates plus the all-direct vector. Ties go to fewer relays,
/// then to lower indices inside a row.
inline LinkSelection select_links(const Matrix& s, const PairedSystem& sys, const Pairing& pairing,
                                  const std::vector<double>& weak_power,
                                  const std::vector<double>& strong_power, const WeightSet& w) {
  const int k = sys.pair_count();
  LinkSelection best(k, 0);
  double best_value = weighted_objective(sys, pairing, best, weak_power, strong_power, w);
  for (int row = 0; row < k; ++row) {
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s(row, a) > s(row, b); });
    LinkSelection cand(k, 0);
    for (int t = 0; t <= row; ++t) cand[order[t]] = 1;
    const double v = weighted_objective(sys, pairing, cand, weak_power, strong_power, w);
    if (v > best_value) {
      best_value = v;
      best = cand;
    }
  }
  return best;
}

}  // namespace conoma
