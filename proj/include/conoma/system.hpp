#pragma once

// Classification of users into strong/weak halves and the slot-indexed view
// of one realization that every solver works on: SNR coefficients per slot,
// RF gains between weak and strong slots, and each strong user's harvested
// relay power.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "conoma/channel.hpp"
#include "conoma/common.hpp"
#include "conoma/rates.hpp"

namespace conoma {

struct Classification {
  std::vector<int> strong;  // user ids, best channel first
  std::vector<int> weak;    // user ids, best channel first
};

/// Splits an even user population by optical gain: top half strong, bottom
/// half weak, ties resolved toward the lower user index.
inline Classification classify_users(const std::vector<double>& h) {
  const int n = static_cast<int>(h.size());
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("classification requires an even user count");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (h[a] != h[b]) return h[a] > h[b];
    return a < b;
  });
  Classification cls;
  cls.strong.assign(order.begin(), order.begin() + n / 2);
  cls.weak.assign(order.begin() + n / 2, order.end());
  return cls;
}

struct PairedSystem {
  PhyConstants phy;
  double rf_bandwidth = 16e6;
  double rf_noise_psd = dbm_per_hz_to_w_per_hz(-174.0);
  std::vector<double> psi_strong;  // per strong slot
  std::vector<double> psi_weak;    // per weak slot
  std::vector<double> relay_power;  // per strong slot, W
  Matrix rf_gain;                   // weak slot x strong slot
  std::vector<int> strong_ids;      // slot -> original user id
  std::vector<int> weak_ids;

  int pair_count() const { return static_cast<int>(psi_strong.size()); }

  bool any_serviceable() const {
    for (double p : psi_strong)
      if (p > 0.0) return true;
    return false;
  }
};

inline PairedSystem make_paired_system(const Scenario& scn, const ChannelState& ch, PhyConstants phy) {
  const Classification cls = classify_users(ch.h);
  const int k = static_cast<int>(cls.strong.size());
  phy.pair_count = k;
  phy.validate();

  PairedSystem sys;
  sys.phy = phy;
  sys.rf_bandwidth = scn.rf.bandwidth_hz;
  sys.rf_noise_psd = scn.rf.noise_psd_w_per_hz;
  sys.strong_ids = cls.strong;
  sys.weak_ids = cls.weak;
  sys.psi_strong.resize(k);
  sys.psi_weak.resize(k);
  sys.relay_power.resize(k);
  sys.rf_gain = Matrix(k, k, 0.0);
  for (int j = 0; j < k; ++j) {
    sys.psi_strong[j] = snr_coefficient(ch.h[cls.strong[j]], phy);
    sys.relay_power[j] = harvested_power(ch.h[cls.strong[j]], phy);
  }
  for (int i = 0; i < k; ++i) sys.psi_weak[i] = snr_coefficient(ch.h[cls.weak[i]], phy);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sys.rf_gain(i, j) = ch.rf_gain(cls.weak[i], cls.strong[j]);
  return sys;
}

// Proportional-fairness weights and the long-term average rates behind them.
struct WeightSet {
  std::vector<double> weak;
  std::vector<double> strong;
  std::vector<double> avg_rate_weak;
  std::vector<double> avg_rate_strong;
  double horizon = 10.0;      // EMA horizon in outer iterations
  bool has_average = false;   // averages unset until the first update

  static WeightSet ones(int k) {
    WeightSet w;
    w.weak.assign(k, 1.0);
    w.strong.assign(k, 1.0);
    w.avg_rate_weak.assign(k, 0.0);
    w.avg_rate_strong.assign(k, 0.0);
    return w;
  }
};

}  // namespace conoma
