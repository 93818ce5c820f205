#pragma once

// The network-wide weighted sum-rate and its per-pair pieces, for a full
// configuration (pairing, link selection, per-user powers).

#include <stdexcept>
#include <vector>

#include "conoma/common.hpp"
#include "conoma/pairing.hpp"
#include "conoma/rates.hpp"
#include "conoma/system.hpp"

namespace conoma {

/// End-to-end rate of weak slot i relayed through strong slot j, with
/// `active_relays` pairs sharing the RF band.
inline double relayed_rate(const PairedSystem& sys, int i, int j, double p_w, double p_s,
                           int active_relays) {
  const double rf = rate_rf(sys.rf_gain(i, j), sys.relay_power[j], sys.rf_bandwidth, sys.rf_noise_psd,
                            active_relays);
  const double decode =
      rate_weak_at_strong(p_w, p_s, sys.psi_strong[j], sys.phy.vlc_bandwidth, sys.phy.pair_count);
  return rate_relayed(rf, decode);
}

/// Weighted contribution of pairing weak slot i with strong slot j, given
/// that slot i's link choice is x_i and `active_relays` relays are active.
inline double pair_utility(const PairedSystem& sys, int i, int j, int x_i, int active_relays,
                           double p_w, double p_s, const WeightSet& w) {
  const double bv = sys.phy.vlc_bandwidth;
  const int k = sys.phy.pair_count;
  double u = w.strong[j] * rate_strong(p_s, sys.psi_strong[j], bv, k);
  if (x_i == 0)
    u += w.weak[i] * rate_weak_direct(p_w, p_s, sys.psi_weak[i], bv, k);
  else
    u += w.weak[i] * relayed_rate(sys, i, j, p_w, p_s, active_relays);
  return u;
}

struct RateBreakdown {
  std::vector<double> weak_rate;    // per weak slot
  std::vector<double> strong_rate;  // per strong slot
};

inline RateBreakdown per_user_rates(const PairedSystem& sys, const Pairing& pairing,
                                    const LinkSelection& x, const std::vector<double>& weak_power,
                                    const std::vector<double>& strong_power) {
  const int k = sys.pair_count();
  if (pairing.size() != k || static_cast<int>(x.size()) != k)
    throw std::invalid_argument("configuration size mismatch");
  const int n_f = relayed_count(x);
  RateBreakdown r;
  r.weak_rate.resize(k);
  r.strong_rate.resize(k);
  const double bv = sys.phy.vlc_bandwidth;
  for (int i = 0; i < k; ++i) {
    const int j = pairing.strong_of(i);
    r.strong_rate[j] = rate_strong(strong_power[j], sys.psi_strong[j], bv, k);
    r.weak_rate[i] = x[i] == 0 ? rate_weak_direct(weak_power[i], strong_power[j], sys.psi_weak[i], bv, k)
                               : relayed_rate(sys, i, j, weak_power[i], strong_power[j], n_f);
  }
  return r;
}

/// The weighted sum-rate over all pairs.
inline double weighted_objective(const PairedSystem& sys, const Pairing& pairing, const LinkSelection& x,
                                 const std::vector<double>& weak_power,
                                 const std::vector<double>& strong_power, const WeightSet& w) {
  const int k = sys.pair_count();
  if (pairing.size() != k || static_cast<int>(x.size()) != k)
    throw std::invalid_argument("configuration size mismatch");
  const int n_f = relayed_count(x);
  double total = 0.0;
  for (int i = 0; i < k; ++i)
    total += pair_utility(sys, i, pairing.strong_of(i), x[i], n_f, weak_power[i],
                          strong_power[pairing.strong_of(i)], w);
  return total;
}

/// Overload taking a raw assignment matrix; rejects infeasible matrices.
inline double weighted_objective(const PairedSystem& sys, const Matrix& z, const LinkSelection& x,
                                 const std::vector<double>& weak_power,
                                 const std::vector<double>& strong_power, const WeightSet& w) {
  return weighted_objective(sys, Pairing::from_matrix(z), x, weak_power, strong_power, w);
}

}  // namespace conoma
