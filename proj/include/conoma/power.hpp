#pragma once

// Closed-form power allocation. Within a pair the split depends on the weak
// user's serving link:
//
//  - Relayed pair: the pair sum-rate is invariant to the split, so the
//    equal-rate point eta1 = (sqrt(1 + q psi) - 1) / psi is used; when the
//    RF hop caps the weak rate first, the strong power grows to
//    eta2 = (q psi + 1 - A) / (A psi), A = 2^(2 R_rf K / B_v), which pins
//    the decode rate exactly at the RF rate.
//
//  - Direct pair: the weighted pair objective has at most one interior
//    stationary point Omega; the maximizer is Omega clamped to the SIC
//    region or one of its endpoints.
//
// Across pairs the budgets follow the waterfilling form
// q = [w B_v / (2 K lambda) - 1/psi_s]^+ with lambda exhausting the total
// drive power, solved by an exact active-set sweep with a bisection
// fallback.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "conoma/objective.hpp"
#include "conoma/pairing.hpp"
#include "conoma/rates.hpp"
#include "conoma/system.hpp"

namespace conoma {

enum class PairCase {
  relayed_eta1,
  relayed_eta2,
  direct_omega,
  direct_boundary,
  blocked_all_to_strong,
};

inline const char* to_string(PairCase c) {
  switch (c) {
    case PairCase::relayed_eta1: return "relayed-eta1";
    case PairCase::relayed_eta2: return "relayed-eta2";
    case PairCase::direct_omega: return "direct-omega";
    case PairCase::direct_boundary: return "direct-boundary";
    case PairCase::blocked_all_to_strong: return "blocked-all-to-strong";
  }
  return "?";
}

/// Strong power equalizing the strong user's own rate with the weak
/// message's decode rate at the strong user.
inline double equal_rate_strong_power(double q, double psi_s) {
  if (!(psi_s > 0.0)) throw std::invalid_argument("equal-rate split needs psi_s > 0");
  // (sqrt(1+q psi) - 1) / psi in a cancellation-free form.
  return q / (1.0 + std::sqrt(1.0 + q * psi_s));
}

/// Strong power pinning the weak message's decode rate at the RF-hop rate.
inline double rf_capped_strong_power(double q, double psi_s, double rf_rate, double bv, int k) {
  if (!(psi_s > 0.0)) throw std::invalid_argument("RF-capped split needs psi_s > 0");
  const double a = std::exp2(2.0 * rf_rate * k / bv);
  return (q * psi_s + 1.0 - a) / (a * psi_s);
}

struct PairSplit {
  double strong_power = 0.0;
  double weak_power = 0.0;
  double weak_rate = 0.0;  // achieved end-to-end weak rate
  PairCase tag = PairCase::direct_boundary;
  bool clamped = false;  // split pulled back into the SIC region
};

/// Split for a pair whose weak user rides the relayed link.
inline PairSplit split_relayed_pair(double q, double psi_s, double rf_rate, double bv, int k) {
  if (q < 0.0) throw std::invalid_argument("negative pair budget");
  if (!(psi_s > 0.0)) throw std::invalid_argument("relayed split needs a serviceable strong user");
  PairSplit s;
  if (q == 0.0) {
    s.tag = PairCase::relayed_eta1;
    return s;
  }
  const double eta1 = equal_rate_strong_power(q, psi_s);
  const double weak_at_eta1 = rate_weak_at_strong(q - eta1, eta1, psi_s, bv, k);
  if (weak_at_eta1 <= rf_rate) {
    s.strong_power = eta1;
    s.tag = PairCase::relayed_eta1;
  } else {
    const double eta2 = rf_capped_strong_power(q, psi_s, rf_rate, bv, k);
    s.strong_power = std::clamp(eta2, 0.0, 0.5 * q);
    s.clamped = s.strong_power != eta2;
    s.tag = PairCase::relayed_eta2;
  }
  s.weak_power = q - s.strong_power;
  s.weak_rate = rate_relayed(rf_rate, rate_weak_at_strong(s.weak_power, s.strong_power, psi_s, bv, k));
  return s;
}

/// Split for a pair whose weak user rides the direct optical link. A weak
/// user with a zero channel cannot be served here, so the whole budget goes
/// to the strong message.
inline PairSplit split_direct_pair(double q, double psi_s, double psi_w, double w_s, double w_w,
                                   double bv, int k) {
  if (q < 0.0) throw std::invalid_argument("negative pair budget");
  if (psi_w > psi_s) throw std::invalid_argument("direct split needs psi_s >= psi_w");
  PairSplit s;
  if (psi_w <= 0.0) {
    s.strong_power = q;
    s.weak_power = 0.0;
    s.tag = PairCase::blocked_all_to_strong;
    return s;
  }
  if (q == 0.0) return s;

  const auto value = [&](double p_s) {
    return w_s * rate_strong(p_s, psi_s, bv, k) + w_w * rate_weak_direct(q - p_s, p_s, psi_w, bv, k);
  };

  double omega = 0.0;
  bool omega_interior = false;
  if (w_s != w_w && psi_s > 0.0) {
    omega = (w_w * psi_w - w_s * psi_s) / (psi_s * psi_w * (w_s - w_w));
    omega_interior = std::isfinite(omega) && omega > 0.0 && omega < 0.5 * q;
  }

  double best_p = omega_interior ? omega : 0.5 * q;
  double best_v = value(best_p);
  for (double cand : {0.5 * q, 0.0}) {
    const double v = value(cand);
    if (v > best_v) {
      best_v = v;
      best_p = cand;
    }
  }
  s.strong_power = best_p;
  s.weak_power = q - best_p;
  s.weak_rate = rate_weak_direct(s.weak_power, s.strong_power, psi_w, bv, k);
  s.tag = (omega_interior && best_p == omega) ? PairCase::direct_omega : PairCase::direct_boundary;
  return s;
}

struct WaterfillEntry {
  double weight = 1.0;
  double psi_s = 0.0;
};

struct WaterfillResult {
  std::vector<double> budget;
  double lambda = 0.0;
};

/// Budgets q_p = [w_p B_v/(2 K lambda) - 1/psi_p]^+ with lambda chosen so
/// the budgets exhaust `p_max`. Exact active-set sweep over the sorted
/// activation cutoffs; bisection fallback if the sweep finds no consistent
/// set. Deterministic, ties by entry index.
inline WaterfillResult waterfill_budgets(std::span<const WaterfillEntry> entries, double bv, int k,
                                         double p_max) {
  if (!(p_max > 0.0)) throw std::invalid_argument("waterfilling needs a positive power budget");
  const double c = bv / (2.0 * k);
  const int n = static_cast<int>(entries.size());

  std::vector<int> active;
  for (int p = 0; p < n; ++p)
    if (entries[p].psi_s > 0.0 && entries[p].weight > 0.0) active.push_back(p);
  if (active.empty()) throw std::invalid_argument("waterfilling: no serviceable strong users");

  // Pair p receives power iff lambda < w_p * c * psi_p.
  std::stable_sort(active.begin(), active.end(), [&](int a, int b) {
    return entries[a].weight * entries[a].psi_s > entries[b].weight * entries[b].psi_s;
  });

  WaterfillResult res;
  res.budget.assign(n, 0.0);

  double lambda = -1.0;
  double weight_sum = 0.0, inv_psi_sum = 0.0;
  for (std::size_t m = 0; m < active.size(); ++m) {
    weight_sum += entries[active[m]].weight;
    inv_psi_sum += 1.0 / entries[active[m]].psi_s;
    const double cand = c * weight_sum / (p_max + inv_psi_sum);
    const double cutoff_m = entries[active[m]].weight * entries[active[m]].psi_s * c;
    const double cutoff_next = m + 1 < active.size()
                                   ? entries[active[m + 1]].weight * entries[active[m + 1]].psi_s * c
                                   : 0.0;
    if (cand <= cutoff_m && cand >= cutoff_next) {
      lambda = cand;
      break;
    }
  }
  if (!(lambda > 0.0)) {
    // Floating-point edge: fall back to bisection on the monotone sum.
    const auto total = [&](double lam) {
      double s = 0.0;
      for (int p : active) s += std::max(0.0, entries[p].weight * c / lam - 1.0 / entries[p].psi_s);
      return s;
    };
    double hi = entries[active.front()].weight * entries[active.front()].psi_s * c;
    double lo = hi;
    while (total(lo) < p_max) lo *= 0.5;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (total(mid) >= p_max ? lo : hi) = mid;
    }
    lambda = 0.5 * (lo + hi);
  }

  for (int p : active) res.budget[p] = std::max(0.0, entries[p].weight * c / lambda - 1.0 / entries[p].psi_s);
  res.lambda = lambda;
  return res;
}

struct PowerSolution {
  std::vector<double> weak_power;    // per weak slot
  std::vector<double> strong_power;  // per strong slot
  std::vector<double> budget;        // per weak slot (pair budget)
  std::vector<PairCase> cases;       // per weak slot
  std::vector<char> clamped;         // per weak slot
  double lambda = 0.0;
};

/// Full power allocation for a fixed pairing and link selection: one
/// waterfilling pass for the budgets, then the per-pair closed-form splits.
inline PowerSolution allocate_powers(const PairedSystem& sys, const Pairing& pairing,
                                     const LinkSelection& x, const WeightSet& w) {
  const int k = sys.pair_count();
  if (pairing.size() != k || static_cast<int>(x.size()) != k)
    throw std::invalid_argument("configuration size mismatch");
  const int n_f = relayed_count(x);
  const double bv = sys.phy.vlc_bandwidth;
  const double p_max = max_drive_power(sys.phy);

  std::vector<double> rf_rate(k, 0.0);
  std::vector<WaterfillEntry> entries(k);
  for (int i = 0; i < k; ++i) {
    const int j = pairing.strong_of(i);
    if (x[i] == 1) {
      rf_rate[i] = rate_rf(sys.rf_gain(i, j), sys.relay_power[j], sys.rf_bandwidth, sys.rf_noise_psd, n_f);
      entries[i] = {w.strong[j], sys.psi_strong[j]};
    } else {
      // A blocked weak user contributes nothing on the direct link, so the
      // pair's budget is valued through the strong user instead.
      const double weight = sys.psi_weak[i] > 0.0 ? w.weak[i] : w.strong[j];
      entries[i] = {weight, sys.psi_strong[j]};
    }
  }

  const WaterfillResult wf = waterfill_budgets(entries, bv, k, p_max);

  PowerSolution sol;
  sol.weak_power.assign(k, 0.0);
  sol.strong_power.assign(k, 0.0);
  sol.budget = wf.budget;
  sol.cases.assign(k, PairCase::direct_boundary);
  sol.clamped.assign(k, 0);
  sol.lambda = wf.lambda;
  for (int i = 0; i < k; ++i) {
    const int j = pairing.strong_of(i);
    const double q = wf.budget[i];
    PairSplit split;
    if (q == 0.0) {
      if (x[i] == 1)
        split.tag = PairCase::relayed_eta1;
      else if (sys.psi_weak[i] <= 0.0)
        split.tag = PairCase::blocked_all_to_strong;
    } else if (x[i] == 1) {
      split = split_relayed_pair(q, sys.psi_strong[j], rf_rate[i], bv, k);
    } else {
      split = split_direct_pair(q, sys.psi_strong[j], sys.psi_weak[i], w.strong[j], w.weak[i], bv, k);
    }
    sol.weak_power[i] = split.weak_power;
    sol.strong_power[j] = split.strong_power;
    sol.cases[i] = split.tag;
    sol.clamped[i] = split.clamped ? 1 : 0;
  }
  return sol;
}

}  // namespace conoma
