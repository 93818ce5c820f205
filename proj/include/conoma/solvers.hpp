#pragma once

// The joint solvers. The main scheme iterates power allocation, Hungarian
// re-pairing, and link selection, each maximizing the weighted sum-rate
// with the others held fixed; a candidate round is only accepted when it
// does not lower the objective, so the reported trace is non-decreasing and
// the final configuration always carries powers produced by the allocator
// for its own pairing and links. NOMA restricts the same machinery to
// direct links, the sorted baseline pairs best-with-worst in one shot, and
// the exhaustive solver enumerates every pairing and link vector with the
// closed-form allocator as tie-arbiter-free ground truth.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conoma/assignment.hpp"
#include "conoma/link_selection.hpp"
#include "conoma/objective.hpp"
#include "conoma/pairing.hpp"
#include "conoma/power.hpp"
#include "conoma/system.hpp"

namespace conoma {

enum class Method { co_noma, noma, baseline2, exhaustive };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::co_noma: return "co-noma";
    case Method::noma: return "noma";
    case Method::baseline2: return "baseline2";
    case Method::exhaustive: return "exhaustive";
  }
  return "?";
}

inline std::optional<Method> method_from_string(const std::string& s) {
  if (s == "co-noma") return Method::co_noma;
  if (s == "noma") return Method::noma;
  if (s == "baseline2") return Method::baseline2;
  if (s == "exhaustive") return Method::exhaustive;
  return std::nullopt;
}

struct SolveOptions {
  int max_iterations = 50;
  double rel_tolerance = 1e-6;
  std::optional<Pairing> initial_pairing;
  std::optional<LinkSelection> initial_links;
};

struct SolveReport {
  Method method = Method::co_noma;
  Pairing pairing;
  LinkSelection links;
  PowerSolution power;
  RateBreakdown rates;
  double objective = 0.0;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = true;

  /// Rates in original user-id order.
  std::vector<double> user_rates(const PairedSystem& sys) const {
    std::vector<double> out(2 * sys.pair_count(), 0.0);
    for (int i = 0; i < sys.pair_count(); ++i) out[sys.weak_ids[i]] = rates.weak_rate[i];
    for (int j = 0; j < sys.pair_count(); ++j) out[sys.strong_ids[j]] = rates.strong_rate[j];
    return out;
  }

  double sum_rate() const {
    double s = 0.0;
    for (double r : rates.weak_rate) s += r;
    for (double r : rates.strong_rate) s += r;
    return s;
  }
};

/// Rank-opposed pairing: best strong slot with worst weak slot. Slots are
/// already ordered best-first, so weak slot i maps to strong slot K-1-i.
inline Pairing baseline2_pairing(int k) {
  std::vector<int> m(k);
  for (int i = 0; i < k; ++i) m[i] = k - 1 - i;
  return Pairing(std::move(m));
}

namespace detail {

inline SolveReport finish_report(const PairedSystem& sys, Method method, Pairing pairing,
                                 LinkSelection links, PowerSolution power, std::vector<double> trace,
                                 int iterations, bool converged) {
  SolveReport rep;
  rep.method = method;
  rep.rates = per_user_rates(sys, pairing, links, power.weak_power, power.strong_power);
  rep.pairing = std::move(pairing);
  rep.links = std::move(links);
  rep.power = std::move(power);
  rep.objective = trace.empty() ? 0.0 : trace.back();
  rep.trace = std::move(trace);
  rep.iterations = iterations;
  rep.converged = converged;
  return rep;
}

// Every strong channel gone (all users blocked): nothing can be served.
inline SolveReport degenerate_report(const PairedSystem& sys, Method method) {
  const int k = sys.pair_count();
  SolveReport rep;
  rep.method = method;
  rep.pairing = Pairing::identity(k);
  rep.links.assign(k, 0);
  rep.power.weak_power.assign(k, 0.0);
  rep.power.strong_power.assign(k, 0.0);
  rep.power.budget.assign(k, 0.0);
  rep.power.cases.assign(k, PairCase::blocked_all_to_strong);
  rep.power.clamped.assign(k, 0);
  rep.rates.weak_rate.assign(k, 0.0);
  rep.rates.strong_rate.assign(k, 0.0);
  rep.trace = {0.0};
  return rep;
}

// Block-coordinate loop shared by the joint scheme and NOMA (which keeps
// every link direct). Each round proposes (pairing, links, powers) and is
// accepted only if the objective does not drop.
//
// Links start on the sorted baseline's rule: exactly the zero-channel weak
// users begin relayed. An all-direct start would hand such users an
// all-to-strong split with zero weak power, after which the fixed-power
// link-selection step can never see any gain from relaying them.
inline SolveReport coordinate_solve(const PairedSystem& sys, const WeightSet& w, Method method,
                                    const SolveOptions& opts) {
  if (!sys.any_serviceable()) return degenerate_report(sys, method);
  const int k = sys.pair_count();
  const bool allow_relays = method == Method::co_noma;

  Pairing pairing = opts.initial_pairing ? *opts.initial_pairing : baseline2_pairing(k);
  LinkSelection links(k, 0);
  if (allow_relays) {
    if (opts.initial_links) {
      links = *opts.initial_links;
    } else {
      for (int i = 0; i < k; ++i) links[i] = sys.psi_weak[i] > 0.0 ? 0 : 1;
    }
  }

  PowerSolution power = allocate_powers(sys, pairing, links, w);
  double objective = weighted_objective(sys, pairing, links, power.weak_power, power.strong_power, w);
  std::vector<double> trace{objective};

  int iterations = 0;
  bool converged = false;
  while (iterations < opts.max_iterations) {
    ++iterations;
    const Matrix utility = build_utility_matrix(sys, power.weak_power, power.strong_power, links, w);
    Pairing next_pairing = hungarian_solve(utility);
    LinkSelection next_links = links;
    if (allow_relays) {
      const Matrix adv =
          relay_advantage_matrix(sys, next_pairing, power.weak_power, power.strong_power, w);
      next_links = select_links(adv, sys, next_pairing, power.weak_power, power.strong_power, w);
    }
    PowerSolution next_power = allocate_powers(sys, next_pairing, next_links, w);
    const double next_objective = weighted_objective(sys, next_pairing, next_links,
                                                     next_power.weak_power, next_power.strong_power, w);
    if (next_objective < objective) {  // keep the incumbent; nothing better found
      converged = true;
      break;
    }
    const double gain = next_objective - objective;
    pairing = std::move(next_pairing);
    links = std::move(next_links);
    power = std::move(next_power);
    objective = next_objective;
    trace.push_back(objective);
    if (gain <= opts.rel_tolerance * std::abs(objective)) {
      converged = true;
      break;
    }
  }
  return finish_report(sys, method, std::move(pairing), std::move(links), std::move(power),
                       std::move(trace), iterations, converged);
}

}  // namespace detail

/// Joint pairing, link selection, and power allocation.
inline SolveReport co_noma_solve(const PairedSystem& sys, const WeightSet& w,
                                 const SolveOptions& opts = {}) {
  return detail::coordinate_solve(sys, w, Method::co_noma, opts);
}

/// Conventional NOMA: every weak user on the direct link.
inline SolveReport noma_solve(const PairedSystem& sys, const WeightSet& w,
                              const SolveOptions& opts = {}) {
  return detail::coordinate_solve(sys, w, Method::noma, opts);
}

/// Sorted pairing, relays only for zero-channel weak users, one allocation.
inline SolveReport baseline2_solve(const PairedSystem& sys, const WeightSet& w) {
  if (!sys.any_serviceable()) return detail::degenerate_report(sys, Method::baseline2);
  const int k = sys.pair_count();
  Pairing pairing = baseline2_pairing(k);
  LinkSelection links(k, 0);
  for (int i = 0; i < k; ++i) links[i] = sys.psi_weak[i] > 0.0 ? 0 : 1;
  PowerSolution power = allocate_powers(sys, pairing, links, w);
  const double objective =
      weighted_objective(sys, pairing, links, power.weak_power, power.strong_power, w);
  return detail::finish_report(sys, Method::baseline2, std::move(pairing), std::move(links),
                               std::move(power), {objective}, 1, true);
}

/// Global optimum over every pairing and link vector under the closed-form
/// allocator. Exponential; refuses more than 6 pairs.
inline SolveReport exhaustive_solve(const PairedSystem& sys, const WeightSet& w) {
  const int k = sys.pair_count();
  if (k > 6) throw std::invalid_argument("exhaustive search is limited to 6 pairs");
  if (!sys.any_serviceable()) return detail::degenerate_report(sys, Method::exhaustive);

  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;

  bool have_best = false;
  double best_objective = 0.0;
  Pairing best_pairing;
  LinkSelection best_links;
  PowerSolution best_power;
  int configurations = 0;
  do {
    const Pairing pairing{std::vector<int>(perm)};
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      LinkSelection links(k, 0);
      for (int i = 0; i < k; ++i) links[i] = (mask >> i) & 1u;
      PowerSolution power = allocate_powers(sys, pairing, links, w);
      const double objective =
          weighted_objective(sys, pairing, links, power.weak_power, power.strong_power, w);
      ++configurations;
      if (!have_best || objective > best_objective) {
        have_best = true;
        best_objective = objective;
        best_pairing = pairing;
        best_links = std::move(links);
        best_power = std::move(power);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return detail::finish_report(sys, Method::exhaustive, std::move(best_pairing), std::move(best_links),
                               std::move(best_power), {best_objective}, configurations, true);
}

/// Proportional-fairness update: exponential moving average of the rates,
/// reciprocal weights with a floor, then the per-pair corrections that keep
/// the direct-pair split solvable and stop strong users from falling behind
/// their partners.
inline WeightSet update_weights(const SolveReport& report, const PairedSystem& sys, WeightSet ws,
                                double rate_floor = 1.0, double alpha = 0.999) {
  const int k = sys.pair_count();
  const double blend = ws.has_average ? 1.0 / ws.horizon : 1.0;
  for (int i = 0; i < k; ++i)
    ws.avg_rate_weak[i] = (1.0 - blend) * ws.avg_rate_weak[i] + blend * report.rates.weak_rate[i];
  for (int j = 0; j < k; ++j)
    ws.avg_rate_strong[j] = (1.0 - blend) * ws.avg_rate_strong[j] + blend * report.rates.strong_rate[j];
  ws.has_average = true;

  for (int i = 0; i < k; ++i) ws.weak[i] = 1.0 / std::max(ws.avg_rate_weak[i], rate_floor);
  for (int j = 0; j < k; ++j) ws.strong[j] = 1.0 / std::max(ws.avg_rate_strong[j], rate_floor);

  for (int i = 0; i < k; ++i) {
    const int j = report.pairing.strong_of(i);
    const bool direct = report.links[i] == 0;
    const bool split_unsolvable =
        direct && sys.psi_weak[i] > 0.0 && ws.weak[i] * sys.psi_weak[i] >= ws.strong[j] * sys.psi_strong[j];
    if (split_unsolvable || ws.avg_rate_strong[j] < ws.avg_rate_weak[i])
      ws.strong[j] = alpha * ws.weak[i];
  }
  return ws;
}

}  // namespace conoma
