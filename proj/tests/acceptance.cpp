// Acceptance suite: one line per criterion, pass/fail with the measured
// margin and runtime. Every tolerance is pinned in code. Exits non-zero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "conoma/conoma.hpp"
#include "oracles.hpp"

using namespace conoma;

namespace {

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<bool(std::string&)> run;
};

long g_trace_violations = 0;  // accumulated over criteria 7-10

void count_trace_violations(const std::vector<double>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (trace[i] < trace[i - 1]) ++g_trace_violations;
}

PairedSystem random_system(std::uint64_t seed, int users, double blockage, double fov = 50.0) {
  ScenarioConfig cfg;
  cfg.user_count = users;
  cfg.blockage_rate = blockage;
  cfg.vlc.fov_semiangle_deg = fov;
  const auto [scn, ch] = sample_scenario(cfg, seed);
  return make_paired_system(scn, ch, PhyConstants{});
}

// 1. Equal-rate closed form over 10^4 random (q, psi) draws.
bool criterion_equal_rate(std::string& detail) {
  Rng rng(101);
  const double bv = 20e6;
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double psi = std::pow(10.0, 2.0 + 5.0 * rng.next_double());
    const double q = 1e-4 + 0.05 * rng.next_double();
    const int k = 1 + int(rng.next_u64() % 6);
    const PairSplit s = split_relayed_pair(q, psi, 1e30, bv, k);
    if (s.tag != PairCase::relayed_eta1) return false;
    const double r_s = rate_strong(s.strong_power, psi, bv, k);
    const double r_d = rate_weak_at_strong(s.weak_power, s.strong_power, psi, bv, k);
    worst = std::max(worst, std::abs(r_s - r_d) / r_s);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max rel err %.2e", worst);
  detail = buf;
  return worst <= 1e-9;
}

// 2. RF cap: eta2 pins the decode rate at the RF rate.
bool criterion_rf_cap(std::string& detail) {
  Rng rng(202);
  const double bv = 20e6;
  double worst = 0.0;
  int done = 0;
  while (done < 10000) {
    const double psi = std::pow(10.0, 2.0 + 5.0 * rng.next_double());
    const double q = 1e-3 + 0.05 * rng.next_double();
    const int k = 1 + int(rng.next_u64() % 6);
    const double u = q * psi;
    // rf rates inside (log2 of the clamp bound, log2 sqrt(1+u)) trigger an
    // unclamped eta2
    const double a_lo = (1.0 + u) / (1.0 + 0.5 * u);
    const double a_hi = std::sqrt(1.0 + u);
    if (a_hi <= a_lo * (1.0 + 1e-9)) continue;
    const double a = a_lo + (a_hi - a_lo) * (0.05 + 0.9 * rng.next_double());
    const double rf_rate = bv / (2.0 * k) * std::log2(a);
    const PairSplit s = split_relayed_pair(q, psi, rf_rate, bv, k);
    if (s.tag != PairCase::relayed_eta2 || s.clamped) continue;
    const double decode = rate_weak_at_strong(s.weak_power, s.strong_power, psi, bv, k);
    worst = std::max(worst, std::abs(decode - rf_rate) / rf_rate);
    ++done;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max rel err %.2e", worst);
  detail = buf;
  return worst <= 1e-9;
}

// 3. Waterfilling against a bisection-on-lambda oracle.
bool criterion_waterfilling(std::string& detail) {
  Rng rng(303);
  double worst_q = 0.0, worst_sum = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int k = 1 + int(rng.next_u64() % 8);
    std::vector<WaterfillEntry> entries(k);
    for (auto& e : entries) {
      e.weight = 0.05 + 3.0 * rng.next_double();
      e.psi_s = std::pow(10.0, 2.0 + 5.0 * rng.next_double());
    }
    const double p_max = 1e-3 + 0.05 * rng.next_double();
    const WaterfillResult r = waterfill_budgets(entries, 20e6, k, p_max);
    double total = 0.0;
    for (double q : r.budget) total += q;
    worst_sum = std::max(worst_sum, std::abs(total - p_max) / p_max);
    const std::vector<double> expected = oracle::bisect_waterfill(entries, 20e6, k, p_max);
    for (int p = 0; p < k; ++p) worst_q = std::max(worst_q, std::abs(r.budget[p] - expected[p]));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |q err| %.2e, max sum rel err %.2e", worst_q, worst_sum);
  detail = buf;
  return worst_q <= 1e-9 && worst_sum <= 1e-9;
}

// 4. Direct-pair interior root: stationarity and grid dominance.
bool criterion_case2_root(std::string& detail) {
  Rng rng(404);
  const double bv = 20e6;
  double worst_stat = 0.0;
  int done = 0;
  while (done < 1000) {
    const double psi_w = std::pow(10.0, 3.0 + 3.0 * rng.next_double());
    const double psi_s = psi_w * (1.5 + 8.0 * rng.next_double());
    const double w_s = 0.2 + rng.next_double();
    const double w_w = w_s * (1.0 + 2.0 * rng.next_double());  // weak weighted harder
    if (w_w * psi_w >= w_s * psi_s) continue;                  // validity condition
    const double omega = (w_w * psi_w - w_s * psi_s) / (psi_s * psi_w * (w_s - w_w));
    const int k = 1 + int(rng.next_u64() % 4);
    const double q = 2.0 * omega * (1.1 + 3.0 * rng.next_double());  // q > 2 omega
    const PairSplit s = split_direct_pair(q, psi_s, psi_w, w_s, w_w, bv, k);
    if (s.tag != PairCase::direct_omega) return false;
    const double m_s = w_s * bv / (2.0 * k * (1.0 / psi_s + s.strong_power));
    const double m_w = w_w * bv / (2.0 * k * (1.0 / psi_w + s.strong_power));
    worst_stat = std::max(worst_stat, std::abs(m_s - m_w) / std::max(m_s, m_w));
    const double got = oracle::direct_pair_value(s.strong_power, q, psi_s, psi_w, w_s, w_w, bv, k);
    for (int g = 0; g <= 200; ++g) {
      const double p_s = 0.5 * q * g / 200.0;
      if (got < oracle::direct_pair_value(p_s, q, psi_s, psi_w, w_s, w_w, bv, k) - 1e-12 * std::abs(got))
        return false;
    }
    ++done;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max stationarity rel err %.2e", worst_stat);
  detail = buf;
  return worst_stat <= 1e-8;
}

// 5. Hungarian equals factorial enumeration.
bool criterion_hungarian(std::string& detail) {
  Rng rng(505);
  for (int t = 0; t < 1000; ++t) {
    const int k = 1 + int(rng.next_u64() % 6);
    Matrix u(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) u(i, j) = rng.next_double() * 10.0;
    const Pairing p = hungarian_solve(u);
    double got = 0.0;
    for (int i = 0; i < k; ++i) got += u(i, p.strong_of(i));
    if (got != oracle::brute_force_assignment(u)) {
      detail = "mismatch at draw " + std::to_string(t);
      return false;
    }
  }
  detail = "1000 exact matches";
  return true;
}

// 6. Link selection equals 2^K enumeration.
bool criterion_link_selection(std::string& detail) {
  Rng rng(606);
  for (int t = 0; t < 500; ++t) {
    const int users = 2 * (1 + int(rng.next_u64() % 8));
    PairedSystem sys = random_system(60000 + t, users, 0.25);
    const int k = sys.pair_count();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = k - 1; i > 0; --i) std::swap(perm[i], perm[rng.next_u64() % (i + 1)]);
    const Pairing pairing{perm};
    WeightSet w = WeightSet::ones(k);
    for (auto& v : w.weak) v = 0.5 + rng.next_double();
    for (auto& v : w.strong) v = 0.5 + rng.next_double();
    std::vector<double> pw(k), ps(k);
    const double p_max = max_drive_power(sys.phy);
    for (int i = 0; i < k; ++i) {
      pw[i] = rng.next_double() * p_max / k;
      ps[pairing.strong_of(i)] = rng.next_double() * pw[i];
    }
    const Matrix s = relay_advantage_matrix(sys, pairing, pw, ps, w);
    const LinkSelection x = select_links(s, sys, pairing, pw, ps, w);
    const double got = weighted_objective(sys, pairing, x, pw, ps, w);
    const double best = oracle::brute_force_links(
        k, [&](const LinkSelection& cand) { return weighted_objective(sys, pairing, cand, pw, ps, w); });
    if (got != best) {
      detail = "mismatch at draw " + std::to_string(t);
      return false;
    }
  }
  detail = "500 exact matches";
  return true;
}

// 7. Joint heuristic within 2% of exhaustive on at least 95% of scenarios.
bool criterion_joint_quality(std::string& detail) {
  Rng rng(707);
  int within = 0;
  const int total = 200;
  for (int t = 0; t < total; ++t) {
    const int users = 2 + 2 * int(rng.next_u64() % 3);  // K <= 3
    const PairedSystem sys = random_system(70000 + t, users, 0.15);
    const WeightSet w = WeightSet::ones(sys.pair_count());
    const SolveReport co = co_noma_solve(sys, w);
    count_trace_violations(co.trace);
    const SolveReport ex = exhaustive_solve(sys, w);
    if (co.objective >= 0.98 * ex.objective) ++within;
  }
  detail = std::to_string(within) + "/" + std::to_string(total) + " within 2%";
  return within >= (total * 95) / 100;
}

SweepResult run_acceptance_sweep(SweepAxis axis, std::vector<double> values,
                                 std::vector<Method> methods, int trials) {
  SweepConfig cfg;  // defaults: 6 users, radius 2.5 m, blockage 0.1, FoV 50
  cfg.axis = axis;
  cfg.values = std::move(values);
  cfg.methods = std::move(methods);
  cfg.trials = trials;
  cfg.seed = 20240808;
  cfg.workers = 4;
  const SweepResult res = run_sweep(cfg);
  g_trace_violations += res.trace_violations;
  return res;
}

const SweepPoint& point_of(const SweepResult& res, double axis_value, Method m) {
  for (const SweepPoint& p : res.points)
    if (p.axis_value == axis_value && p.method == m) return p;
  throw std::logic_error("missing sweep point");
}

// 8. Mean dominance of the joint scheme over NOMA at the operating point.
bool criterion_dominance(std::string& detail) {
  const SweepResult res = run_acceptance_sweep(SweepAxis::blockage, {0.1},
                                               {Method::co_noma, Method::noma}, 500);
  const SweepPoint& co = point_of(res, 0.1, Method::co_noma);
  const SweepPoint& nm = point_of(res, 0.1, Method::noma);
  char buf[160];
  std::snprintf(buf, sizeof buf, "sum-rate %.4g vs %.4g, jain %.4f vs %.4f", co.mean_sum_rate,
                nm.mean_sum_rate, co.mean_jain, nm.mean_jain);
  detail = buf;
  return co.mean_sum_rate > nm.mean_sum_rate && co.mean_jain > nm.mean_jain;
}

// 9. Sum-rate rises then falls with the FoV.
bool criterion_fov_unimodal(std::string& detail) {
  const SweepResult res =
      run_acceptance_sweep(SweepAxis::fov, {30.0, 55.0, 90.0}, {Method::co_noma}, 500);
  const double r30 = point_of(res, 30.0, Method::co_noma).mean_sum_rate;
  const double r55 = point_of(res, 55.0, Method::co_noma).mean_sum_rate;
  const double r90 = point_of(res, 90.0, Method::co_noma).mean_sum_rate;
  char buf[160];
  std::snprintf(buf, sizeof buf, "sum-rate 30/55/90 deg: %.4g / %.4g / %.4g", r30, r55, r90);
  detail = buf;
  return r55 > r30 && r55 > r90;
}

// 10. Blockage barely moves the joint scheme's fairness; NOMA suffers more.
bool criterion_blockage_robustness(std::string& detail) {
  const SweepResult res = run_acceptance_sweep(SweepAxis::blockage, {0.0, 0.3},
                                               {Method::co_noma, Method::noma}, 500);
  const double co0 = point_of(res, 0.0, Method::co_noma).mean_jain;
  const double co3 = point_of(res, 0.3, Method::co_noma).mean_jain;
  const double nm0 = point_of(res, 0.0, Method::noma).mean_jain;
  const double nm3 = point_of(res, 0.3, Method::noma).mean_jain;
  char buf[160];
  std::snprintf(buf, sizeof buf, "jain co %.4f->%.4f, noma %.4f->%.4f", co0, co3, nm0, nm3);
  detail = buf;
  return std::abs(co3 - co0) <= 0.10 * co0 && (nm0 - nm3) > (co0 - co3);
}

// 11. No objective trace ever decreased during criteria 7-10.
bool criterion_monotone_trace(std::string& detail) {
  detail = std::to_string(g_trace_violations) + " violations";
  return g_trace_violations == 0;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"equal-rate closed form (eta1)", 1.0, criterion_equal_rate},
      {"RF cap (eta2)", 1.0, criterion_rf_cap},
      {"waterfilling vs bisection oracle", 5.0, criterion_waterfilling},
      {"direct-pair interior root", 5.0, criterion_case2_root},
      {"hungarian exactness", 10.0, criterion_hungarian},
      {"link-selection exactness", 10.0, criterion_link_selection},
      {"joint heuristic vs exhaustive", 60.0, criterion_joint_quality},
      {"co-noma dominance at the operating point", 300.0, criterion_dominance},
      {"FoV unimodality", 600.0, criterion_fov_unimodal},
      {"blockage fairness robustness", 600.0, criterion_blockage_robustness},
      {"monotone objective traces", 1.0, criterion_monotone_trace},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= criteria[i].time_limit_s;
    if (!(ok && in_time)) ++failures;
    std::printf("[%2zu/11] %s %s: %s (%.2f s, limit %.0f s)\n", i + 1, ok && in_time ? "PASS" : "FAIL",
                criteria[i].name.c_str(), detail.c_str(), elapsed, criteria[i].time_limit_s);
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
