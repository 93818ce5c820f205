#pragma once

// Monte-Carlo sweep harness. Each (axis value, trial) pair owns a seed
// mixed from (master seed, axis index, trial index); trials run on an
// optional worker pool and land in indexed slots, so aggregates never
// depend on scheduling. Per trial, each method runs `weight_updates`
// solves with proportional-fairness weight updates in between, starting
// from unit weights.

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "conoma/channel.hpp"
#include "conoma/common.hpp"
#include "conoma/config.hpp"
#include "conoma/metrics.hpp"
#include "conoma/rng.hpp"
#include "conoma/solvers.hpp"
#include "conoma/system.hpp"

namespace conoma {

struct SweepPoint {
  double axis_value = 0.0;
  Method method = Method::co_noma;
  double mean_sum_rate = 0.0;
  double mean_jain = 0.0;
  double stderr_sum_rate = 0.0;
  double stderr_jain = 0.0;
  int trials = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepResult {
  std::uint64_t seed = 0;
  std::vector<SweepPoint> points;
  std::vector<std::string> notices;
  long trace_violations = 0;
  nlohmann::json config_echo;
};

namespace detail {

inline ScenarioConfig apply_axis(const SweepConfig& cfg, double value) {
  ScenarioConfig point = cfg.base;
  switch (cfg.axis) {
    case SweepAxis::fov: point.vlc.fov_semiangle_deg = value; break;
    case SweepAxis::users: point.user_count = static_cast<int>(value); break;
    case SweepAxis::blockage: point.blockage_rate = value; break;
    case SweepAxis::radius: point.cell_radius = value; break;
  }
  return point;
}

struct TrialMetrics {
  double sum_rate = 0.0;
  double jain = 0.0;
};

inline bool trace_is_monotone(const std::vector<double>& t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] < t[i - 1]) return false;
  return true;
}

// One method on one realization: the proportional-fairness outer loop with
// weights reset to one, reporting the final solve's instantaneous metrics.
inline TrialMetrics run_method_trial(const PairedSystem& sys, Method method, int weight_updates,
                                     std::atomic<long>* trace_violations) {
  WeightSet ws = WeightSet::ones(sys.pair_count());
  SolveReport rep;
  for (int u = 0; u < weight_updates; ++u) {
    switch (method) {
      case Method::co_noma: rep = co_noma_solve(sys, ws); break;
      case Method::noma: rep = noma_solve(sys, ws); break;
      case Method::baseline2: rep = baseline2_solve(sys, ws); break;
      case Method::exhaustive: rep = exhaustive_solve(sys, ws); break;
    }
    if (trace_violations && !trace_is_monotone(rep.trace)) trace_violations->fetch_add(1);
    if (u + 1 < weight_updates) ws = update_weights(rep, sys, ws);
  }
  TrialMetrics m;
  m.sum_rate = rep.sum_rate();
  const std::vector<double> rates = rep.user_rates(sys);
  m.jain = jain_index(rates);
  return m;
}

}  // namespace detail

inline nlohmann::json config_echo_json(const SweepConfig& cfg) {
  nlohmann::json j;
  j["axis"] = to_string(cfg.axis);
  j["values"] = cfg.values;
  j["trials"] = cfg.trials;
  std::vector<std::string> methods;
  for (Method m : cfg.methods) methods.emplace_back(to_string(m));
  j["methods"] = methods;
  j["seed"] = cfg.seed;
  j["users"] = cfg.base.user_count;
  j["cell_radius_m"] = cfg.base.cell_radius;
  j["blockage_rate"] = cfg.base.blockage_rate;
  j["fov_semiangle_deg"] = cfg.base.vlc.fov_semiangle_deg;
  j["shadowing"] = cfg.base.shadowing;
  j["weight_updates"] = cfg.weight_updates;
  j["workers"] = cfg.workers;
  return j;
}

inline SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult result;
  result.seed = cfg.seed;
  result.config_echo = config_echo_json(cfg);
  std::atomic<long> trace_violations{0};

  for (std::size_t ai = 0; ai < cfg.values.size(); ++ai) {
    const double value = cfg.values[ai];
    const ScenarioConfig point_cfg = detail::apply_axis(cfg, value);
    point_cfg.validate();
    const int pairs = (point_cfg.user_count + 1) / 2;

    std::vector<Method> methods;
    for (Method m : cfg.methods) {
      if (m == Method::exhaustive && pairs > 6) {
        std::ostringstream note;
        note << "exhaustive method skipped at " << to_string(cfg.axis) << "=" << value << ": " << pairs
             << " pairs exceed the 6-pair enumeration limit";
        result.notices.push_back(note.str());
        continue;
      }
      methods.push_back(m);
    }

    std::vector<std::vector<detail::TrialMetrics>> metrics(methods.size());
    for (auto& v : metrics) v.resize(cfg.trials);

    std::atomic<int> next_trial{0};
    const auto worker = [&]() {
      for (;;) {
        const int t = next_trial.fetch_add(1);
        if (t >= cfg.trials) return;
        const std::uint64_t seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(ai),
                                            static_cast<std::uint64_t>(t));
        const auto [scenario, channels] = sample_scenario(point_cfg, seed);
        const PairedSystem sys = make_paired_system(scenario, channels, cfg.phy);
        for (std::size_t mi = 0; mi < methods.size(); ++mi)
          metrics[mi][t] =
              detail::run_method_trial(sys, methods[mi], cfg.weight_updates, &trace_violations);
      }
    };

    const int n_workers = std::min(cfg.workers, cfg.trials);
    if (n_workers <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      std::vector<double> sum_rates(cfg.trials), jains(cfg.trials);
      for (int t = 0; t < cfg.trials; ++t) {
        sum_rates[t] = metrics[mi][t].sum_rate;
        jains[t] = metrics[mi][t].jain;
      }
      SweepPoint p;
      p.axis_value = value;
      p.method = methods[mi];
      p.mean_sum_rate = mean(sum_rates);
      p.mean_jain = mean(jains);
      p.stderr_sum_rate = standard_error(sum_rates);
      p.stderr_jain = standard_error(jains);
      p.trials = cfg.trials;
      result.points.push_back(p);
    }
  }
  result.trace_violations = trace_violations.load();
  return result;
}

// Shortest round-trip decimal form, identical on every platform.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void write_csv(const SweepResult& result, std::ostream& out) {
  out << "axis,method,mean_sum_rate_bps,mean_jain,stderr_sum_rate,stderr_jain,trials\n";
  for (const SweepPoint& p : result.points) {
    out << format_double(p.axis_value) << ',' << to_string(p.method) << ','
        << format_double(p.mean_sum_rate) << ',' << format_double(p.mean_jain) << ','
        << format_double(p.stderr_sum_rate) << ',' << format_double(p.stderr_jain) << ',' << p.trials
        << '\n';
  }
}

inline nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json j;
  j["seed"] = result.seed;
  j["config"] = result.config_echo;
  j["notices"] = result.notices;
  j["trace_violations"] = result.trace_violations;
  j["points"] = nlohmann::json::array();
  for (const SweepPoint& p : result.points) {
    j["points"].push_back({{"axis", p.axis_value},
                           {"method", to_string(p.method)},
                           {"mean_sum_rate_bps", p.mean_sum_rate},
                           {"mean_jain", p.mean_jain},
                           {"stderr_sum_rate", p.stderr_sum_rate},
                           {"stderr_jain", p.stderr_jain},
                           {"trials", p.trials}});
  }
  return j;
}

inline SweepResult sweep_result_from_json(const nlohmann::json& j) {
  SweepResult r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config_echo = j.at("config");
  r.notices = j.at("notices").get<std::vector<std::string>>();
  r.trace_violations = j.at("trace_violations").get<long>();
  for (const auto& pj : j.at("points")) {
    SweepPoint p;
    p.axis_value = pj.at("axis").get<double>();
    const auto m = method_from_string(pj.at("method").get<std::string>());
    if (!m) throw config_error("unknown method in result JSON");
    p.method = *m;
    p.mean_sum_rate = pj.at("mean_sum_rate_bps").get<double>();
    p.mean_jain = pj.at("mean_jain").get<double>();
    p.stderr_sum_rate = pj.at("stderr_sum_rate").get<double>();
    p.stderr_jain = pj.at("stderr_jain").get<double>();
    p.trials = pj.at("trials").get<int>();
    r.points.push_back(p);
  }
  return r;
}

inline void write_results(const SweepResult& result, const std::string& out_base) {
  {
    const std::string path = out_base + ".csv";
    std::ofstream f(path);
    if (!f) throw io_error("cannot open output file: " + path);
    write_csv(result, f);
    if (!f) throw io_error("failed writing output file: " + path);
  }
  {
    const std::string path = out_base + ".json";
    std::ofstream f(path);
    if (!f) throw io_error("cannot open output file: " + path);
    f << to_json(result).dump(2) << '\n';
    if (!f) throw io_error("failed writing output file: " + path);
  }
}

}  // namespace conoma
