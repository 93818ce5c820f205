// Command-line front end: single-scenario solves, Monte-Carlo sweeps, and
// exhaustive-search comparisons. Exit codes: 0 success, 2 configuration
// error, 3 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conoma/conoma.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> shadowing;
  std::optional<std::string> methods;
  std::optional<std::string> out;
};

conoma::SweepConfig load_base_config(const CommonFlags& flags) {
  conoma::SweepConfig cfg;
  std::string path = flags.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("CONOMA_CONFIG")) path = env;
  }
  if (!path.empty()) cfg = conoma::load_sweep_config(path);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.shadowing) {
    if (*flags.shadowing == "on") cfg.base.shadowing = true;
    else if (*flags.shadowing == "off") cfg.base.shadowing = false;
    else throw conoma::config_error("--shadowing expects on or off");
  }
  if (flags.methods) cfg.methods = conoma::parse_method_list(*flags.methods);
  if (flags.out) cfg.out = *flags.out;
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw conoma::io_error("cannot open output file: " + path);
  f << text;
  if (!f) throw conoma::io_error("failed writing output file: " + path);
}

json report_to_json(const conoma::SolveReport& rep, const conoma::PairedSystem& sys) {
  json pairs = json::array();
  for (int i = 0; i < sys.pair_count(); ++i) {
    const int j = rep.pairing.strong_of(i);
    pairs.push_back({{"weak_user", sys.weak_ids[i]},
                     {"strong_user", sys.strong_ids[j]},
                     {"relayed", rep.links[i]},
                     {"budget", rep.power.budget[i]},
                     {"weak_power", rep.power.weak_power[i]},
                     {"strong_power", rep.power.strong_power[j]},
                     {"split_case", conoma::to_string(rep.power.cases[i])},
                     {"weak_rate_bps", rep.rates.weak_rate[i]},
                     {"strong_rate_bps", rep.rates.strong_rate[j]}});
  }
  const std::vector<double> user_rates = rep.user_rates(sys);
  return json{{"method", conoma::to_string(rep.method)},
              {"objective", rep.objective},
              {"sum_rate_bps", rep.sum_rate()},
              {"jain", conoma::jain_index(user_rates)},
              {"iterations", rep.iterations},
              {"converged", rep.converged},
              {"lambda", rep.power.lambda},
              {"trace", rep.trace},
              {"user_rates_bps", user_rates},
              {"pairs", pairs}};
}

int run_solve(const CommonFlags& flags) {
  const conoma::SweepConfig cfg = load_base_config(flags);
  const auto [scenario, channels] = conoma::sample_scenario(cfg.base, cfg.seed);
  const conoma::PairedSystem sys = conoma::make_paired_system(scenario, channels, cfg.phy);

  json users = json::array();
  for (std::size_t i = 0; i < scenario.users.size(); ++i) {
    users.push_back({{"x", scenario.users[i].position.x},
                     {"y", scenario.users[i].position.y},
                     {"blocked", scenario.users[i].blocked},
                     {"virtual", scenario.users[i].virtual_user},
                     {"vlc_gain", channels.h[i]}});
  }

  json out;
  out["seed"] = cfg.seed;
  out["config"] = conoma::config_echo_json(cfg);
  out["users"] = users;
  out["reports"] = json::object();
  for (conoma::Method m : cfg.methods) {
    conoma::WeightSet ws = conoma::WeightSet::ones(sys.pair_count());
    conoma::SolveReport rep;
    for (int u = 0; u < cfg.weight_updates; ++u) {
      switch (m) {
        case conoma::Method::co_noma: rep = conoma::co_noma_solve(sys, ws); break;
        case conoma::Method::noma: rep = conoma::noma_solve(sys, ws); break;
        case conoma::Method::baseline2: rep = conoma::baseline2_solve(sys, ws); break;
        case conoma::Method::exhaustive: rep = conoma::exhaustive_solve(sys, ws); break;
      }
      if (u + 1 < cfg.weight_updates) ws = conoma::update_weights(rep, sys, ws);
    }
    out["reports"][conoma::to_string(m)] = report_to_json(rep, sys);
  }
  write_text(flags.out.value_or("-"), out.dump(2) + "\n");
  return 0;
}

int run_sweep_cmd(const CommonFlags& flags, const std::optional<std::string>& axis,
                  const std::optional<std::string>& values, std::optional<int> trials,
                  std::optional<int> workers) {
  conoma::SweepConfig cfg = load_base_config(flags);
  if (axis) cfg.axis = conoma::axis_from_string(*axis);
  if (values) cfg.values = conoma::parse_value_list(*values);
  if (trials) cfg.trials = *trials;
  if (workers) cfg.workers = *workers;
  cfg.validate();

  const conoma::SweepResult result = conoma::run_sweep(cfg);
  for (const std::string& notice : result.notices) std::cerr << "notice: " << notice << "\n";
  conoma::write_results(result, cfg.out);
  std::cerr << "wrote " << cfg.out << ".csv and " << cfg.out << ".json ("
            << result.points.size() << " points)\n";
  return 0;
}

int run_oracle(const CommonFlags& flags, std::optional<int> trials) {
  conoma::SweepConfig cfg = load_base_config(flags);
  const int n = trials.value_or(200);
  if (n < 1) throw conoma::config_error("oracle needs at least one trial");
  if ((cfg.base.user_count + 1) / 2 > 6)
    throw conoma::config_error("oracle comparisons need at most 12 users (6 pairs)");

  int within = 0;
  double worst = 1.0, ratio_sum = 0.0;
  long trace_violations = 0;
  for (int t = 0; t < n; ++t) {
    const std::uint64_t seed = conoma::mix_seed(cfg.seed, 0, static_cast<std::uint64_t>(t));
    const auto [scenario, channels] = conoma::sample_scenario(cfg.base, seed);
    const conoma::PairedSystem sys = conoma::make_paired_system(scenario, channels, cfg.phy);
    const conoma::WeightSet ws = conoma::WeightSet::ones(sys.pair_count());
    const conoma::SolveReport co = conoma::co_noma_solve(sys, ws);
    const conoma::SolveReport ex = conoma::exhaustive_solve(sys, ws);
    for (std::size_t i = 1; i < co.trace.size(); ++i)
      if (co.trace[i] < co.trace[i - 1]) ++trace_violations;
    const double ratio = ex.objective > 0.0 ? co.objective / ex.objective : 1.0;
    worst = std::min(worst, ratio);
    ratio_sum += ratio;
    if (ratio >= 0.98) ++within;
  }
  json out{{"trials", n},
           {"seed", cfg.seed},
           {"users", cfg.base.user_count},
           {"mean_ratio", ratio_sum / n},
           {"worst_ratio", worst},
           {"fraction_within_0.98", static_cast<double>(within) / n},
           {"trace_violations", trace_violations}};
  write_text(flags.out.value_or("-"), out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cooperative-NOMA hybrid VLC/RF downlink optimizer"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::optional<std::string> axis, values;
  std::optional<int> trials, workers;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config_path, "config file path (else $CONOMA_CONFIG)");
    cmd->add_option("--seed", flags.seed, "master RNG seed");
    cmd->add_option("--shadowing", flags.shadowing, "log-normal shadowing on|off");
    cmd->add_option("--methods", flags.methods, "comma list: co-noma,noma,baseline2,exhaustive");
    cmd->add_option("--out", flags.out, "output path ('-' for stdout)");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one sampled scenario, emit a JSON report");
  add_common(solve);

  CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep, emit CSV and JSON");
  add_common(sweep);
  sweep->add_option("--axis", axis, "sweep axis: fov|users|blockage|radius");
  sweep->add_option("--values", values, "comma list of axis values, ascending");
  sweep->add_option("--trials", trials, "realizations per axis value");
  sweep->add_option("--workers", workers, "worker threads");

  CLI::App* oracle = app.add_subcommand("oracle", "compare the joint solver against exhaustive search");
  add_common(oracle);
  oracle->add_option("--trials", trials, "number of random scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return run_solve(flags);
    if (sweep->parsed()) return run_sweep_cmd(flags, axis, values, trials, workers);
    if (oracle->parsed()) return run_oracle(flags, trials);
  } catch (const conoma::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const conoma::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
