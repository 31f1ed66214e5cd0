// Command-line front end: train, evaluate and sweep runs.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aigc/config.hpp"
#include "aigc/harness/output.hpp"
#include "aigc/harness/runner.hpp"
#include "aigc/harness/sweep.hpp"

namespace {

using aigc::SimConfig;
namespace h = aigc::harness;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<int> users;
  std::optional<double> capacity_gb;
  std::string out = "out";
  bool plot = false;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "JSON config file; missing keys keep defaults")->check(CLI::ExistingFile);
  cmd->add_option("--episodes", a.episodes, "Episodes per run")->check(CLI::PositiveNumber);
  cmd->add_option("--out", a.out, "Output directory")->capture_default_str();
  cmd->add_flag("--plot", a.plot, "Also write SVG charts");
  cmd->add_flag("--timing", a.timing, "Record per-slot decision wall-clock (makes wall_ms nondeterministic)");
}

SimConfig build_config(const CommonArgs& a) {
  SimConfig cfg = a.config_path.empty() ? SimConfig{} : aigc::load_config(a.config_path);
  if (a.seed) cfg.run.seed = *a.seed;
  if (a.episodes) cfg.run.episodes = *a.episodes;
  if (a.users) cfg.env.users = *a.users;
  if (a.capacity_gb) cfg.env.capacity_gb = *a.capacity_gb;
  if (a.timing) cfg.run.record_timing = true;
  cfg.validate();
  return cfg;
}

// Accepts plain numbers and inclusive lo:hi:step ranges.
template <typename T>
std::vector<T> expand_values(const std::vector<std::string>& tokens) {
  std::vector<T> out;
  for (const auto& tok : tokens) {
    const auto c1 = tok.find(':');
    if (c1 == std::string::npos) {
      out.push_back(static_cast<T>(std::stod(tok)));
      continue;
    }
    const auto c2 = tok.find(':', c1 + 1);
    const double lo = std::stod(tok.substr(0, c1));
    const double hi = std::stod(tok.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
    const double step = c2 == std::string::npos ? 1.0 : std::stod(tok.substr(c2 + 1));
    if (!(step > 0.0)) throw std::invalid_argument("range step must be positive: " + tok);
    for (double v = lo; v <= hi + 1e-9 * step; v += step) out.push_back(static_cast<T>(v));
  }
  return out;
}

void print_summary(const std::vector<h::RunSummary>& rows) { h::write_summary_csv(std::cout, rows); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge AIGC caching and resource allocation simulator"};
  app.require_subcommand(1);

  CommonArgs train_args;
  std::string train_algo = "t2drl";
  std::string train_checkpoint;
  auto* train = app.add_subcommand("train", "Train one algorithm and write its metrics");
  add_common(train, train_args);
  train->add_option("--algo", train_algo, "t2drl | ddpg | schrs | rcars")
      ->check(CLI::IsMember({"t2drl", "ddpg", "schrs", "rcars"}))
      ->capture_default_str();
  train->add_option("--seed", train_args.seed, "Master seed");
  train->add_option("--users", train_args.users, "Number of users")->check(CLI::PositiveNumber);
  train->add_option("--capacity-gb", train_args.capacity_gb, "Edge cache capacity in GB")->check(CLI::NonNegativeNumber);
  train->add_option("--checkpoint", train_checkpoint, "Directory to save learned agents into");

  CommonArgs eval_args;
  std::string eval_algo = "t2drl";
  std::string eval_checkpoint;
  auto* evaluate = app.add_subcommand("evaluate", "Run a policy without exploration or learning");
  add_common(evaluate, eval_args);
  evaluate->add_option("--algo", eval_algo, "t2drl | ddpg | schrs | rcars")
      ->check(CLI::IsMember({"t2drl", "ddpg", "schrs", "rcars"}))
      ->capture_default_str();
  evaluate->add_option("--seed", eval_args.seed, "Master seed");
  evaluate->add_option("--users", eval_args.users, "Number of users")->check(CLI::PositiveNumber);
  evaluate->add_option("--capacity-gb", eval_args.capacity_gb, "Edge cache capacity in GB")
      ->check(CLI::NonNegativeNumber);
  evaluate->add_option("--checkpoint", eval_checkpoint, "Directory with agents saved by train")
      ->check(CLI::ExistingDirectory);

  CommonArgs sweep_args;
  std::vector<std::string> sweep_algos{"t2drl", "ddpg", "schrs", "rcars"};
  std::vector<std::string> sweep_users;
  std::vector<std::string> sweep_caps;
  std::vector<std::string> sweep_seeds;
  auto* sweep = app.add_subcommand("sweep", "Run algorithms x users x capacities x seeds");
  add_common(sweep, sweep_args);
  sweep->add_option("--algo", sweep_algos, "Algorithms to run")
      ->check(CLI::IsMember({"t2drl", "ddpg", "schrs", "rcars"}));
  sweep->add_option("--users", sweep_users, "User counts, e.g. 10 14 or 10:18:2");
  sweep->add_option("--capacity-gb", sweep_caps, "Capacities in GB, e.g. 20 32 or 20:32:4");
  sweep->add_option("--seed", sweep_seeds, "Seeds, e.g. 1 2 3 or 1:5");

  auto* dump = app.add_subcommand("config", "Print the default configuration as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dump->parsed()) {
      std::cout << aigc::config_to_json(SimConfig{}) << '\n';
      return 0;
    }
    if (train->parsed() || evaluate->parsed()) {
      const bool is_train = train->parsed();
      const auto& args = is_train ? train_args : eval_args;
      const SimConfig cfg = build_config(args);
      h::RunOptions opts;
      opts.learning = is_train;
      const auto& ckpt = is_train ? train_checkpoint : eval_checkpoint;
      if (!ckpt.empty()) (is_train ? opts.save_checkpoint : opts.load_checkpoint) = ckpt;
      const auto algo = h::parse_algorithm(is_train ? train_algo : eval_algo);
      const auto result = h::run_algorithm(algo, cfg, opts);
      h::write_run_outputs(args.out, result, cfg, args.plot);
      print_summary({h::summarize(result, cfg)});
      return 0;
    }
    const SimConfig cfg = build_config(sweep_args);
    std::vector<h::Algorithm> algos;
    for (const auto& a : sweep_algos) algos.push_back(h::parse_algorithm(a));
    auto users = sweep_users.empty() ? std::vector<int>{cfg.env.users} : expand_values<int>(sweep_users);
    auto caps = sweep_caps.empty() ? std::vector<double>{cfg.env.capacity_gb} : expand_values<double>(sweep_caps);
    auto seeds = sweep_seeds.empty() ? std::vector<std::uint64_t>{cfg.run.seed}
                                     : expand_values<std::uint64_t>(sweep_seeds);
    const auto jobs = h::expand_sweep(algos, users, caps, seeds);
    print_summary(h::run_sweep(cfg, jobs, std::filesystem::path(sweep_args.out), sweep_args.plot));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
