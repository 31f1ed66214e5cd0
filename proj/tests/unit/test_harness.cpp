#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aigc/harness/output.hpp"
#include "aigc/harness/runner.hpp"
#include "aigc/harness/sweep.hpp"
#include "doctest.h"

using namespace aigc;
using namespace aigc::harness;

namespace {

SimConfig small_config(int frames, int slots, int episodes) {
  SimConfig cfg;
  cfg.env.frames = frames;
  cfg.env.slots = slots;
  cfg.run.episodes = episodes;
  cfg.ga.population = 6;
  cfg.ga.generations = 2;
  cfg.d3pg.batch_size = 8;
  cfg.ddqn.batch_size = 4;
  return cfg;
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string metrics_text(const RunResult& r) {
  std::ostringstream out;
  write_metrics_csv(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("every algorithm logs H*T*K slot rows and H episode rows") {
  const auto cfg = small_config(3, 4, 2);
  for (auto algo : {Algorithm::t2drl, Algorithm::ddpg, Algorithm::schrs, Algorithm::rcars}) {
    const auto r = run_algorithm(algo, cfg);
    CAPTURE(to_string(algo));
    CHECK(r.slots.size() == 2u * 3u * 4u);
    CHECK(r.episodes.size() == 2u);
    CHECK(line_count(metrics_text(r)) == 1u + 24u);
    for (const auto& s : r.slots) {
      CHECK(s.requests == cfg.env.users);
      CHECK(s.hits <= s.requests);
      CHECK(s.hit_ratio == doctest::Approx(static_cast<double>(s.hits) / s.requests));
      CHECK(s.wall_ms == 0.0);
    }
  }
}

TEST_CASE("a single-frame single-slot episode still runs") {
  const auto cfg = small_config(1, 1, 3);
  for (auto algo : {Algorithm::t2drl, Algorithm::ddpg, Algorithm::schrs, Algorithm::rcars}) {
    const auto r = run_algorithm(algo, cfg);
    CHECK(r.slots.size() == 3u);
    CHECK(r.episodes.size() == 3u);
  }
}

TEST_CASE("runs repeat byte for byte under the same seed") {
  const auto cfg = small_config(2, 3, 2);
  for (auto algo : {Algorithm::t2drl, Algorithm::ddpg, Algorithm::schrs, Algorithm::rcars}) {
    const auto a = run_algorithm(algo, cfg);
    const auto b = run_algorithm(algo, cfg);
    CHECK(metrics_text(a) == metrics_text(b));
  }
  auto other = cfg;
  other.run.seed = 2;
  CHECK(metrics_text(run_algorithm(Algorithm::rcars, cfg)) != metrics_text(run_algorithm(Algorithm::rcars, other)));
}

TEST_CASE("timing is recorded only when requested") {
  auto cfg = small_config(1, 2, 1);
  cfg.run.record_timing = true;
  const auto r = run_algorithm(Algorithm::schrs, cfg);
  double total = 0.0;
  for (const auto& s : r.slots) total += s.wall_ms;
  CHECK(total > 0.0);
}

TEST_CASE("hit ratio over a trace") {
  std::vector<SlotRecord> trace(3);
  trace[0].hits = 0;
  trace[0].requests = 10;
  trace[1].hits = 10;
  trace[1].requests = 10;
  trace[2].hits = 5;
  trace[2].requests = 10;
  CHECK(model_hit_ratio(trace) == 0.5);
  trace.resize(1);
  CHECK(model_hit_ratio(trace) == 0.0);
  CHECK_THROWS_AS(model_hit_ratio({}), std::invalid_argument);
}

TEST_CASE("episode records agree with their slot rows") {
  const auto cfg = small_config(2, 3, 2);
  const auto r = run_algorithm(Algorithm::rcars, cfg);
  for (int e = 0; e < 2; ++e) {
    int hits = 0;
    int req = 0;
    int viol = 0;
    double util = 0.0;
    for (const auto& s : r.slots) {
      if (s.episode != e) continue;
      hits += s.hits;
      req += s.requests;
      viol += s.violations;
      util += s.utility;
    }
    const auto& ep = r.episodes[static_cast<std::size_t>(e)];
    CHECK(ep.hit_ratio == doctest::Approx(static_cast<double>(hits) / req));
    CHECK(ep.violation_rate == doctest::Approx(static_cast<double>(viol) / req));
    CHECK(ep.mean_utility == doctest::Approx(util / 6.0));
    CHECK(ep.capacity_violations == 0);
  }
}

TEST_CASE("algorithm names round-trip") {
  for (auto algo : {Algorithm::t2drl, Algorithm::ddpg, Algorithm::schrs, Algorithm::rcars})
    CHECK(parse_algorithm(to_string(algo)) == algo);
  CHECK_THROWS_AS(parse_algorithm("ppo"), std::invalid_argument);
}

TEST_CASE("sweep expands the cartesian product and writes one row per job") {
  const auto jobs = expand_sweep({Algorithm::schrs, Algorithm::rcars}, {10, 12}, {20.0}, {1, 2});
  CHECK(jobs.size() == 8u);
  CHECK(jobs[0].algo == Algorithm::schrs);
  CHECK(jobs[1].seed == 2u);
  CHECK(jobs[2].users == 12);
  CHECK(jobs[4].algo == Algorithm::rcars);

  const auto dir = std::filesystem::temp_directory_path() / "aigc_sweep_test";
  std::filesystem::remove_all(dir);
  const auto rows = run_sweep(small_config(1, 2, 1), jobs, dir, false);
  CHECK(rows.size() == 8u);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    CHECK(rows[i].users == jobs[i].users);
    CHECK(rows[i].seed == jobs[i].seed);
    CHECK(std::filesystem::exists(dir / jobs[i].name() / "metrics.csv"));
  }
  std::ifstream in(dir / "summary.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(line_count(ss.str()) == 9u);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run outputs include an SVG chart when asked") {
  const auto cfg = small_config(1, 2, 2);
  const auto r = run_algorithm(Algorithm::schrs, cfg);
  const auto dir = std::filesystem::temp_directory_path() / "aigc_outputs_test";
  std::filesystem::remove_all(dir);
  write_run_outputs(dir, r, cfg, true);
  for (const char* f : {"metrics.csv", "episodes.csv", "summary.csv", "config.echo.json", "reward.svg"})
    CHECK(std::filesystem::exists(dir / f));
  const auto echo = load_config(dir / "config.echo.json");
  CHECK(config_to_json(echo) == config_to_json(cfg));
  std::filesystem::remove_all(dir);
}

TEST_CASE("config validation and JSON round trip") {
  SimConfig cfg;
  cfg.env.users = 14;
  cfg.d3pg.x0_clip = 2.0;
  const auto back = config_from_json(config_to_json(cfg));
  CHECK(back.env.users == 14);
  CHECK(back.d3pg.x0_clip == 2.0);
  CHECK(config_from_json("{}").env.users == SimConfig{}.env.users);
  CHECK_NOTHROW(back.validate());
  CHECK_THROWS_AS(config_from_json(R"({"env": {"users": 0}})").validate(), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"ga": {"population": 1}})").validate(), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"d3pg": {"explore_floor": 0.5}})").validate(), std::invalid_argument);
}
