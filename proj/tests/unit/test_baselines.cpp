#include <cmath>
#include <stdexcept>

#include "aigc/agents/amender.hpp"
#include "aigc/agents/state.hpp"
#include "aigc/baselines/caching.hpp"
#include "aigc/baselines/ddpg.hpp"
#include "aigc/baselines/ga.hpp"
#include "aigc/env/environment.hpp"
#include "aigc/env/feasibility.hpp"
#include "aigc/env/popularity.hpp"
#include "checks.hpp"
#include "doctest.h"

using namespace aigc;
using namespace aigc::baselines;
using aigc::testing::reference_model;

namespace {

std::vector<GenAiModelSpec> random_models(int m, Rng& rng) {
  std::vector<GenAiModelSpec> out;
  for (int i = 0; i < m; ++i) out.push_back(reference_model(rng.uniform(2.0, 10.0)));
  return out;
}

std::vector<ServiceRequest> random_requests(int users, int models, Rng& rng) {
  std::vector<ServiceRequest> req(static_cast<std::size_t>(users));
  for (int u = 0; u < users; ++u) req[static_cast<std::size_t>(u)] = {u, static_cast<int>(rng.index(models)), 6e7};
  return req;
}

std::vector<int> requested(const std::vector<ServiceRequest>& req) {
  std::vector<int> out;
  for (const auto& r : req) out.push_back(r.model);
  return out;
}

}  // namespace

TEST_CASE("zero-weight MLP actor outputs one half") {
  Rng rng(1);
  nn::DenseNet net(11, {8}, 4, nn::Activation::relu, nn::Activation::logistic, rng);
  for (auto& layer : net.mutable_layers()) {
    layer.weight.setZero();
    layer.bias.setZero();
  }
  const std::vector<double> s(11, 0.3);
  for (double v : ddpg_actor_forward(net, s)) CHECK(v == 0.5);
  const std::vector<double> bad(10, 0.0);
  CHECK_THROWS_AS(ddpg_actor_forward(net, bad), std::invalid_argument);
}

TEST_CASE("MLP actor outputs stay inside (0,1)") {
  ActorCriticConfig cfg;
  Rng rng(2);
  const auto actor = make_mlp_actor(10, 10, cfg, rng);
  nn::Matrix states(50, 10000);
  for (Eigen::Index i = 0; i < states.size(); ++i) states(i) = 3.0 * rng.normal();
  const nn::Matrix a = actor->act(states, rng, true);
  CHECK(a.rows() == 20);
  CHECK((a.array() > 0.0).all());
  CHECK((a.array() < 1.0).all());
  CHECK(actor->kind() == "mlp");
}

TEST_CASE("MLP actor requires a logistic output layer") {
  Rng rng(3);
  CHECK_THROWS_AS(MlpActor(nn::DenseNet(4, {4}, 2, nn::Activation::relu, nn::Activation::identity, rng)),
                  std::invalid_argument);
}

TEST_CASE("popularity cache edge cases") {
  const std::vector<GenAiModelSpec> small(10, reference_model(2.0));
  CHECK(schrs_cache(small, 20.0).rho == std::vector<std::uint8_t>(10, 1));
  CHECK(schrs_cache(small, 0.0).rho == std::vector<std::uint8_t>(10, 0));
  // Skips a model that no longer fits and keeps walking.
  const std::vector<GenAiModelSpec> mixed = {reference_model(8.0), reference_model(9.0), reference_model(4.0),
                                             reference_model(8.0)};
  CHECK(schrs_cache(mixed, 20.0).rho == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(schrs_cache(mixed, 13.0).rho == std::vector<std::uint8_t>{1, 0, 1, 0});
}

TEST_CASE("random caching splits resources equally") {
  Rng rng(4);
  const std::vector<GenAiModelSpec> models(4, reference_model(5.0));
  std::vector<ServiceRequest> req(4);
  for (int u = 0; u < 4; ++u) req[static_cast<std::size_t>(u)].model = u;
  const auto [cache, alloc] = rcars_decide(models, 0.0, req, rng);
  CHECK(cache.rho == std::vector<std::uint8_t>(4, 0));
  CHECK(alloc.b == std::vector<double>(4, 0.25));
  CHECK(alloc.xi == std::vector<double>(4, 0.0));
}

TEST_CASE("baseline decisions pass the feasibility checks") {
  Rng rng(5);
  EnvConfig env;
  int bad = 0;
  for (int c = 0; c < 10000; ++c) {
    const int users = 10 + static_cast<int>(rng.index(9));
    const auto models = random_models(10, rng);
    const double capacity = rng.uniform(0.0, 40.0);
    const auto req = random_requests(users, 10, rng);
    const auto [cache, alloc] = rcars_decide(models, capacity, req, rng);
    const auto r = check_feasibility(cache, alloc, requested(req), models, capacity);
    bad += !(r.all_satisfied());
    const auto fixed = schrs_cache(models, capacity);
    bad += !check_feasibility(fixed, rcars_allocation(fixed, req), requested(req), models, capacity).all_satisfied();
  }
  CHECK(bad == 0);

  GaConfig ga;
  ga.population = 8;
  ga.generations = 3;
  for (int c = 0; c < 200; ++c) {
    EdgeEnvironment e(env, static_cast<std::uint64_t>(c));
    e.reset(0);
    const auto snap = e.next_slot();
    const auto cache = schrs_cache(e.models(), env.capacity_gb);
    const SlotContext ctx{&snap, &cache, e.models(), &env};
    const auto res = ga_optimize(ctx, ga, rng);
    std::vector<int> req;
    for (const auto& u : snap.users) req.push_back(u.request.model);
    CHECK(check_feasibility(cache, res.allocation, req, e.models(), env.capacity_gb).all_satisfied());
  }
}

TEST_CASE("SBX and polynomial mutation keep genes in bounds") {
  Rng rng(6);
  for (int i = 0; i < 100000; ++i) {
    double a = rng.bernoulli(0.05) ? 0.0 : rng.uniform();
    double b = rng.bernoulli(0.05) ? 1.0 : rng.uniform();
    sbx_crossover(a, b, 15.0, rng);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
    const double m = polynomial_mutation(rng.uniform(), 20.0, rng);
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
  }
}

TEST_CASE("SBX with identical parents is a no-op") {
  Rng rng(7);
  double a = 0.4;
  double b = 0.4;
  sbx_crossover(a, b, 15.0, rng);
  CHECK(a == 0.4);
  CHECK(b == 0.4);
}

namespace {

struct Slot {
  EnvConfig env;
  EdgeEnvironment e{env, 3};
  SlotSnapshot snap;
  CacheVector cache;
  Slot() {
    e.reset(0);
    snap = e.next_slot();
    cache = schrs_cache(e.models(), env.capacity_gb);
  }
  SlotContext ctx() const { return {&snap, &cache, e.models(), &env}; }
};

}  // namespace

TEST_CASE("GA without variation returns the best initial individual") {
  Slot s;
  GaConfig cfg;
  cfg.population = 12;
  cfg.generations = 10;
  cfg.crossover_prob = 0.0;
  cfg.mutation_prob = 0.0;
  Rng a(8);
  const auto res = ga_optimize(s.ctx(), cfg, a);
  GaConfig none = cfg;
  none.generations = 0;
  Rng b(8);
  const auto init = ga_optimize(s.ctx(), none, b);
  CHECK(res.genes == init.genes);
  CHECK(res.fitness == init.fitness);
  CHECK(init.history.size() == 1);
  for (double h : res.history) CHECK(h == init.fitness);
}

TEST_CASE("GA at G=0 picks the best of the random population") {
  Slot s;
  GaConfig cfg;
  cfg.population = 15;
  cfg.generations = 0;
  Rng rng(9);
  const auto res = ga_optimize(s.ctx(), cfg, rng);
  // Replay the initial draws and score them independently.
  Rng replay(9);
  const std::size_t genes = 2 * s.snap.users.size();
  double best = INFINITY;
  for (int p = 0; p < cfg.population; ++p) {
    std::vector<double> g(genes);
    for (double& v : g) v = replay.uniform();
    best = std::min(best, slot_objective(s.ctx(), g));
  }
  CHECK(res.fitness == best);
  CHECK(res.fitness == slot_objective(s.ctx(), res.genes));
}

TEST_CASE("GA rejects an empty population") {
  Slot s;
  GaConfig cfg;
  cfg.population = 0;
  Rng rng(10);
  CHECK_THROWS_AS(ga_optimize(s.ctx(), cfg, rng), std::invalid_argument);
}

TEST_CASE("GA objective is the negated slot reward of the amended genes") {
  Slot s;
  Rng rng(11);
  std::vector<double> genes(2 * s.snap.users.size());
  for (double& g : genes) g = rng.uniform();
  std::vector<ServiceRequest> req;
  for (const auto& u : s.snap.users) req.push_back(u.request);
  const auto alloc = agents::amend_continuous(genes, agents::cached_mask(s.cache, req));
  CHECK(slot_objective(s.ctx(), genes) == doctest::Approx(-s.e.evaluate(s.snap, s.cache, alloc).slot_reward));
}

TEST_CASE("parallel fitness evaluation is bit-identical to serial") {
  Slot s;
  Rng rng(12);
  Population pop(64, std::vector<double>(2 * s.snap.users.size()));
  for (auto& ind : pop)
    for (double& g : ind) g = rng.uniform();
  std::vector<double> a;
  std::vector<double> b;
  evaluate_population_serial(s.ctx(), pop, a);
  evaluate_population_parallel(s.ctx(), pop, b);
  CHECK(a == b);
}

TEST_CASE("random caching hits more often with more capacity") {
  // Same models and requests at both capacities; only the store size differs.
  EnvConfig env;
  Rng rng(13);
  const auto models = draw_models(env, rng);
  const auto pmf = zipf_pmf(0.5, env.models);
  const int n = 10000;
  double hits20 = 0.0;
  double hits32 = 0.0;
  for (int i = 0; i < n; ++i) {
    const int m = sample_discrete(pmf, rng);
    hits20 += rcars_cache(models, 20.0, rng).cached(m);
    hits32 += rcars_cache(models, 32.0, rng).cached(m);
  }
  CHECK(hits32 > hits20);
}
