#include "aigc/baselines/ga.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aigc/agents/amender.hpp"
#include "aigc/agents/state.hpp"
#include "aigc/env/service.hpp"

namespace aigc::baselines {

namespace {

constexpr double kMinSpread = 1e-14;

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

double spread_factor(double beta, double eta, double u) {
  const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
  if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
  return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

std::size_t tournament(const std::vector<double>& fitness, Rng& rng) {
  const auto a = rng.index(fitness.size());
  const auto b = rng.index(fitness.size());
  return fitness[b] < fitness[a] ? b : a;
}

}  // namespace

double slot_objective(const SlotContext& ctx, std::span<const double> genes) {
  const auto& users = ctx.snapshot->users;
  std::vector<ServiceRequest> requests;
  requests.reserve(users.size());
  for (const auto& u : users) requests.push_back(u.request);
  const auto mask = agents::cached_mask(*ctx.cache, requests);
  const Allocation alloc = agents::amend_continuous(genes, mask);
  return -evaluate_slot(*ctx.snapshot, *ctx.cache, alloc, ctx.models, *ctx.env).slot_reward;
}

void sbx_crossover(double& a, double& b, double eta, Rng& rng) {
  if (std::fabs(a - b) <= kMinSpread) return;
  const double y1 = std::min(a, b);
  const double y2 = std::max(a, b);
  const double u = rng.uniform();
  const double lower = spread_factor(1.0 + 2.0 * y1 / (y2 - y1), eta, u);
  const double upper = spread_factor(1.0 + 2.0 * (1.0 - y2) / (y2 - y1), eta, u);
  double c1 = clip01(0.5 * ((y1 + y2) - lower * (y2 - y1)));
  double c2 = clip01(0.5 * ((y1 + y2) + upper * (y2 - y1)));
  if (rng.uniform() < 0.5) std::swap(c1, c2);
  a = c1;
  b = c2;
}

double polynomial_mutation(double x, double eta, Rng& rng) {
  const double u = rng.uniform();
  const double power = 1.0 / (eta + 1.0);
  double delta;
  if (u < 0.5) {
    const double xy = 1.0 - x;
    const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
    delta = std::pow(val, power) - 1.0;
  } else {
    const double xy = x;
    const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
    delta = 1.0 - std::pow(val, power);
  }
  return clip01(x + delta);
}

void evaluate_population_serial(const SlotContext& ctx, const Population& pop, std::vector<double>& fitness) {
  fitness.resize(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) fitness[i] = slot_objective(ctx, pop[i]);
}

void evaluate_population_parallel(const SlotContext& ctx, const Population& pop, std::vector<double>& fitness) {
  fitness.resize(pop.size());
  const auto n = static_cast<long>(pop.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) fitness[static_cast<std::size_t>(i)] = slot_objective(ctx, pop[static_cast<std::size_t>(i)]);
}

GaResult ga_optimize(const SlotContext& ctx, const GaConfig& cfg, Rng& rng) {
  if (cfg.population < 1) throw std::invalid_argument("GA population must be non-empty");
  if (cfg.generations < 0) throw std::invalid_argument("GA generations must be non-negative");
  const std::size_t genes = 2 * ctx.snapshot->users.size();
  const auto p = static_cast<std::size_t>(cfg.population);
  const double pm = cfg.mutation_prob >= 0.0 ? cfg.mutation_prob : 1.0 / static_cast<double>(genes);
  auto evaluate = cfg.parallel_fitness ? evaluate_population_parallel : evaluate_population_serial;

  Population pop(p, std::vector<double>(genes));
  for (auto& ind : pop)
    for (auto& g : ind) g = rng.uniform();
  std::vector<double> fitness;
  evaluate(ctx, pop, fitness);

  GaResult best;
  const auto first = static_cast<std::size_t>(std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
  best.genes = pop[first];
  best.fitness = fitness[first];
  best.history.push_back(best.fitness);

  Population next;
  next.reserve(p);
  for (int gen = 0; gen < cfg.generations; ++gen) {
    next.clear();
    next.push_back(best.genes);
    while (next.size() < p) {
      auto c1 = pop[tournament(fitness, rng)];
      auto c2 = pop[tournament(fitness, rng)];
      for (std::size_t i = 0; i < genes; ++i)
        if (rng.uniform() < cfg.crossover_prob) sbx_crossover(c1[i], c2[i], cfg.crossover_eta, rng);
      for (auto* c : {&c1, &c2})
        for (auto& g : *c)
          if (rng.uniform() < pm) g = polynomial_mutation(g, cfg.mutation_eta, rng);
      next.push_back(std::move(c1));
      if (next.size() < p) next.push_back(std::move(c2));
    }
    pop.swap(next);
    evaluate(ctx, pop, fitness);
    for (std::size_t i = 0; i < p; ++i) {
      if (fitness[i] < best.fitness) {
        best.fitness = fitness[i];
        best.genes = pop[i];
      }
    }
    best.history.push_back(best.fitness);
  }

  std::vector<ServiceRequest> requests;
  for (const auto& u : ctx.snapshot->users) requests.push_back(u.request);
  best.allocation = agents::amend_continuous(best.genes, agents::cached_mask(*ctx.cache, requests));
  return best;
}

}  // namespace aigc::baselines
