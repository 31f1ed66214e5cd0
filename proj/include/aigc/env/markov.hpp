#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aigc/config.hpp"
#include "aigc/random.hpp"

namespace aigc {

/// Finite-state chain with a row-stochastic transition matrix.
struct MarkovChain {
  MatrixRows transition;
  std::size_t current = 0;
};

void validate_chain(const MarkovChain& chain);

/// Inverse-CDF lookup: the first state j with u < cumulative(j). States with
/// zero probability are never returned.
std::size_t next_state(std::span<const double> row, double u);

/// Advances the chain by one uniform draw and returns the new state.
std::size_t step_markov(MarkovChain& chain, Rng& rng);

}  // namespace aigc
