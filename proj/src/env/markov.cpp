#include "aigc/env/markov.hpp"

#include <cmath>
#include <stdexcept>

namespace aigc {

void validate_chain(const MarkovChain& chain) {
  const std::size_t n = chain.transition.size();
  if (n == 0) throw std::invalid_argument("markov chain has no states");
  if (chain.current >= n) throw std::invalid_argument("markov chain state out of range");
  for (const auto& row : chain.transition) {
    if (row.size() != n) throw std::invalid_argument("transition matrix must be square");
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0)) throw std::invalid_argument("negative transition probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("transition row does not sum to 1");
  }
}

std::size_t next_state(std::span<const double> row, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] <= 0.0) continue;
    cumulative += row[j];
    last_positive = j;
    if (u < cumulative) return j;
  }
  // u landed in the rounding gap above the final cumulative sum.
  return last_positive;
}

std::size_t step_markov(MarkovChain& chain, Rng& rng) {
  chain.current = next_state(chain.transition[chain.current], rng.uniform());
  return chain.current;
}

}  // namespace aigc
