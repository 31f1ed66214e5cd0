#pragma once

#include <cstddef>
#include <vector>

#include "aigc/env/markov.hpp"

namespace aigc {

/// Zipf probabilities over m_count models: entry i proportional to (i+1)^-gamma.
std::vector<double> zipf_pmf(double gamma, int m_count);

/// Samples an index from a probability vector by inverse CDF.
int sample_discrete(const std::vector<double>& pmf, Rng& rng);

struct PopularityChain {
  std::vector<double> skewness;
  MarkovChain chain;

  double current_skewness() const { return skewness[chain.current]; }
};

}  // namespace aigc
