#include "aigc/env/popularity.hpp"

#include <cmath>
#include <stdexcept>

namespace aigc {

std::vector<double> zipf_pmf(double gamma, int m_count) {
  if (m_count < 1) throw std::invalid_argument("zipf_pmf: model count must be positive");
  if (!(gamma >= 0.0)) throw std::invalid_argument("zipf_pmf: skewness must be non-negative");
  std::vector<double> pmf(static_cast<std::size_t>(m_count));
  double total = 0.0;
  for (int m = 1; m <= m_count; ++m) {
    pmf[m - 1] = std::pow(static_cast<double>(m), -gamma);
    total += pmf[m - 1];
  }
  for (double& p : pmf) p /= total;
  return pmf;
}

int sample_discrete(const std::vector<double>& pmf, Rng& rng) {
  return static_cast<int>(next_state(pmf, rng.uniform()));
}

}  // namespace aigc
