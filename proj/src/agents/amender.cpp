#include "aigc/agents/amender.hpp"

#include <stdexcept>

namespace aigc::agents {

namespace {

void check_dims(std::size_t raw, std::size_t users) {
  if (raw != 2 * users) throw std::invalid_argument("raw action must have 2U entries");
}

}  // namespace

Allocation amend_continuous(std::span<const double> raw, std::span<const std::uint8_t> cached) {
  const std::size_t u = cached.size();
  check_dims(raw.size(), u);
  Allocation a;
  a.b.assign(u, 0.0);
  a.xi.assign(u, 0.0);
  double b_sum = 0.0;
  double xi_sum = 0.0;
  for (std::size_t i = 0; i < u; ++i) {
    if (raw[i] < 0.0 || raw[u + i] < 0.0) throw std::invalid_argument("raw action must be non-negative");
    b_sum += raw[i];
    if (cached[i] != 0) xi_sum += raw[u + i];
  }
  for (std::size_t i = 0; i < u; ++i) {
    a.b[i] = b_sum > 0.0 ? raw[i] / b_sum : 1.0 / static_cast<double>(u);
    if (cached[i] != 0 && xi_sum > 0.0) a.xi[i] = raw[u + i] / xi_sum;
  }
  return a;
}

std::vector<double> amend_backward(std::span<const double> raw, std::span<const std::uint8_t> cached,
                                   std::span<const double> grad_allocation) {
  const std::size_t u = cached.size();
  check_dims(raw.size(), u);
  check_dims(grad_allocation.size(), u);
  std::vector<double> out(2 * u, 0.0);
  double b_sum = 0.0;
  double b_dot = 0.0;
  double xi_sum = 0.0;
  double xi_dot = 0.0;
  for (std::size_t i = 0; i < u; ++i) {
    b_sum += raw[i];
    b_dot += grad_allocation[i] * raw[i];
    if (cached[i] != 0) {
      xi_sum += raw[u + i];
      xi_dot += grad_allocation[u + i] * raw[u + i];
    }
  }
  // Both fallbacks are locally constant, so their gradient is zero.
  for (std::size_t i = 0; i < u; ++i) {
    if (b_sum > 0.0) out[i] = grad_allocation[i] / b_sum - b_dot / (b_sum * b_sum);
    if (cached[i] != 0 && xi_sum > 0.0)
      out[u + i] = grad_allocation[u + i] / xi_sum - xi_dot / (xi_sum * xi_sum);
  }
  return out;
}

std::vector<double> flatten(const Allocation& alloc) {
  std::vector<double> v(alloc.b);
  v.insert(v.end(), alloc.xi.begin(), alloc.xi.end());
  return v;
}

CacheVector decode_caching_action(std::uint64_t action, int models) {
  if (models < 1 || models > 63) throw std::invalid_argument("model count out of range");
  if (action >= (std::uint64_t{1} << models)) throw std::invalid_argument("caching action out of range");
  CacheVector c;
  c.rho.resize(static_cast<std::size_t>(models));
  for (int m = 0; m < models; ++m) c.rho[static_cast<std::size_t>(m)] = (action >> (models - 1 - m)) & 1U;
  return c;
}

std::uint64_t encode_caching_action(const CacheVector& cache) {
  std::uint64_t a = 0;
  for (auto bit : cache.rho) a = (a << 1) | (bit != 0 ? 1U : 0U);
  return a;
}

}  // namespace aigc::agents
