#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace aigc {

/// splitmix64-based combination of two 64-bit values.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Seeded generator used for every stochastic draw in the simulator.
///
/// The engine is mt19937_64 (bit-exact across standard libraries); the
/// distribution helpers below are written out by hand for the same reason,
/// since the std:: distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  /// Child generator that depends only on (seed, id), never on how many
  /// draws the parent has made.
  Rng stream(std::uint64_t id) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Unit-mean exponential; strictly positive.
  double exponential();
  /// Uniform integer in [0, n); n must be positive.
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace aigc
