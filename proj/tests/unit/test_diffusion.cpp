#include <cmath>
#include <stdexcept>

#include "aigc/diffusion/denoiser.hpp"
#include "aigc/diffusion/schedule.hpp"
#include "doctest.h"
#include "gradient_probe.hpp"
#include "oracles.hpp"

using namespace aigc;
using namespace aigc::diffusion;
using nn::Matrix;

namespace {

Denoiser zero_denoiser(int a, int s, int L) {
  Rng rng(0);
  Denoiser d(a, s, L, {8}, rng);
  for (auto& layer : d.net().mutable_layers()) {
    layer.weight.setZero();
    layer.bias.setZero();
  }
  return d;
}

Matrix randn(Eigen::Index r, Eigen::Index c, Rng& rng) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = rng.normal();
  return m;
}

}  // namespace

TEST_CASE("schedule invariants across step counts") {
  for (int L : {1, 2, 5, 10, 50}) {
    const auto s = build_schedule(L, 0.1, 10.0);
    CHECK(s.steps == L);
    CHECK(s.beta_bar_at(1) == 0.0);
    double prod = 1.0;
    for (int l = 1; l <= L; ++l) {
      CHECK(s.beta_at(l) > 0.0);
      CHECK(s.beta_at(l) < 1.0);
      CHECK(s.alpha_at(l) == 1.0 - s.beta_at(l));
      prod *= s.alpha_at(l);
      CHECK(std::abs(s.alpha_bar_at(l) - prod) <= 1e-15);
      if (l > 1) CHECK(s.alpha_bar_at(l) < s.alpha_bar_at(l - 1));
      CHECK(s.beta_bar_at(l) >= 0.0);
      CHECK(s.beta_bar_at(l) <= s.beta_at(l));
      const double posterior = (1.0 - s.alpha_bar_before(l)) / (1.0 - s.alpha_bar_at(l)) * s.beta_at(l);
      CHECK(s.beta_bar_at(l) == doctest::Approx(posterior).epsilon(1e-14));
    }
  }
}

TEST_CASE("schedule rejects invalid ranges") {
  CHECK_THROWS_AS(build_schedule(0, 0.1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(build_schedule(5, 0.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(build_schedule(5, 10.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(build_schedule(5, 0.1, 10.0, -1.0), std::invalid_argument);
}

TEST_CASE("forward marginal in degenerate cases") {
  NoiseSchedule flat;
  flat.steps = 1;
  flat.beta = {0.0};
  flat.alpha = {1.0};
  flat.alpha_bar = {1.0};
  flat.beta_bar = {0.0};
  const std::vector<double> x0 = {0.3, -0.7};
  const std::vector<double> e1 = {1.0, 0.0};
  CHECK(forward_marginal(x0, 1, flat, e1) == x0);

  const auto s = build_schedule(5, 0.1, 10.0);
  const std::vector<double> zero = {0.0, 0.0};
  for (int l = 1; l <= 5; ++l) {
    const auto x = forward_marginal(zero, l, s, e1);
    CHECK(x[0] == doctest::Approx(std::sqrt(1.0 - s.alpha_bar_at(l))).epsilon(1e-15));
    CHECK(x[1] == 0.0);
  }
}

TEST_CASE("zero-weight denoiser rescales by 1/sqrt(alpha)") {
  const auto d = zero_denoiser(3, 2, 5);
  const auto s = build_schedule(5, 0.1, 10.0);
  Matrix x(3, 1);
  x << 0.4, -1.1, 2.0;
  for (int l = 1; l <= 5; ++l) {
    const Matrix mu = reverse_mean(d, x, l, Matrix::Zero(2, 1), s);
    for (int i = 0; i < 3; ++i) CHECK(mu(i, 0) == doctest::Approx(x(i, 0) / std::sqrt(s.alpha_at(l))).epsilon(1e-15));
  }
}

TEST_CASE("reverse mean tends to x as alpha tends to 1") {
  NoiseSchedule s;
  s.steps = 1;
  s.beta = {1e-12};
  s.alpha = {1.0 - 1e-12};
  s.alpha_bar = s.alpha;
  s.beta_bar = {0.0};
  Matrix x(2, 1);
  x << 0.5, -0.25;
  Matrix eps(2, 1);
  eps << 3.0, -7.0;
  const Matrix mu = reverse_mean_from_noise(s, 1, x, eps, nullptr);
  CHECK(std::abs(mu(0, 0) - x(0, 0)) < 1e-5);
  CHECK(std::abs(mu(1, 0) - x(1, 0)) < 1e-5);
}

TEST_CASE("noise-prediction mean equals the posterior mean of the implied clean action") {
  const auto s = build_schedule(5, 0.1, 10.0);
  Rng rng(1);
  for (int l = 1; l <= 5; ++l) {
    const Matrix x = randn(4, 3, rng);
    const Matrix eps = randn(4, 3, rng);
    const Matrix mu = reverse_mean_from_noise(s, l, x, eps, nullptr);
    const double bar = s.alpha_bar_at(l);
    const double prev = s.alpha_bar_before(l);
    const Matrix x0 = (x - std::sqrt(1.0 - bar) * eps) / std::sqrt(bar);
    const Matrix post = std::sqrt(prev) * s.beta_at(l) / (1.0 - bar) * x0 +
                        std::sqrt(s.alpha_at(l)) * (1.0 - prev) / (1.0 - bar) * x;
    CHECK((mu - post).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("clean-action clipping only touches entries beyond the bound") {
  const auto open = build_schedule(5, 0.1, 10.0);
  const auto clipped = build_schedule(5, 0.1, 10.0, 1.0);
  Rng rng(2);
  const Matrix x = 3.0 * randn(4, 50, rng);
  const Matrix eps = randn(4, 50, rng);
  for (int l = 1; l <= 5; ++l) {
    Matrix mask;
    const Matrix a = reverse_mean_from_noise(open, l, x, eps, nullptr);
    const Matrix b = reverse_mean_from_noise(clipped, l, x, eps, &mask);
    const double bar = open.alpha_bar_at(l);
    const double k1 = std::sqrt(open.alpha_bar_before(l)) * open.beta_at(l) / (1.0 - bar);
    const double k2 = std::sqrt(open.alpha_at(l)) * (1.0 - open.alpha_bar_before(l)) / (1.0 - bar);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double x0 = (x(i) - std::sqrt(1.0 - bar) * eps(i)) / std::sqrt(bar);
      if (std::abs(x0) <= 1.0) {
        CHECK(mask(i) == 0.0);
        CHECK(b(i) == doctest::Approx(a(i)).epsilon(1e-12));
      } else {
        CHECK(mask(i) == 1.0);
        CHECK(b(i) == doctest::Approx(k1 * (x0 > 0 ? 1.0 : -1.0) + k2 * x(i)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sampled actions lie in (0,1) and repeat under the same seed") {
  Rng init(3);
  Denoiser d(6, 5, 5, {16, 16}, init);
  const auto s = build_schedule(5, 0.1, 10.0, 3.0);
  Rng srng(4);
  const Matrix states = randn(5, 10000, srng);
  Rng a(5);
  Rng b(5);
  const Matrix x = sample_action(d, states, s, a, false);
  const Matrix y = sample_action(d, states, s, b, false);
  CHECK((x.array() > 0.0).all());
  CHECK((x.array() < 1.0).all());
  CHECK((x.array() == y.array()).all());
}

TEST_CASE("deterministic chain is a pure function of parameters, state and start") {
  Rng init(6);
  Denoiser d(3, 4, 5, {8, 8}, init);
  const auto s = build_schedule(5, 0.1, 10.0);
  Rng r(7);
  const Matrix states = randn(4, 3, r);
  const Matrix start = randn(3, 3, r);
  const auto t1 = run_chain(d, s, states, start, {});
  const auto t2 = run_chain(d, s, states, start, {});
  CHECK((t1.action.array() == t2.action.array()).all());
  Rng ra(8);
  Rng rb(9);
  const Matrix da = sample_action(d, states, s, ra, true);
  const Matrix db = sample_action(d, states, s, rb, true);
  // Different seeds give different x^L; the deterministic flag only removes the per-step noise.
  CHECK_FALSE((da.array() == db.array()).all());
}

TEST_CASE("chain rejects a mismatched schedule or noise list") {
  Rng init(10);
  Denoiser d(2, 2, 5, {4}, init);
  const auto s3 = build_schedule(3, 0.1, 10.0);
  CHECK_THROWS_AS(run_chain(d, s3, Matrix::Zero(2, 1), Matrix::Zero(2, 1), {}), std::invalid_argument);
  const auto s5 = build_schedule(5, 0.1, 10.0);
  CHECK_THROWS_AS(run_chain(d, s5, Matrix::Zero(2, 1), Matrix::Zero(2, 1), {Matrix::Zero(2, 1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(d.network_input(Matrix::Zero(2, 1), 6, Matrix::Zero(2, 1)), std::invalid_argument);
}

TEST_CASE("chain gradient vanishes with a zero output gradient") {
  Rng init(11);
  Denoiser d(3, 2, 5, {8}, init);
  const auto s = build_schedule(5, 0.1, 10.0, 3.0);
  Rng r(12);
  const auto trace = sample_chain(d, s, randn(2, 4, r), r, false);
  const auto g = chain_gradient(d, s, trace, Matrix::Zero(3, 4));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.at(i) == 0.0);
}

TEST_CASE("chain gradient passes frozen-noise finite differences") {
  Rng rng(13);
  for (int L : {1, 5}) {
    for (double clip : {0.0, 1.0, 3.0}) {
      const auto r = aigc::testing::chain_fd_probe(L, clip, 10, rng);
      CAPTURE(L);
      CAPTURE(clip);
      CHECK(r.max_rel < 1e-3);
    }
  }
}

TEST_CASE("zero-weight chain without the squash is centred") {
  const auto d = zero_denoiser(2, 1, 5);
  const auto s = build_schedule(5, 0.1, 10.0);
  Rng rng(14);
  const int n = 100000;
  const auto trace = sample_chain(d, s, Matrix::Zero(1, n), rng, false);
  for (int i = 0; i < 2; ++i) {
    const auto row = trace.x[0].row(i).array();
    const double mean = row.mean();
    const double var = (row - mean).square().sum() / (n - 1);
    CHECK(std::abs(mean) <= 4.0 * std::sqrt(var / n));
  }
}

TEST_CASE("stochastic chain injects no noise at the last step") {
  Rng init(15);
  Denoiser d(2, 2, 5, {4}, init);
  const auto s = build_schedule(5, 0.1, 10.0);
  Rng rng(16);
  const auto t = sample_chain(d, s, Matrix::Zero(2, 3), rng, false);
  CHECK(t.noise[0].isZero());
  CHECK_FALSE(t.noise[4].isZero());
  CHECK((t.action - nn::logistic(t.x[0])).cwiseAbs().maxCoeff() == 0.0);
}
