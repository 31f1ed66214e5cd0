#include "aigc/kernels/dense_reference.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aigc;

TEST_CASE("reference kernel agrees with the network forward pass") {
  Rng rng(1);
  nn::DenseNet net(9, {17, 13, 5}, 4, nn::Activation::relu, nn::Activation::logistic, rng);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(9);
    for (double& v : x) v = rng.normal();
    const auto ref = kernels::dense_forward_reference(net, x);
    const auto oracle = aigc::testing::mlp_forward(net.layers(), x);
    const auto eig = net.forward(std::span<const double>(x));
    for (std::size_t i = 0; i < ref.size(); ++i) {
      // Contraction into FMA may differ between the two loop nests.
      CHECK(ref[i] == doctest::Approx(oracle[i]).epsilon(1e-14));
      CHECK(ref[i] == doctest::Approx(eig[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("parallel batch kernel is bit-identical to the serial one") {
  Rng rng(2);
  nn::DenseNet net(12, {32, 32}, 6, nn::Activation::relu, nn::Activation::identity, rng);
  for (int cols : {1, 7, 64, 257}) {
    nn::Matrix x(12, cols);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
    const auto serial = kernels::dense_forward_batch_serial(net, x);
    const auto parallel = kernels::dense_forward_batch_parallel(net, x);
    CHECK(serial.rows() == 6);
    CHECK(serial.cols() == cols);
    CHECK((serial.array() == parallel.array()).all());
    for (int j = 0; j < cols; j += 13) {
      const std::vector<double> col(x.col(j).data(), x.col(j).data() + 12);
      const auto one = kernels::dense_forward_reference(net, col);
      for (int i = 0; i < 6; ++i) CHECK(serial(i, j) == one[static_cast<std::size_t>(i)]);
    }
  }
  CHECK(kernels::parallel_threads() >= 1);
}

TEST_CASE("reference kernel rejects a mismatched input") {
  Rng rng(3);
  nn::DenseNet net(3, {4}, 2, nn::Activation::relu, nn::Activation::identity, rng);
  const std::vector<double> bad(5, 0.0);
  CHECK_THROWS(kernels::dense_forward_reference(net, bad));
  CHECK_THROWS(kernels::dense_forward_batch_parallel(net, nn::Matrix::Zero(4, 2)));
}
