#include "doctest.h"

#include "neurohotnet/error.hpp"
#include "neurohotnet/nearest_correlation.hpp"
#include "neurohotnet/rng.hpp"
#include "oracles.hpp"

using namespace neurohotnet;

TEST_CASE("valid correlation matrices are fixed points") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto c = testsupport::planted_subjects(7, {0, 1, 2}, 0.5, 1, 30, seed)[0].correlations();
    const auto r = nearest_correlation(c);
    CHECK((r.correlation - c).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("two-by-two overshoot is clipped to one") {
  Matrix a(2, 2);
  a << 1.0, 1.2, 1.2, 1.0;
  const auto r = nearest_correlation(a);
  CHECK((r.correlation - Matrix::Ones(2, 2)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("random indefinite inputs match the dual oracle") {
  RandomStream rng(2024, 9);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = i; j < 5; ++j) a(i, j) = a(j, i) = i == j ? 1.0 : 2.0 * rng.uniform() - 1.0;
    }
    const auto r = nearest_correlation(a, {1e-12, 5000, 1e-12});
    const Matrix oracle = testsupport::nearest_correlation_oracle(a);
    CHECK((r.correlation - oracle).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK(r.correlation.diagonal().isOnes());
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.correlation);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("PSD projection") {
  Matrix a(2, 2);
  a << 0.0, 1.0, 1.0, 0.0;
  const Matrix p = project_psd(a);
  CHECK(p(0, 0) == doctest::Approx(0.5));
  CHECK(p(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("nearest correlation errors") {
  Matrix a = Matrix::Identity(3, 3);
  a(0, 1) = 0.5;
  CHECK_THROWS_AS(nearest_correlation(a), StructuralError);
  Matrix hard(3, 3);
  hard << 1, 0.9, -0.9, 0.9, 1, 0.9, -0.9, 0.9, 1;
  CHECK_THROWS_AS(nearest_correlation(hard, {1e-15, 2, 1e-12}), ConvergenceError);
}
