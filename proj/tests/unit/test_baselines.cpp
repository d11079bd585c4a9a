#include "doctest.h"

#include <string>

#include "neurohotnet/baselines.hpp"
#include "neurohotnet/diagnostics.hpp"
#include "neurohotnet/error.hpp"
#include "oracles.hpp"

using namespace neurohotnet;

TEST_CASE("null data gives no naive components") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto samples = testsupport::null_subjects(15, 30, 50, seed);
    CHECK(naive_detect(samples, 1e-6).components.empty());
  }
}

TEST_CASE("planted clique is recovered exactly") {
  const std::vector<std::size_t> clique{3, 6, 8, 11, 14};
  // many regions keep the grand-mean shift from the clique small
  const auto samples = testsupport::planted_subjects(60, clique, 0.7, 30, 40, 42);
  const auto found = naive_detect(samples, 1e-4);
  REQUIRE(found.components.size() == 1);
  CHECK(found.components[0] == NodeSet(clique, 60));
  CHECK(found.delta == 1e-4);
}

TEST_CASE("smaller epsilon never adds edges") {
  const auto samples = testsupport::planted_subjects(12, {0, 1, 2, 3}, 0.3, 20, 40, 3);
  const Matrix p = naive_pair_pvalues(samples);
  CHECK(p.diagonal().isOnes());
  std::size_t previous = 1000;
  for (double eps : {0.5, 0.1, 1e-2, 1e-4, 1e-8}) {
    std::size_t edges = 0;
    for (int i = 0; i < 12; ++i) {
      for (int j = i + 1; j < 12; ++j) edges += p(i, j) < eps;
    }
    CHECK(edges <= previous);
    previous = edges;
  }
}

TEST_CASE("naive detection is label equivariant") {
  const auto samples = testsupport::planted_subjects(10, {0, 2, 4, 6}, 0.7, 30, 60, 12);
  const std::vector<int> perm{9, 3, 0, 7, 5, 1, 8, 2, 6, 4};
  Eigen::PermutationMatrix<Eigen::Dynamic> p(10);
  for (int i = 0; i < 10; ++i) p.indices()(i) = perm[i];
  std::vector<SubjectSample> moved;
  for (const auto& s : samples) {
    moved.push_back(SubjectSample::from_correlations(s.subject_id(), p * s.correlations() * p.transpose()));
  }
  const auto a = naive_detect(samples, 1e-3).components;
  const auto b = naive_detect(moved, 1e-3).components;
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::vector<std::size_t> mapped;
    for (auto v : a[k]) mapped.push_back(static_cast<std::size_t>(perm[v]));
    bool found = false;
    for (const auto& c : b) found = found || c == NodeSet(mapped, 10);
    CHECK(found);
  }
}

TEST_CASE("zero-variance pair is never an edge and warns") {
  std::vector<SubjectSample> samples;
  for (int i = 0; i < 5; ++i) {
    Matrix c = Matrix::Identity(4, 4);
    c(0, 1) = c(1, 0) = 0.9;
    c(2, 3) = c(3, 2) = 0.1 * i;
    samples.push_back(SubjectSample::from_correlations("s" + std::to_string(i), c));
  }
  int warnings = 0;
  auto previous = set_warning_sink([&](std::string_view) { ++warnings; });
  const Matrix p = naive_pair_pvalues(samples);
  set_warning_sink(previous);
  CHECK(p(0, 1) == 1.0);
  CHECK(warnings >= 1);
}

TEST_CASE("naive detection validates its input") {
  const auto two = testsupport::null_subjects(5, 2, 20, 1);
  CHECK_THROWS_AS(naive_detect(two, 0.01), ParameterError);
  const auto ok = testsupport::null_subjects(5, 4, 20, 1);
  CHECK_THROWS_AS(naive_detect(ok, 0.0), ParameterError);
  CHECK_THROWS_AS(naive_detect(ok, 1.0), ParameterError);
}

TEST_CASE("naive detection is thread independent") {
  const auto samples = testsupport::planted_subjects(25, {0, 1, 2, 3}, 0.5, 20, 50, 8);
  CHECK((naive_pair_pvalues(samples, 1).array() == naive_pair_pvalues(samples, 3).array()).all());
}
