#include "doctest.h"

#include <algorithm>

#include "neurohotnet/detect.hpp"
#include "oracles.hpp"

using namespace neurohotnet;

namespace {

InfluenceGraph from_matrix(const Matrix& m) {
  return InfluenceGraph(index_labels(static_cast<std::size_t>(m.rows())), m, 1.0);
}

std::size_t surviving_edges(const Matrix& t) {
  std::size_t n = 0;
  for (int i = 0; i < t.rows(); ++i) {
    for (int j = i + 1; j < t.cols(); ++j) n += t(i, j) != 0;
  }
  return n;
}

}  // namespace

TEST_CASE("delta zero keeps every off-diagonal entry") {
  const auto g = diffuse(WeightedGraph::unlabeled(testsupport::random_weights(8, 1.0, 3)), 1.0);
  const Matrix t = threshold(g, 0.0);
  CHECK(t.diagonal().cwiseAbs().sum() == 0);
  Matrix off = g.influence();
  off.diagonal().setZero();
  CHECK((t.array() == off.array()).all());
}

TEST_CASE("delta above the maximum clears everything") {
  const auto g = diffuse(WeightedGraph::unlabeled(testsupport::toy_weights()), 1.0);
  CHECK(threshold(g, g.influence().maxCoeff() * 1.01).cwiseAbs().sum() == 0);
}

TEST_CASE("entries equal to delta survive") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = 0.2;
  m(1, 2) = m(2, 1) = 0.1;
  const Matrix t = threshold(from_matrix(m), 0.2);
  CHECK(t(0, 1) == 0.2);
  CHECK(t(1, 2) == 0.0);
}

TEST_CASE("delta between the fifth and sixth largest toy edges keeps five") {
  const auto g = diffuse(WeightedGraph::unlabeled(testsupport::toy_weights()), 3.4);
  std::vector<double> values;
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) values.push_back(g.influence()(i, j));
  }
  std::sort(values.rbegin(), values.rend());
  REQUIRE(values[4] > values[5]);
  const double delta = 0.5 * (values[4] + values[5]);
  CHECK(surviving_edges(threshold(g, delta)) == 5);
}

TEST_CASE("pairs are dropped from the candidate list") {
  Matrix m = Matrix::Zero(8, 8);
  auto link = [&](int a, int b) { m(a, b) = m(b, a) = 1.0; };
  link(0, 1); link(1, 2); link(0, 2);
  link(3, 4); link(4, 5);
  link(6, 7);
  const auto c = candidates(from_matrix(m), 0.5);
  REQUIRE(c.components.size() == 2);
  CHECK(c.components[0] == NodeSet({0, 1, 2}, 8));
  CHECK(c.components[1] == NodeSet({3, 4, 5}, 8));
  CHECK(c.delta == 0.5);
  CHECK(c.source_labels.size() == 8);
}

TEST_CASE("fully connected graph is one candidate") {
  Matrix m = Matrix::Constant(6, 6, 0.3);
  CHECK(candidates(from_matrix(m), 0.1).components.size() == 1);
  CHECK(candidates(from_matrix(m), 0.1).components[0].size() == 6);
}

TEST_CASE("raising delta splits a six-node component into two triangles") {
  Matrix m = Matrix::Zero(6, 6);
  auto link = [&](int a, int b, double v) { m(a, b) = m(b, a) = v; };
  link(0, 1, 0.9); link(1, 2, 0.9); link(0, 2, 0.9);
  link(3, 4, 0.8); link(4, 5, 0.8); link(3, 5, 0.8);
  link(2, 3, 0.4);
  const auto low = candidates(from_matrix(m), 0.3).components;
  const auto high = candidates(from_matrix(m), 0.5).components;
  REQUIRE(low.size() == 1);
  CHECK(low[0].size() == 6);
  REQUIRE(high.size() == 2);
  for (const auto& c : high) {
    for (auto node : c) CHECK(low[0].contains(node));
  }
}

TEST_CASE("components are nested across deltas") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto g = diffuse(WeightedGraph::unlabeled(testsupport::random_weights(30, 0.15, seed)), 2.0);
    const auto grid = linear_grid(0.0, 0.2, 21);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
      const auto lo = candidates(g, grid[k]).components;
      const auto hi = candidates(g, grid[k + 1]).components;
      for (const auto& c : hi) {
        const bool nested = std::any_of(lo.begin(), lo.end(), [&](const NodeSet& big) {
          return std::all_of(c.begin(), c.end(), [&](std::size_t v) { return big.contains(v); });
        });
        CHECK(nested);
      }
    }
  }
}

TEST_CASE("candidates are deterministic") {
  const auto g = diffuse(WeightedGraph::unlabeled(testsupport::random_weights(30, 0.15, 4)), 2.0);
  CHECK(candidates(g, 0.02).components == candidates(g, 0.02).components);
}

TEST_CASE("delta profile and grid") {
  const auto grid = linear_grid(0.0, 1.0, 5);
  REQUIRE(grid.size() == 5);
  CHECK(grid[2] == doctest::Approx(0.5));
  CHECK(grid.back() == 1.0);
  const auto g = diffuse(WeightedGraph::unlabeled(testsupport::toy_weights()), 3.4);
  const auto profile = delta_profile(g, {0.02, 0.05});
  REQUIRE(profile.size() == 2);
  CHECK(profile[0].sizes == std::vector<std::size_t>{10});
  CHECK(profile[1].sizes == std::vector<std::size_t>{6});
}
