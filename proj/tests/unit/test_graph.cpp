#include "doctest.h"

#include "neurohotnet/error.hpp"
#include "neurohotnet/graph.hpp"
#include "oracles.hpp"

using namespace neurohotnet;

namespace {

Matrix path3() {
  Matrix w = Matrix::Zero(3, 3);
  w(0, 1) = w(1, 0) = 1;
  w(1, 2) = w(2, 1) = 1;
  return w;
}

Matrix two_triangles() {
  Matrix w = Matrix::Zero(6, 6);
  for (int base : {0, 3}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) w(base + i, base + j) = 1;
      }
    }
  }
  return w;
}

}  // namespace

TEST_CASE("weighted degrees of a unit path") {
  const auto d = weighted_degrees(WeightedGraph::unlabeled(path3()));
  CHECK(d(0) == 1);
  CHECK(d(1) == 2);
  CHECK(d(2) == 1);
}

TEST_CASE("weighted degrees of an empty graph are zero") {
  const auto d = weighted_degrees(WeightedGraph::unlabeled(Matrix::Zero(4, 4)));
  CHECK(d.cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("toy hub has degree six") {
  const auto d = weighted_degrees(WeightedGraph::unlabeled(testsupport::toy_weights()));
  CHECK(d(0) == 6);
}

TEST_CASE("degree sum is twice the upper triangle") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix w = testsupport::random_weights(9, 0.4, seed);
    const auto d = weighted_degrees(WeightedGraph::unlabeled(w));
    double upper = 0;
    for (int i = 0; i < 9; ++i) {
      for (int j = i + 1; j < 9; ++j) upper += w(i, j);
    }
    CHECK(d.sum() == doctest::Approx(2 * upper).epsilon(1e-14));
  }
}

TEST_CASE("normalization of a regular graph") {
  // 4-cycle, weight 2: every edge becomes w / (w d) * ... = 1/d
  Matrix w = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) w(i, (i + 1) % 4) = w((i + 1) % 4, i) = 2;
  const Matrix m = normalize_symmetric(WeightedGraph::unlabeled(w));
  CHECK(m(0, 1) == doctest::Approx(0.5));
  CHECK(m(0, 2) == 0);
}

TEST_CASE("single edge normalizes to one for any weight") {
  for (double weight : {1e-3, 1.0, 7.5, 1e4}) {
    Matrix w = Matrix::Zero(2, 2);
    w(0, 1) = w(1, 0) = weight;
    const Matrix m = normalize_symmetric(WeightedGraph::unlabeled(w));
    CHECK(m(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m(0, 0) == 0);
  }
}

TEST_CASE("isolated node has a zero row and column") {
  Matrix w = path3();
  w.conservativeResize(4, 4);
  w.row(3).setZero();
  w.col(3).setZero();
  const Matrix m = normalize_symmetric(WeightedGraph::unlabeled(w));
  CHECK(m.row(3).cwiseAbs().sum() == 0);
  CHECK(m.col(3).cwiseAbs().sum() == 0);
}

TEST_CASE("normalization is scale invariant") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix w = testsupport::random_weights(8, 0.5, seed);
    const Matrix a = normalize_symmetric(WeightedGraph::unlabeled(w));
    const Matrix b = normalize_symmetric(WeightedGraph::unlabeled(w * 37.25));
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("components of two triangles") {
  const auto c = connected_components(two_triangles(), 3);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == NodeSet({0, 1, 2}, 6));
  CHECK(c[1] == NodeSet({3, 4, 5}, 6));
}

TEST_CASE("a lone pair is not a component") {
  Matrix w = Matrix::Zero(4, 4);
  w(1, 2) = w(2, 1) = 1;
  CHECK(connected_components(w, 3).empty());
  CHECK(connected_components(w, 2).size() == 1);
}

TEST_CASE("toy graph is one component of ten") {
  const auto c = connected_components(testsupport::toy_weights(), 3);
  REQUIRE(c.size() == 1);
  CHECK(c[0].size() == 10);
}

TEST_CASE("asymmetric adjacency is rejected") {
  Matrix w = path3();
  w(0, 2) = 1;
  CHECK_THROWS_AS(connected_components(w, 1), StructuralError);
  CHECK_THROWS_AS(WeightedGraph::unlabeled(w), StructuralError);
  CHECK_NOTHROW(WeightedGraph::unlabeled(w, WeightedGraph::Repair::kSymmetrize));
}

TEST_CASE("negative or non-finite weights are rejected") {
  Matrix w = path3();
  w(0, 1) = w(1, 0) = -1;
  CHECK_THROWS_AS(WeightedGraph::unlabeled(w), StructuralError);
  w(0, 1) = w(1, 0) = std::nan("");
  CHECK_THROWS_AS(WeightedGraph::unlabeled(w), StructuralError);
}

TEST_CASE("duplicate labels are rejected") {
  CHECK_THROWS_AS(WeightedGraph({"a", "a", "b"}, path3()), StructuralError);
}

TEST_CASE("components form a partition of the non-isolated nodes") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Matrix w = testsupport::random_weights(15, 0.12, seed);
    const auto comps = connected_components(w, 1);
    std::vector<int> owner(15, -1);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (auto m : comps[c]) {
        CHECK(owner[m] == -1);
        owner[m] = static_cast<int>(c);
      }
    }
    for (int i = 0; i < 15; ++i) {
      const bool isolated = w.row(i).cwiseAbs().sum() == 0;
      CHECK((owner[i] == -1) == isolated);
      for (int j = 0; j < 15; ++j) {
        if (w(i, j) != 0) CHECK(owner[i] == owner[j]);
      }
    }
    for (std::size_t c = 1; c < comps.size(); ++c) CHECK(comps[c - 1].front() < comps[c].front());
  }
}

TEST_CASE("node sets validate their members") {
  CHECK_THROWS_AS(NodeSet({1, 1}, 3), StructuralError);
  CHECK_THROWS_AS(NodeSet({3}, 3), StructuralError);
  const NodeSet s({4, 0, 2}, 5);
  CHECK(s.members() == std::vector<std::size_t>{0, 2, 4});
  CHECK(symmetric_difference_size(s, NodeSet({0, 1}, 5)) == 3);
}
