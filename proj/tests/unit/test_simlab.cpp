#include "doctest.h"

#include "neurohotnet/error.hpp"
#include "neurohotnet/precision.hpp"
#include "neurohotnet/simlab.hpp"

using namespace neurohotnet;

namespace {

NodeSet ns(std::vector<std::size_t> m, std::size_t bound = 50) { return NodeSet(std::move(m), bound); }

double realized_density(const WeightedGraph& g) {
  const auto n = static_cast<double>(g.size());
  double edges = 0;
  for (int i = 0; i < g.weights().rows(); ++i) {
    for (int j = i + 1; j < g.weights().cols(); ++j) edges += g.weights()(i, j) > 0;
  }
  return edges / (n * (n - 1) / 2);
}

SimConfig small_config() {
  SimConfig cfg;
  cfg.regions = 30;
  cfg.subjects = 20;
  cfg.frames = 60;
  cfg.trials = 3;
  cfg.permutations = 100;
  cfg.delta = 0.02;
  cfg.nu = 0.05;
  cfg.epsilon = 1e-3;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("truth graph limits") {
  const auto full = generate_truth(20, 1.0, 8, 1);
  CHECK(realized_density(full) == 1.0);
  const auto empty = generate_truth(20, 0.0, 8, 1);
  CHECK(empty.weights().cwiseAbs().sum() == 0);
}

TEST_CASE("truth graph density and pruning") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = generate_truth(120, 0.3, 8, seed);
    const double d = realized_density(g);
    CHECK(d >= 0.25);
    CHECK(d <= 0.35);
    for (const auto& c : connected_components(g.weights(), 1)) CHECK(c.size() >= 8);
    CHECK(g.weights().maxCoeff() < 1.0);
  }
  const auto sparse = generate_truth(60, 0.02, 8, 5);
  for (const auto& c : connected_components(sparse.weights(), 1)) CHECK(c.size() >= 8);
}

TEST_CASE("truth graph is seeded") {
  CHECK((generate_truth(40, 0.3, 8, 9).weights().array() ==
         generate_truth(40, 0.3, 8, 9).weights().array()).all());
}

TEST_CASE("simulated subjects carry valid correlation matrices") {
  SimConfig cfg = small_config();
  const auto truth = generate_truth(cfg.regions, 0.3, 8, 2);
  const auto subjects = generate_subjects(truth, cfg, 3, true, 2);
  CHECK(subjects.size() == cfg.subjects);
  for (const auto& s : subjects) {
    const Matrix& c = s.correlations();
    CHECK((c - c.transpose()).cwiseAbs().maxCoeff() == 0);
    CHECK(c.diagonal().isOnes());
    Eigen::SelfAdjointEigenSolver<Matrix> es(c);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    REQUIRE(s.signals().has_value());
    CHECK(s.signals()->rows() == static_cast<long>(cfg.frames));
    CHECK(std::abs(s.signals()->mean() - cfg.signal_mean) < 50);
  }
  const auto again = generate_subjects(truth, cfg, 3, false, 1);
  CHECK((again[4].correlations().array() == subjects[4].correlations().array()).all());
  CHECK_FALSE(again[0].signals().has_value());
}

TEST_CASE("noiseless long series converge to the projected truth") {
  SimConfig cfg;
  cfg.regions = 10;
  cfg.subjects = 1;
  cfg.frames = 50000;
  cfg.noise_sd = 0.0;
  const auto truth = generate_truth(10, 0.6, 3, 4);
  const Matrix cov = simulation_covariance(truth, cfg);
  const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  const Matrix c = sd.cwiseInverse().asDiagonal() * cov * sd.cwiseInverse().asDiagonal();
  const auto s = generate_subjects(truth, cfg, 1);
  CHECK((s[0].correlations() - c).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("noise attenuates correlations by the variance ratio") {
  SimConfig cfg;
  cfg.regions = 10;
  cfg.subjects = 1;
  cfg.frames = 50000;
  cfg.noise_sd = 120.0;
  const auto truth = generate_truth(10, 0.6, 3, 4);
  const Matrix cov = simulation_covariance(truth, cfg);
  const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  const Matrix c = sd.cwiseInverse().asDiagonal() * cov * sd.cwiseInverse().asDiagonal();
  const double factor = cfg.signal_sd * cfg.signal_sd /
                        (cfg.signal_sd * cfg.signal_sd + cfg.noise_sd * cfg.noise_sd);
  const auto s = generate_subjects(truth, cfg, 1);
  Matrix expect = c * factor;
  expect.diagonal().setOnes();
  CHECK((s[0].correlations() - expect).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("recovery rate") {
  const std::vector<NodeSet> truth{ns({0, 1, 2, 3, 4, 5}), ns({10, 11, 12, 13, 14, 15, 16, 17})};
  CHECK(recovery_rate(truth, truth) == 1.0);
  CHECK(recovery_rate({}, truth) == 1.0);
  CHECK(recovery_rate(truth, {}) == 0.0);
  // missing two nodes still matches, three does not
  CHECK(recovery_rate({truth[0]}, {ns({0, 1, 2, 3})}) == 1.0);
  CHECK(recovery_rate({truth[0]}, {ns({0, 1, 2})}) == 0.0);
  CHECK(recovery_rate({truth[0]}, {ns({0, 1, 2, 3, 4, 5, 6, 7})}) == 1.0);
  // one estimate cannot serve two truths
  const std::vector<NodeSet> close{ns({0, 1, 2}), ns({0, 1, 2, 3})};
  CHECK(recovery_rate(close, {ns({0, 1, 2, 3})}) == 0.5);
  CHECK(match_components(close, {ns({0, 1, 2, 3})}) == std::vector<long>{-1, 0});
}

TEST_CASE("recovery rate is relabel invariant") {
  const std::vector<NodeSet> truth{ns({0, 1, 2, 3}), ns({5, 6, 7})};
  const std::vector<NodeSet> est{ns({0, 1, 2}), ns({5, 6, 7, 8}), ns({20, 21, 22})};
  auto relabel = [](const std::vector<NodeSet>& sets) {
    std::vector<NodeSet> out;
    for (const auto& s : sets) {
      std::vector<std::size_t> m;
      for (auto v : s) m.push_back(49 - v);
      out.push_back(NodeSet(m, 50));
    }
    return out;
  };
  CHECK(recovery_rate(truth, est) == recovery_rate(relabel(truth), relabel(est)));
}

TEST_CASE("config validation") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.density = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = SimConfig{};
  cfg.permutations = 10;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("study 1 is deterministic across thread counts") {
  const SimConfig cfg = small_config();
  const auto a = run_study1(cfg, 1);
  const auto b = run_study1(cfg, 3);
  REQUIRE(a.trials.size() == cfg.trials);
  for (std::size_t t = 0; t < a.trials.size(); ++t) {
    CHECK(a.trials[t].truth == b.trials[t].truth);
    REQUIRE(a.trials[t].outcomes.size() == 4);
    for (std::size_t m = 0; m < 4; ++m) {
      CHECK(a.trials[t].outcomes[m].estimated == b.trials[t].outcomes[m].estimated);
      CHECK(a.trials[t].outcomes[m].recovery == b.trials[t].outcomes[m].recovery);
    }
  }
  for (const auto& s : a.summary) {
    CHECK(s.mean_recovery >= 0.0);
    CHECK(s.mean_recovery <= 1.0);
    CHECK(s.ci_half_width >= 0.0);
    CHECK(s.completed + s.failed == cfg.trials);
  }
}

TEST_CASE("easy regime: neurohotnet recovers the truth") {
  SimConfig cfg;
  // sparse truth leaves regions outside every component; a component
  // spanning every region cannot be told apart from its relabelings
  cfg.density = 0.012;
  cfg.noise_sd = 0.0;
  cfg.subjects = 40;
  cfg.trials = 2;
  cfg.permutations = 200;
  cfg.seed = 5;
  cfg.delta = 0.0;
  cfg.nu = 0.02;
  const auto r = run_study1(cfg, 1);
  for (const auto& t : r.trials) {
    for (const auto& c : t.truth) REQUIRE(c.size() < cfg.regions);
  }
  for (const auto& s : r.summary) {
    if (s.method == Method::kNeuroHotnet) CHECK(s.mean_recovery >= 0.95);
  }
}

TEST_CASE("easy regime: siggm with diffusion recovers bounded-weight truth") {
  // uniform weights near zero give partial correlations below sampling noise
  SimConfig cfg;
  cfg.noise_sd = 0.0;
  cfg.subjects = 40;
  for (std::size_t t = 0; t < 4; ++t) {
    const auto raw = generate_truth(120, 0.012, 8, trial_seed(5, t));
    Matrix w = raw.weights();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w.data()[i] > 0.0) w.data()[i] = 0.5 + 0.5 * w.data()[i];
    }
    const WeightedGraph truth(raw.labels(), w);
    const auto comps = connected_components(w, 8);
    const auto s = generate_subjects(truth, cfg, t);
    const auto est = siggm_with_diffusion(mean_correlation(s), diffuse(truth, 30.0), 0.05, 1.0);
    CHECK(recovery_rate(comps, est.components) >= 0.95);
  }
}

TEST_CASE("study 2 timings and slopes") {
  SimConfig cfg = small_config();
  const auto r = run_study2({20, 40}, 2, cfg);
  REQUIRE(r.points.size() == 4);
  for (const auto& p : r.points) {
    CHECK(p.seconds.size() == 2);
    CHECK(p.mean_seconds > 0.0);
  }
  CHECK(loglog_slope({1, 10, 100}, {2, 200, 20000}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(loglog_slope({1}, {1}), ParameterError);
  CHECK(trial_seed(1, 2) != trial_seed(1, 3));
  CHECK(method_name(Method::kNeuroHotnet) == "neurohotnet");
}
