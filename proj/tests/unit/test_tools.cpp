#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "neurohotnet/error.hpp"
#include "neurohotnet/matrix_io.hpp"
#include "neurohotnet_tools/config.hpp"
#include "neurohotnet_tools/digest.hpp"
#include "neurohotnet_tools/report.hpp"
#include "neurohotnet_tools/run_pipeline.hpp"
#include "neurohotnet_tools/simulate.hpp"
#include "neurohotnet_tools/subjects.hpp"
#include "oracles.hpp"

using namespace neurohotnet;
using namespace neurohotnet::tools;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = NEUROHOTNET_SOURCE_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("neurohotnet_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse("# comment\nmethod = naive\n\n  epsilon=1e-4  \nsubjects = a b\n");
  CHECK(cfg.get("method") == "naive");
  CHECK(cfg.get_double("epsilon") == 1e-4);
  CHECK(cfg.get("subjects") == "a b");
  CHECK_FALSE(cfg.has("seed"));
  CHECK(cfg.get_u64_or("seed", 4) == 4);
  CHECK_THROWS_AS(cfg.get("seed"), ConfigError);
  CHECK_THROWS_AS(parse("method = naive\nmethod = glasso\n"), ConfigError);
  CHECK_THROWS_AS(parse("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse("method\n"), ConfigError);
  CHECK_THROWS_AS(parse("epsilon = 1e-4x\n").get_double("epsilon"), ConfigError);
  CHECK_THROWS_AS(parse("seed = -1\n").get_u64("seed"), ConfigError);
}

TEST_CASE("config paths resolve against the file") {
  const auto dir = scratch("cfg");
  std::ofstream(dir / "x.conf") << "structural = data/s.csv\nsubjects = /abs/subjects\n";
  const auto cfg = Config::load(dir / "x.conf");
  CHECK(cfg.get_path("structural") == dir / "data/s.csv");
  CHECK(cfg.get_path("subjects") == fs::path("/abs/subjects"));
}

TEST_CASE("grids") {
  const auto g = parse_grid("0.1:0.5:5");
  CHECK(g.first == 0.1);
  CHECK(g.last == 0.5);
  CHECK(g.count == 5);
  CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
  CHECK(size_grid("50:500:10") ==
        std::vector<std::size_t>{50, 100, 150, 200, 250, 300, 350, 400, 450, 500});
}

TEST_CASE("method resolution") {
  auto cfg = parse("method = neurohotnet\nstructural = s\nsubjects = d\ndelta = 0.1\nseed = 1\n");
  const auto r = resolve_config(cfg);
  CHECK(r.get("permutations") == "10000");
  CHECK(r.get("gamma") == "auto");
  CHECK(r.get("test") == "permutation");
  cfg.erase("seed");
  CHECK_THROWS_AS(resolve_config(cfg), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse("method = hotnet\n")), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse("method = naive\nsubjects = d\nepsilon = 2\n")), ConfigError);
  CHECK_THROWS_AS(resolve_config(parse("method = glasso\nsubjects = d\nnu = 0.1\neta = 1\n")),
                  ConfigError);
  CHECK(resolve_config(parse("method = siggm-diffusion\nstructural = s\nsubjects = d\nnu = 0.1\n"))
            .get("eta") == "1");
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("subject directories") {
  const auto dir = scratch("subjects");
  const auto samples = testsupport::null_subjects(4, 3, 10, 1);
  const std::vector<std::string> labels{"A", "B", "C", "D"};
  write_labeled_matrix(dir / "s2.csv", labels, *samples[1].signals());
  write_labeled_matrix(dir / "s1.csv", labels, *samples[0].signals());
  write_labeled_matrix(dir / "s3.csv", labels, samples[2].correlations());
  std::ofstream(dir / "notes.txt") << "ignored";
  const auto set = load_subjects(dir, SubjectKind::kAuto);
  REQUIRE(set.samples.size() == 3);
  CHECK(set.samples[0].subject_id() == "s1");
  CHECK(set.samples[0].signals().has_value());
  CHECK_FALSE(set.samples[2].signals().has_value());
  CHECK((set.samples[1].correlations() - samples[1].correlations()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(set.labels == labels);
  CHECK_THROWS_AS(load_subjects(dir, SubjectKind::kCorrelation), Error);
  write_labeled_matrix(dir / "s4.csv", {"A", "B", "C", "E"}, samples[2].correlations());
  CHECK_THROWS_AS(load_subjects(dir, SubjectKind::kAuto), Error);
  CHECK_THROWS_AS(load_subjects(dir / "missing", SubjectKind::kAuto), Error);
}

TEST_CASE("report rows round-trip") {
  const std::vector<std::string> labels{"PreCG.L", "PreCG.R", "SFGdor.L", "SFGdor.R", "ORBsup.L"};
  std::vector<ComponentRow> rows = label_rows({NodeSet({0, 2, 4}, 5), NodeSet({1, 3}, 5)}, "H");
  rows[0].p_value = 1e-4;
  Json doc;
  doc["components"] = component_rows_json(rows, labels);
  const auto text = dump(doc);
  const auto back = parse_report_components(nlohmann::json::parse(text));
  REQUIRE(back.size() == 2);
  CHECK(back[0] == std::vector<std::string>{"PreCG.L", "SFGdor.L", "ORBsup.L"});

  const auto dir = scratch("report");
  std::ofstream(dir / "r.json") << text;
  const auto sets = read_components_file(dir / "r.json", labels);
  REQUIRE(sets.size() == 2);
  CHECK(sets[0] == rows[0].component);
  CHECK(sets[1] == rows[1].component);
  std::ofstream(dir / "c.txt") << "# two sets\nPreCG.L, SFGdor.L ,ORBsup.L\n\nPreCG.R,SFGdor.R\n";
  CHECK(read_components_file(dir / "c.txt", labels) == sets);
  std::ofstream(dir / "bad.txt") << "PreCG.L,Nowhere\n";
  CHECK_THROWS_AS(read_components_file(dir / "bad.txt", labels), Error);
}

TEST_CASE("mean weighted degree is the mean raw degree of the members") {
  const WeightedGraph g = WeightedGraph::unlabeled(testsupport::toy_weights());
  CHECK(mean_weighted_degree(g, NodeSet({0, 9}, 10)) == doctest::Approx(3.5));
  std::vector<ComponentRow> rows = label_rows({NodeSet({4, 5, 6}, 10)}, "C");
  attach_degrees(rows, &g);
  CHECK(*rows[0].mean_weighted_degree == doctest::Approx((5.0 + 5.0 + 3.0) / 3.0));
  attach_degrees(rows, nullptr);
  CHECK(rows[0].mean_weighted_degree.has_value());
}

TEST_CASE("toy pipeline matches the golden report") {
  const auto cfg = Config::load(kSource / "data/toy/toy.conf");
  const auto report = dump(run_pipeline(cfg, 1));
  CHECK(report == slurp(kSource / "tests/golden/toy_neurohotnet.json"));
  CHECK(report == dump(run_pipeline(cfg, 4)));
}

TEST_CASE("every method runs on the toy data") {
  for (const auto& [method, extra] : std::vector<std::pair<std::string, std::string>>{
           {"siggm-diffusion", "0.05"}, {"glasso", "0.05"}, {"naive", "1e-6"}}) {
    auto cfg = Config::load(kSource / "data/toy/toy.conf");
    cfg.set("method", method);
    cfg.set(method == "naive" ? "epsilon" : "nu", extra);
    const auto report = run_pipeline(cfg, 1);
    CHECK(report["method"] == method);
    const auto comps = parse_report_components(nlohmann::json::parse(dump(report)));
    bool planted = false;
    for (const auto& c : comps) planted = planted || c == std::vector<std::string>{"N5", "N6", "N7"};
    CHECK(planted);
  }
}
