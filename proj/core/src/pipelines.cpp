#include "neurohotnet/pipelines.hpp"

#include "neurohotnet/error.hpp"

namespace neurohotnet {

std::vector<NodeSet> HotnetOutcome::selected() const {
  std::vector<NodeSet> out;
  for (const auto& r : results) {
    if (r.selected) out.push_back(r.component);
  }
  return out;
}

HotnetOutcome run_neurohotnet(const InfluenceGraph& influence,
                              const std::vector<SubjectSample>& samples,
                              const HotnetOptions& options) {
  if (samples.empty()) throw InputError("no subjects supplied");
  if (samples.front().regions() != influence.size()) {
    throw StructuralError("subjects and influence graph disagree on the number of regions");
  }
  HotnetOutcome out;
  out.candidates = candidates(influence, options.delta);
  if (out.candidates.components.empty()) return out;

  std::vector<TestResult> results;
  results.reserve(out.candidates.components.size());
  if (options.method == TestMethod::kPermutation) {
    const FisherStack z(samples);
    for (const auto& c : out.candidates.components) {
      results.push_back(permutation_test(z, c, options.permutation));
    }
  } else {
    for (const auto& c : out.candidates.components) {
      results.push_back(ttest_variant(samples, c, options.permutation.seed));
    }
  }
  out.results = select(std::move(results), options.alpha);
  return out;
}

}  // namespace neurohotnet
