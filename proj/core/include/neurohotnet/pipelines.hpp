#pragma once

#include <vector>

#include "neurohotnet/detect.hpp"
#include "neurohotnet/diffusion.hpp"
#include "neurohotnet/inference.hpp"

namespace neurohotnet {

enum class TestMethod { kPermutation, kTTest };

struct HotnetOptions {
  double delta = 0.0;
  double alpha = 0.05;
  TestMethod method = TestMethod::kPermutation;
  PermutationOptions permutation;
};

struct HotnetOutcome {
  CandidateSet candidates;
  std::vector<TestResult> results;  // one per candidate, selection flags set

  std::vector<NodeSet> selected() const;
};

/// Threshold the influence graph, test every candidate with functional data
/// only, and select with the alpha / |candidates| rule.
HotnetOutcome run_neurohotnet(const InfluenceGraph& influence,
                              const std::vector<SubjectSample>& samples,
                              const HotnetOptions& options);

}  // namespace neurohotnet
