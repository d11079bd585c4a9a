#pragma once

#include <vector>

#include "neurohotnet/detect.hpp"
#include "neurohotnet/inference.hpp"

namespace neurohotnet {

/// SC-naive detector: subnetworks from functional data alone.
///
/// For every unordered pair, the subjects' Fisher z-scores are compared with
/// the grand mean z over all pairs and subjects by a two-sided one-sample
/// t-test (I - 1 degrees of freedom). Pairs with p < epsilon become edges;
/// connected components of at least three regions are returned. A pair whose
/// z-scores do not vary across subjects gets p = 1 and triggers a warning.
/// `delta` in the returned set holds epsilon.
CandidateSet naive_detect(const std::vector<SubjectSample>& samples, double epsilon,
                          std::size_t threads = 1);

/// The edge-significance matrix behind naive_detect: p-value per pair, 1 on
/// the diagonal.
Matrix naive_pair_pvalues(const std::vector<SubjectSample>& samples, std::size_t threads = 1);

}  // namespace neurohotnet
