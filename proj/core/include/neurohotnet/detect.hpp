#pragma once

#include <string>
#include <vector>

#include "neurohotnet/diffusion.hpp"
#include "neurohotnet/graph.hpp"

namespace neurohotnet {

/// Smallest subnetwork considered a candidate; pairs are single edges.
inline constexpr std::size_t kMinCandidateSize = 3;

/// Candidate subnetworks found at one threshold.
struct CandidateSet {
  double delta = 0.0;
  std::vector<NodeSet> components;
  std::vector<std::string> source_labels;
};

/// Copy of the influence matrix with entries below delta and the diagonal set
/// to zero. Entries equal to delta survive.
Matrix threshold(const InfluenceGraph& g, double delta);

/// Components of threshold(g, delta) with at least three members.
CandidateSet candidates(const InfluenceGraph& g, double delta);

/// Component sizes observed at one delta of a grid.
struct DeltaProfile {
  double delta = 0.0;
  std::vector<std::size_t> sizes;  // descending
};

/// Evaluates candidates() at each delta, in the order given.
std::vector<DeltaProfile> delta_profile(const InfluenceGraph& g,
                                        const std::vector<double>& deltas);

/// `count` evenly spaced values from first to last inclusive ("a:b:n").
std::vector<double> linear_grid(double first, double last, std::size_t count);

}  // namespace neurohotnet
