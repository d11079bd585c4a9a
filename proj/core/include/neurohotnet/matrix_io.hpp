#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "neurohotnet/graph.hpp"

namespace neurohotnet {

/// Contents of a dense matrix file: a header row of column labels followed by
/// numeric rows. Square files carry R rows; time-series files carry T rows.
struct LabeledMatrix {
  std::vector<std::string> labels;
  Matrix values;
};

/// Parses comma-separated text. Rejects ragged rows, non-numeric fields,
/// NaN and infinities. Throws StructuralError with a line number.
LabeledMatrix parse_labeled_matrix(std::istream& in, const std::string& source = "<stream>");
LabeledMatrix read_labeled_matrix(const std::filesystem::path& path);

/// Writes with shortest round-trip formatting so that read(write(m)) == m.
void write_labeled_matrix(std::ostream& out, const std::vector<std::string>& labels,
                          const Matrix& values);
void write_labeled_matrix(const std::filesystem::path& path,
                          const std::vector<std::string>& labels, const Matrix& values);

/// Square weight file -> WeightedGraph (negative weights rejected).
WeightedGraph read_weighted_graph(const std::filesystem::path& path,
                                  WeightedGraph::Repair repair = WeightedGraph::Repair::kNone);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace neurohotnet
