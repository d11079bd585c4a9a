#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "neurohotnet/inference.hpp"

namespace neurohotnet::tools {

enum class SubjectKind { kAuto, kTimeSeries, kCorrelation };

SubjectKind parse_subject_kind(const std::string& text);

struct SubjectSet {
  std::vector<std::string> labels;
  std::vector<SubjectSample> samples;
  std::vector<std::filesystem::path> files;
};

/// Reads every regular *.csv file of `dir` in name order; the file stem is
/// the subject id. With kAuto a file is a correlation matrix when it has as
/// many rows as columns, and a T x R time series otherwise.
SubjectSet load_subjects(const std::filesystem::path& dir, SubjectKind kind);

}  // namespace neurohotnet::tools
