#include "neurohotnet_tools/subjects.hpp"

#include <algorithm>

#include "neurohotnet/error.hpp"
#include "neurohotnet/matrix_io.hpp"

namespace neurohotnet::tools {

SubjectKind parse_subject_kind(const std::string& text) {
  if (text == "auto") return SubjectKind::kAuto;
  if (text == "timeseries") return SubjectKind::kTimeSeries;
  if (text == "correlation") return SubjectKind::kCorrelation;
  throw ConfigError("subject kind must be auto, timeseries or correlation, got '" + text + "'");
}

SubjectSet load_subjects(const std::filesystem::path& dir, SubjectKind kind) {
  if (!std::filesystem::is_directory(dir)) {
    throw InputError("subject directory not found: " + dir.string());
  }
  SubjectSet set;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      set.files.push_back(entry.path());
    }
  }
  std::sort(set.files.begin(), set.files.end());
  if (set.files.empty()) throw InputError("no .csv subject files in " + dir.string());

  for (const auto& file : set.files) {
    LabeledMatrix m = read_labeled_matrix(file);
    if (set.labels.empty()) {
      set.labels = m.labels;
    } else if (m.labels != set.labels) {
      throw StructuralError(file.string() + ": region labels differ from " +
                            set.files.front().string());
    }
    const bool square = m.values.rows() == m.values.cols();
    const bool as_correlation =
        kind == SubjectKind::kCorrelation || (kind == SubjectKind::kAuto && square);
    std::string id = file.stem().string();
    try {
      set.samples.push_back(as_correlation
                                ? SubjectSample::from_correlations(id, std::move(m.values))
                                : SubjectSample::from_signals(id, std::move(m.values)));
    } catch (const Error& e) {
      throw InputError(file.string() + ": " + e.what());
    }
  }
  return set;
}

}  // namespace neurohotnet::tools
