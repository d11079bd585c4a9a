#include "neurohotnet/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "neurohotnet/error.hpp"

namespace neurohotnet {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw StructuralError(msg.str());
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

LabeledMatrix parse_labeled_matrix(std::istream& in, const std::string& source) {
  LabeledMatrix out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> data;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (!have_header) {
      for (auto f : fields) {
        const auto label = trim(f);
        if (label.empty()) fail(source, line_no, "empty region label in header");
        out.labels.emplace_back(label);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != out.labels.size()) {
      std::ostringstream msg;
      msg << "expected " << out.labels.size() << " fields, found " << fields.size();
      fail(source, line_no, msg.str());
    }
    for (auto f : fields) {
      const auto text = trim(f);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(source, line_no, "not a number: '" + std::string(text) + "'");
      }
      if (!std::isfinite(value)) fail(source, line_no, "non-finite value");
      data.push_back(value);
    }
    ++rows;
  }
  if (!have_header) fail(source, line_no, "missing header row");
  const auto cols = static_cast<Eigen::Index>(out.labels.size());
  out.values.resize(static_cast<Eigen::Index>(rows), cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      out.values(static_cast<Eigen::Index>(r), c) =
          data[r * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
    }
  }
  return out;
}

LabeledMatrix read_labeled_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file " + path.string());
  return parse_labeled_matrix(in, path.string());
}

void write_labeled_matrix(std::ostream& out, const std::vector<std::string>& labels,
                          const Matrix& values) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out << ',';
    out << labels[i];
  }
  out << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c) out << ',';
      out << format_double(values(r, c));
    }
    out << '\n';
  }
}

void write_labeled_matrix(const std::filesystem::path& path,
                          const std::vector<std::string>& labels, const Matrix& values) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write matrix file " + path.string());
  write_labeled_matrix(out, labels, values);
}

WeightedGraph read_weighted_graph(const std::filesystem::path& path,
                                  WeightedGraph::Repair repair) {
  auto m = read_labeled_matrix(path);
  if (m.values.rows() != m.values.cols()) {
    throw StructuralError(path.string() + ": weight matrix must be square");
  }
  return WeightedGraph(std::move(m.labels), std::move(m.values), repair);
}

}  // namespace neurohotnet
