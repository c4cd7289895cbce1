#include "cvbench/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cvbench/errors.hpp"

namespace cvbench {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Dataset make_dataset(std::string name, std::size_t n_instances,
                     std::size_t n_features, std::vector<double> features,
                     std::vector<int> labels) {
  if (features.size() != n_instances * n_features)
    throw Error("make_dataset: feature buffer size mismatch");
  if (labels.size() != n_instances)
    throw Error("make_dataset: label count mismatch");
  for (double v : features)
    if (!std::isfinite(v)) throw Error("make_dataset: non-finite feature");
  for (int y : labels)
    if (y != 0 && y != 1) throw Error("make_dataset: label outside {0,1}");
  Dataset d;
  d.name = std::move(name);
  d.n_instances = n_instances;
  d.n_features = n_features;
  d.features = std::move(features);
  d.labels = std::move(labels);
  return d;
}

void validate_study_dataset(const Dataset& d) {
  if (d.n_features < 1)
    throw MalformedRow("dataset '" + d.name + "': no feature columns");
  auto counts = d.class_counts();
  if (counts[0] == 0 || counts[1] == 0)
    throw NonBinaryLabels("dataset '" + d.name +
                          "': labels do not contain two classes");
  if (counts[0] < 4 || counts[1] < 4)
    throw TooFewInstances("dataset '" + d.name +
                          "': each class needs at least 4 instances (got " +
                          std::to_string(counts[0]) + "/" +
                          std::to_string(counts[1]) + ")");
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());

  std::string line;
  std::size_t line_no = 0;
  std::size_t label_index = options.label_column.index;
  std::size_t arity = 0;
  bool arity_known = false;

  if (options.has_header) {
    if (!std::getline(in, line))
      throw NonBinaryLabels("file '" + path.string() + "': empty file");
    ++line_no;
    auto header = split_fields(line);
    arity = header.size();
    arity_known = true;
    if (options.label_column.kind == LabelColumn::Kind::ByName) {
      auto it = std::find_if(header.begin(), header.end(),
                             [&](const std::string& h) {
                               return trim(h) == options.label_column.name;
                             });
      if (it == header.end())
        throw MalformedRow("file '" + path.string() + "': label column '" +
                           options.label_column.name + "' not in header");
      label_index = static_cast<std::size_t>(it - header.begin());
    }
  } else if (options.label_column.kind == LabelColumn::Kind::ByName) {
    throw ConfigError("label column by name requires a header row");
  }

  std::vector<double> rows;
  std::vector<std::string> raw_labels;
  std::size_t n_features = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (!arity_known) {
      arity = fields.size();
      arity_known = true;
    }
    if (fields.size() != arity)
      throw MalformedRow("row " + std::to_string(line_no) + ": expected " +
                         std::to_string(arity) + " fields, got " +
                         std::to_string(fields.size()));
    if (label_index >= arity)
      throw MalformedRow("row " + std::to_string(line_no) +
                         ": label column index out of range");
    if (arity < 2)
      throw MalformedRow("row " + std::to_string(line_no) +
                         ": no feature columns");
    n_features = arity - 1;
    for (std::size_t j = 0; j < arity; ++j) {
      if (j == label_index) continue;
      std::string f = trim(fields[j]);
      double v = 0.0;
      if (f.empty() || !parse_double(f, v))
        throw MalformedRow("row " + std::to_string(line_no) +
                           ": non-numeric or missing feature '" + fields[j] +
                           "'");
      if (!std::isfinite(v))
        throw MalformedRow("row " + std::to_string(line_no) +
                           ": non-finite feature value");
      rows.push_back(v);
    }
    raw_labels.push_back(trim(fields[label_index]));
  }

  std::vector<std::string> distinct = raw_labels;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() != 2)
    throw NonBinaryLabels("file '" + path.string() + "': " +
                          std::to_string(distinct.size()) +
                          " distinct label values, need exactly 2");

  // Class 0 is the smaller original value: numeric order when both labels
  // parse as numbers, byte order otherwise.
  double a = 0.0, b = 0.0;
  if (parse_double(distinct[0], a) && parse_double(distinct[1], b) && b < a)
    std::swap(distinct[0], distinct[1]);

  std::vector<int> labels(raw_labels.size());
  for (std::size_t i = 0; i < raw_labels.size(); ++i)
    labels[i] = raw_labels[i] == distinct[0] ? 0 : 1;

  Dataset d = make_dataset(path.stem().string(), raw_labels.size(), n_features,
                           std::move(rows), std::move(labels));
  validate_study_dataset(d);
  return d;
}

DataView::DataView(const Dataset& d) : data_(&d), indices_(d.n_instances) {
  std::iota(indices_.begin(), indices_.end(), std::size_t{0});
}

DataView::DataView(const Dataset& d, std::vector<std::size_t> indices)
    : data_(&d), indices_(std::move(indices)) {}

DataView DataView::select(const std::vector<std::size_t>& positions) const {
  std::vector<std::size_t> mapped(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    mapped[i] = indices_[positions[i]];
  return DataView(*data_, std::move(mapped));
}

std::array<std::size_t, 2> DataView::class_counts() const {
  std::array<std::size_t, 2> c{0, 0};
  for (std::size_t i = 0; i < size(); ++i)
    ++c[static_cast<std::size_t>(label(i))];
  return c;
}

}  // namespace cvbench
