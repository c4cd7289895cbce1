#pragma once
// Dataset representation and CSV ingestion. Features are stored raw
// (row-major); z-scoring happens inside learner training with train-side
// statistics only, never here.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cvbench {

struct Dataset {
  std::string name;
  std::size_t n_instances = 0;
  std::size_t n_features = 0;
  std::vector<double> features;  // row-major, n_instances * n_features
  std::vector<int> labels;       // each 0 or 1

  const double* row(std::size_t i) const {
    return features.data() + i * n_features;
  }
  std::array<std::size_t, 2> class_counts() const {
    std::array<std::size_t, 2> c{0, 0};
    for (int y : labels) ++c[static_cast<std::size_t>(y)];
    return c;
  }
};

// Structural checks only (finite features, labels in {0,1}, matching sizes).
// Unit-scale fixtures are allowed to be tiny.
Dataset make_dataset(std::string name, std::size_t n_instances,
                     std::size_t n_features, std::vector<double> features,
                     std::vector<int> labels);

// Full ingestion contract: exactly two classes, each with at least 4
// instances. Applied by load_csv and to synthetic study inputs.
void validate_study_dataset(const Dataset& d);

struct LabelColumn {
  enum class Kind { ByName, ByIndex };
  Kind kind = Kind::ByIndex;
  std::string name;
  std::size_t index = 0;

  static LabelColumn by_name(std::string n) {
    return {Kind::ByName, std::move(n), 0};
  }
  static LabelColumn by_index(std::size_t i) {
    return {Kind::ByIndex, {}, i};
  }
};

struct CsvOptions {
  LabelColumn label_column;
  bool has_header = true;
};

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options);

// An index-selected window onto a Dataset. Cheap to copy, immutable, safe to
// share across threads.
class DataView {
 public:
  DataView() = default;
  explicit DataView(const Dataset& d);
  DataView(const Dataset& d, std::vector<std::size_t> indices);

  std::size_t size() const { return indices_.size(); }
  std::size_t dim() const { return data_ ? data_->n_features : 0; }
  const double* row(std::size_t pos) const {
    return data_->row(indices_[pos]);
  }
  int label(std::size_t pos) const { return data_->labels[indices_[pos]]; }
  std::size_t parent_index(std::size_t pos) const { return indices_[pos]; }
  const Dataset& dataset() const { return *data_; }

  // Compose: positions are relative to this view.
  DataView select(const std::vector<std::size_t>& positions) const;

  std::array<std::size_t, 2> class_counts() const;

 private:
  const Dataset* data_ = nullptr;
  std::vector<std::size_t> indices_;
};

}  // namespace cvbench
