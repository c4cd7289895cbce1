// Learner registry: specs, grids, theta formatting, train/accuracy entry
// points.

#include "cvbench/learners.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "cvbench/errors.hpp"
#include "internal.hpp"

namespace cvbench {

namespace {

std::vector<LearnerSpec> make_builtin_specs() {
  std::vector<LearnerSpec> specs;
  specs.push_back({"knn", {{"k", {1, 3, 5, 7, 9, 11, 13, 15}, true, 1, 63}}});
  specs.push_back(
      {"gnb", {{"var_smoothing", {1e-9, 1e-6, 1e-3}, false, 1e-300, 1e3}}});
  specs.push_back(
      {"proto", {{"prototypes_per_class", {1, 2, 4, 8}, true, 1, 64}}});
  specs.push_back({"rf",
                   {{"trees", {100, 300, 500}, true, 1, 5000},
                    {"mtry_fraction", {0.25, 0.5, 1.0}, false, 1e-9, 1.0}}});
  specs.push_back({"gbstump",
                   {{"rounds", {50, 150, 450}, true, 1, 5000},
                    {"learning_rate", {0.05, 0.1, 0.2}, false, 1e-9, 10.0},
                    {"depth", {1, 2, 3}, true, 1, 16}}});
  specs.push_back(
      {"linridge", {{"penalty", {1e-3, 1e-2, 1e-1, 1, 10, 100}, false,
                     1e-12, 1e9}}});
  return specs;
}

const std::vector<LearnerSpec>& builtin_specs() {
  static const std::vector<LearnerSpec> specs = make_builtin_specs();
  return specs;
}

std::string format_value(const GridAxis& axis, double v) {
  char buf[32];
  if (axis.integer) {
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), static_cast<long long>(
                                                  std::llround(v)));
    return std::string(buf, ptr);
  }
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void check_bounds(const LearnerSpec& spec, const GridAxis& axis, double v) {
  if (!(v >= axis.min_value && v <= axis.max_value))
    throw Error(spec.id + "." + axis.name + ": value " +
                format_value(axis, v) + " outside [" +
                format_value(axis, axis.min_value) + ", " +
                format_value(axis, axis.max_value) + "]");
  if (axis.integer && v != std::floor(v))
    throw Error(spec.id + "." + axis.name + ": expected an integer value");
}

}  // namespace

const GridAxis& LearnerSpec::axis(std::string_view name) const {
  for (const auto& a : axes)
    if (a.name == name) return a;
  throw Error(id + ": no hyperparameter axis named '" + std::string(name) +
              "'");
}

double HyperPoint::value(const LearnerSpec& spec,
                         std::string_view axis_name) const {
  for (std::size_t i = 0; i < spec.axes.size(); ++i)
    if (spec.axes[i].name == axis_name) return values[i];
  throw Error(spec.id + ": no hyperparameter axis named '" +
              std::string(axis_name) + "'");
}

const std::vector<std::string>& builtin_learner_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& s : builtin_specs()) out.push_back(s.id);
    return out;
  }();
  return ids;
}

bool is_builtin_learner(const std::string& id) {
  const auto& ids = builtin_learner_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

LearnerSpec default_spec(const std::string& id) {
  for (const auto& s : builtin_specs())
    if (s.id == id) return s;
  throw UnknownLearner("unknown learner '" + id + "'");
}

HyperGrid create_grid(const LearnerSpec& spec) {
  if (spec.axes.empty()) throw Error(spec.id + ": no hyperparameter axes");
  std::size_t total = 1;
  for (const auto& axis : spec.axes) {
    if (axis.values.empty())
      throw Error(spec.id + "." + axis.name + ": empty value list");
    for (double v : axis.values) check_bounds(spec, axis, v);
    total *= axis.values.size();
  }

  HyperGrid grid;
  grid.points.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    HyperPoint p;
    p.learner = spec.id;
    p.values.resize(spec.axes.size());
    std::size_t rem = idx;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const auto& vals = spec.axes[a].values;
      p.values[a] = vals[rem % vals.size()];
      rem /= vals.size();
    }
    grid.points.push_back(std::move(p));
  }
  return grid;
}

std::string format_theta(const LearnerSpec& spec, const HyperPoint& theta) {
  if (theta.values.size() != spec.axes.size())
    throw Error(spec.id + ": hyperparameter arity mismatch");
  std::string out;
  for (std::size_t a = 0; a < spec.axes.size(); ++a) {
    if (a) out += ';';
    out += spec.axes[a].name;
    out += '=';
    out += format_value(spec.axes[a], theta.values[a]);
  }
  return out;
}

HyperPoint parse_theta(const LearnerSpec& spec, const std::string& text) {
  HyperPoint p;
  p.learner = spec.id;
  std::size_t pos = 0;
  for (std::size_t a = 0; a < spec.axes.size(); ++a) {
    std::size_t end = text.find(';', pos);
    std::string part = text.substr(
        pos, end == std::string::npos ? std::string::npos : end - pos);
    std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw Error(spec.id + ": malformed hyperparameter string '" + text +
                  "'");
    if (part.substr(0, eq) != spec.axes[a].name)
      throw Error(spec.id + ": expected axis '" + spec.axes[a].name +
                  "' in '" + text + "'");
    std::string value = part.substr(eq + 1);
    double v = 0.0;
    auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
      throw Error(spec.id + ": bad hyperparameter value '" + value + "'");
    check_bounds(spec, spec.axes[a], v);
    p.values.push_back(v);
    if (end == std::string::npos) {
      if (a + 1 != spec.axes.size())
        throw Error(spec.id + ": too few hyperparameters in '" + text + "'");
      pos = text.size();
    } else {
      pos = end + 1;
    }
  }
  if (pos != text.size() && pos != text.size() + 1)
    throw Error(spec.id + ": too many hyperparameters in '" + text + "'");
  return p;
}

TrainedModel::TrainedModel(std::shared_ptr<const detail::ModelImpl> impl)
    : impl_(std::move(impl)) {}

std::size_t TrainedModel::dim() const { return impl_ ? impl_->d : 0; }

std::vector<int> TrainedModel::predict(const DataView& view) const {
  if (!impl_) throw Error("predict on an empty model");
  if (view.dim() != impl_->d)
    throw DimensionMismatch("model expects " + std::to_string(impl_->d) +
                            " features, got " + std::to_string(view.dim()));
  std::vector<int> out(view.size());
  std::vector<double> z(impl_->d);
  for (std::size_t i = 0; i < view.size(); ++i) {
    impl_->scaler.apply(view.row(i), z.data(), impl_->d);
    out[i] = impl_->classify(z.data());
  }
  return out;
}

TrainedModel train(const LearnerSpec& spec, const DataView& train_data,
                   const HyperPoint& theta, std::uint64_t seed) {
  if (theta.learner != spec.id)
    throw Error("hyperparameters for '" + theta.learner +
                "' passed to learner '" + spec.id + "'");
  if (theta.values.size() != spec.axes.size())
    throw Error(spec.id + ": hyperparameter arity mismatch");
  for (std::size_t a = 0; a < spec.axes.size(); ++a)
    check_bounds(spec, spec.axes[a], theta.values[a]);

  auto counts = train_data.class_counts();
  if (train_data.size() == 0 || counts[0] == 0 || counts[1] == 0)
    throw SingleClassTrainingSet("training set for '" + spec.id +
                                 "' does not contain both classes");

  detail::Scaler scaler = detail::fit_scaler(train_data);
  detail::TrainSet train_set = detail::standardize(train_data, scaler);

  std::unique_ptr<detail::ModelImpl> impl;
  if (spec.id == "knn") {
    impl = detail::train_knn(
        train_set, static_cast<int>(std::llround(theta.value(spec, "k"))));
  } else if (spec.id == "gnb") {
    impl = detail::train_gnb(train_set, theta.value(spec, "var_smoothing"));
  } else if (spec.id == "proto") {
    impl = detail::train_proto(
        train_set, static_cast<int>(std::llround(
                       theta.value(spec, "prototypes_per_class"))));
  } else if (spec.id == "rf") {
    impl = detail::train_rf(
        train_set, static_cast<int>(std::llround(theta.value(spec, "trees"))),
        theta.value(spec, "mtry_fraction"), seed);
  } else if (spec.id == "gbstump") {
    impl = detail::train_gbstump(
        train_set, static_cast<int>(std::llround(theta.value(spec, "rounds"))),
        theta.value(spec, "learning_rate"),
        static_cast<int>(std::llround(theta.value(spec, "depth"))), seed);
  } else if (spec.id == "linridge") {
    impl = detail::train_linridge(train_set, theta.value(spec, "penalty"));
  } else {
    throw UnknownLearner("unknown learner '" + spec.id + "'");
  }

  impl->d = train_data.dim();
  impl->scaler = std::move(scaler);
  return TrainedModel(std::shared_ptr<const detail::ModelImpl>(impl.release()));
}

namespace {

struct ConstantImpl final : detail::ModelImpl {
  int label;
  explicit ConstantImpl(int l) : label(l) {}
  int classify(const double*) const override { return label; }
};

}  // namespace

TrainedModel constant_model(int label, std::size_t dim) {
  auto impl = std::make_unique<ConstantImpl>(label);
  impl->d = dim;
  impl->scaler.shift.assign(dim, 0.0);
  impl->scaler.scale.assign(dim, 1.0);
  return TrainedModel(std::shared_ptr<const detail::ModelImpl>(impl.release()));
}

double accuracy(const TrainedModel& model, const DataView& test_data) {
  if (test_data.size() == 0) throw EmptyTestSet("empty test set");
  auto predictions = model.predict(test_data);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_data.size(); ++i)
    if (predictions[i] == test_data.label(i)) ++correct;
  return static_cast<double>(correct) / static_cast<double>(test_data.size());
}

}  // namespace cvbench
