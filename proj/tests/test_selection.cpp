#include "cvbench/selection.hpp"

#include <cmath>

#include "cvbench/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cvbench;

namespace {

LearnerSpec singleton(const std::string& id, std::vector<double> point) {
  LearnerSpec spec = default_spec(id);
  for (std::size_t a = 0; a < spec.axes.size(); ++a)
    spec.axes[a].values = {point[a]};
  return spec;
}

}  // namespace

TEST_CASE("flat_cv: singleton grid returns that point and its fold mean") {
  Dataset d = cvtest::gaussian_mixture("flat1", 40, 3, 1.2, 50);
  auto spec = singleton("knn", {5});
  auto result = flat_cv(spec, DataView(d), 5, 9);
  CHECK(result.best_index == 0);
  CHECK(result.best_theta.values == std::vector<double>{5});
  REQUIRE(result.theta_means.size() == 1);
  CHECK(result.estimate == result.theta_means[0]);
  CHECK(result.estimate >= 0.0);
  CHECK(result.estimate <= 1.0);
}

TEST_CASE("flat_cv: a dominating grid point wins with estimate 1") {
  // k=1 separates a wide mixture perfectly in every fold; a huge k ties every
  // vote and falls back to class 0.
  Dataset d = cvtest::gaussian_mixture("flat2", 40, 2, 4.0, 51);
  LearnerSpec spec = default_spec("knn");
  spec.axes[0].values = {1, 39};
  auto result = flat_cv(spec, DataView(d), 5, 3);
  CHECK(result.best_theta.values == std::vector<double>{1});
  CHECK(result.estimate == 1.0);
}

TEST_CASE("flat_cv: estimate dominates every per-theta fold mean") {
  Dataset d = cvtest::gaussian_mixture("flat3", 50, 4, 0.7, 52);
  auto result = flat_cv(default_spec("knn"), DataView(d), 5, 21);
  for (double mean : result.theta_means) {
    CHECK(result.estimate >= mean);
    CHECK(mean >= 0.0);
    CHECK(mean <= 1.0);
  }
}

TEST_CASE("nested_cv: estimate bounds and per-fold theta shape") {
  Dataset d = cvtest::gaussian_mixture("nested1", 44, 3, 1.0, 53);
  auto result = nested_cv(default_spec("gnb"), DataView(d), 2, 3, 77);
  CHECK(result.fold_thetas.size() == 2);
  CHECK(result.fold_accuracies.size() == 2);
  CHECK(result.estimate >= 0.0);
  CHECK(result.estimate <= 1.0);
  double mean =
      (result.fold_accuracies[0] + result.fold_accuracies[1]) / 2.0;
  CHECK(result.estimate == mean);
}

TEST_CASE("singleton grid with shared folds: flat equals nested exactly") {
  // covers stochastic learners too: the (fold, theta) model seeds coincide
  std::vector<std::pair<const char*, std::vector<double>>> cases{
      {"knn", {7}}, {"gnb", {1e-6}},      {"proto", {2}},
      {"linridge", {1.0}}, {"rf", {100, 0.5}}, {"gbstump", {50, 0.1, 1}},
  };
  int salt = 0;
  for (const auto& [id, point] : cases) {
    CAPTURE(id);
    Dataset d = cvtest::gaussian_mixture(std::string("single_") + id, 40, 3,
                                         1.0, 60 + salt++);
    auto spec = singleton(id, point);
    auto flat = flat_cv(spec, DataView(d), 5, 123);
    auto nested = nested_cv(spec, DataView(d), 5, 5, 123);
    CHECK(flat.estimate == nested.estimate);
  }
}

TEST_CASE("flat is optimistic on pure noise (small smoke version)") {
  double flat_total = 0.0, nested_total = 0.0;
  const int seeds = 8;
  for (int s = 0; s < seeds; ++s) {
    Dataset d = cvtest::noise_dataset("bias" + std::to_string(s), 100, 6,
                                      900 + s);
    auto spec = default_spec("knn");
    flat_total += flat_cv(spec, DataView(d), 5, 1000 + s).estimate;
    nested_total += nested_cv(spec, DataView(d), 5, 5, 1000 + s).estimate;
  }
  CHECK(flat_total / seeds > nested_total / seeds);
}

TEST_CASE("select_algorithm: argmax, ties, and emptiness") {
  CHECK(select_algorithm({{"rf", 0.90}, {"knn", 0.85}}) == "rf");
  CHECK(select_algorithm({{"rf", 0.90}, {"knn", 0.90}}) == "rf");
  CHECK(select_algorithm({{"knn", 0.90}, {"rf", 0.90}}) == "knn");
  CHECK_THROWS_AS(select_algorithm({}), EmptyCandidateSet);
}

TEST_CASE("select_algorithm: invariant under increasing transforms") {
  std::vector<std::pair<std::string, double>> estimates{
      {"a", 0.61}, {"b", 0.72}, {"c", 0.72}, {"d", 0.55}};
  auto base = select_algorithm(estimates);
  auto transformed = estimates;
  for (auto& [id, v] : transformed) v = std::exp(3.0 * v) + 1.0;
  CHECK(select_algorithm(transformed) == base);
}
