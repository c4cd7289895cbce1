#include "cvbench/learners.hpp"

#include <vector>

#include "cvbench/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cvbench;

namespace {

Dataset flipped(const Dataset& d) {
  auto labels = d.labels;
  for (auto& y : labels) y = 1 - y;
  return make_dataset(d.name + "_flipped", d.n_instances, d.n_features,
                      d.features, labels);
}

}  // namespace

TEST_CASE("grids: declared sizes and row-major order") {
  CHECK(create_grid(default_spec("knn")).points.size() == 8);
  CHECK(create_grid(default_spec("gnb")).points.size() == 3);
  CHECK(create_grid(default_spec("proto")).points.size() == 4);
  CHECK(create_grid(default_spec("linridge")).points.size() == 6);
  CHECK(create_grid(default_spec("gbstump")).points.size() == 27);

  auto rf = create_grid(default_spec("rf"));
  REQUIRE(rf.points.size() == 9);
  // first axis (trees) varies slowest
  CHECK(rf.points[0].values == std::vector<double>{100, 0.25});
  CHECK(rf.points[1].values == std::vector<double>{100, 0.5});
  CHECK(rf.points[2].values == std::vector<double>{100, 1.0});
  CHECK(rf.points[3].values == std::vector<double>{300, 0.25});
  CHECK(rf.points[8].values == std::vector<double>{500, 1.0});

  CHECK_THROWS_AS(default_spec("svmRadial"), UnknownLearner);

  auto again = create_grid(default_spec("rf"));
  CHECK(again.points == rf.points);

  for (const auto& id : builtin_learner_ids()) {
    auto n = default_spec(id).n_hyperparameters();
    CHECK(n >= 1);
    CHECK(n <= 3);
  }
}

TEST_CASE("theta strings round-trip exactly for every grid point") {
  for (const auto& id : builtin_learner_ids()) {
    auto spec = default_spec(id);
    for (const auto& theta : create_grid(spec).points) {
      auto text = format_theta(spec, theta);
      CHECK(parse_theta(spec, text) == theta);
    }
  }
}

TEST_CASE("1-nearest-neighbor picks the closer training point") {
  Dataset d = make_dataset("pair", 2, 1, {0.0, 10.0}, {0, 1});
  auto spec = default_spec("knn");
  HyperPoint theta{"knn", {1}};
  auto model = train(spec, DataView(d), theta, 0);

  Dataset probe = make_dataset("probe", 2, 1, {1.0, 9.0}, {0, 1});
  auto preds = model.predict(DataView(probe));
  CHECK(preds[0] == 0);
  CHECK(preds[1] == 1);
}

TEST_CASE("1-NN reproduces its own consistent training set") {
  Dataset d = cvtest::gaussian_mixture("own", 30, 4, 1.0, 5);
  auto model = train(default_spec("knn"), DataView(d), {"knn", {1}}, 0);
  CHECK(accuracy(model, DataView(d)) == 1.0);
}

TEST_CASE("gnb: symmetric classes tie at the midpoint and resolve to 0") {
  Dataset d = make_dataset("sym", 8, 1,
                           {-1.5, -0.5, -1.5, -0.5, 0.5, 1.5, 0.5, 1.5},
                           {0, 0, 0, 0, 1, 1, 1, 1});
  auto model =
      train(default_spec("gnb"), DataView(d), {"gnb", {1e-9}}, 0);
  Dataset probe = make_dataset("midpoint", 2, 1, {0.0, 1.0}, {0, 1});
  auto preds = model.predict(DataView(probe));
  CHECK(preds[0] == 0);  // exactly equal posteriors
  CHECK(preds[1] == 1);
}

TEST_CASE("accuracy: counting, bounds, and error paths") {
  Dataset train_d = cvtest::gaussian_mixture("acc_train", 20, 2, 2.5, 1);
  auto model = train(default_spec("knn"), DataView(train_d), {"knn", {3}}, 0);

  // constant-class model on a balanced test set scores one half
  Dataset balanced = cvtest::noise_dataset("bal", 10, 2, 3);
  CHECK(accuracy(constant_model(0, 2), DataView(balanced)) == 0.5);

  // hand-built set where exactly 3 of 4 probes sit on their own side
  Dataset probe = make_dataset("probe4", 4, 2, {-3, 0, -2, 0, 3, 0, 2.5, 0},
                               {0, 0, 1, 0});
  CHECK(accuracy(model, DataView(probe)) == 0.75);

  Dataset empty_view_src = cvtest::noise_dataset("e", 8, 2, 4);
  DataView empty = DataView(empty_view_src).select({});
  CHECK_THROWS_AS(accuracy(model, empty), EmptyTestSet);

  Dataset wrong_dim = cvtest::noise_dataset("w", 8, 3, 5);
  CHECK_THROWS_AS(accuracy(model, DataView(wrong_dim)), DimensionMismatch);
}

TEST_CASE("single-class training sets are refused") {
  Dataset d = make_dataset("ones", 4, 1, {1, 2, 3, 4}, {1, 1, 1, 1});
  CHECK_THROWS_AS(train(default_spec("knn"), DataView(d), {"knn", {1}}, 0),
                  SingleClassTrainingSet);
}

TEST_CASE("stochastic learners are seed-deterministic; the rest ignore seeds") {
  Dataset train_d = cvtest::gaussian_mixture("seed_train", 40, 4, 0.8, 7);
  Dataset test_d = cvtest::gaussian_mixture("seed_test", 60, 4, 0.8, 8);
  DataView train_view(train_d);
  DataView test_view(test_d);

  struct Case {
    const char* id;
    HyperPoint theta;
    bool stochastic;
  };
  std::vector<Case> cases{
      {"knn", {"knn", {5}}, false},
      {"gnb", {"gnb", {1e-9}}, false},
      {"proto", {"proto", {2}}, false},
      {"linridge", {"linridge", {1.0}}, false},
      {"rf", {"rf", {100, 0.5}}, true},
      {"gbstump", {"gbstump", {50, 0.1, 1}}, true},
  };
  for (const auto& c : cases) {
    CAPTURE(c.id);
    auto spec = default_spec(c.id);
    auto p1 = train(spec, train_view, c.theta, 101).predict(test_view);
    auto p1_again = train(spec, train_view, c.theta, 101).predict(test_view);
    CHECK(p1 == p1_again);  // same seed, same model
    auto p2 = train(spec, train_view, c.theta, 202).predict(test_view);
    if (!c.stochastic) CHECK(p1 == p2);
  }

  // different seeds must be able to change a stochastic learner's output
  Dataset noisy = cvtest::noise_dataset("rf_noise", 60, 4, 11);
  Dataset noisy_test = cvtest::noise_dataset("rf_noise_test", 200, 4, 12);
  auto spec = default_spec("rf");
  auto a = train(spec, DataView(noisy), {"rf", {100, 0.5}}, 1)
               .predict(DataView(noisy_test));
  auto b = train(spec, DataView(noisy), {"rf", {100, 0.5}}, 2)
               .predict(DataView(noisy_test));
  CHECK(a != b);
}

TEST_CASE("relabeling both sides leaves accuracy unchanged") {
  Dataset train_d = cvtest::gaussian_mixture("perm_train", 40, 3, 1.0, 21);
  Dataset test_d = cvtest::gaussian_mixture("perm_test", 30, 3, 1.0, 22);
  Dataset train_f = flipped(train_d);
  Dataset test_f = flipped(test_d);

  std::vector<HyperPoint> thetas{
      {"knn", {5}},          {"gnb", {1e-6}},
      {"proto", {2}},        {"linridge", {0.1}},
      {"rf", {100, 0.5}},    {"gbstump", {50, 0.1, 2}},
  };
  for (const auto& theta : thetas) {
    CAPTURE(theta.learner);
    auto spec = default_spec(theta.learner);
    double base =
        accuracy(train(spec, DataView(train_d), theta, 9), DataView(test_d));
    double perm =
        accuracy(train(spec, DataView(train_f), theta, 9), DataView(test_f));
    CHECK(base == perm);
  }
}

TEST_CASE("learners separate an easy mixture clearly") {
  Dataset train_d = cvtest::gaussian_mixture("easy_train", 60, 3, 2.5, 31);
  Dataset test_d = cvtest::gaussian_mixture("easy_test", 100, 3, 2.5, 32);
  std::vector<HyperPoint> thetas{
      {"knn", {5}},          {"gnb", {1e-9}},
      {"proto", {2}},        {"linridge", {1.0}},
      {"rf", {100, 0.5}},    {"gbstump", {150, 0.1, 2}},
  };
  for (const auto& theta : thetas) {
    CAPTURE(theta.learner);
    auto spec = default_spec(theta.learner);
    double acc =
        accuracy(train(spec, DataView(train_d), theta, 3), DataView(test_d));
    CHECK(acc > 0.9);
  }
}
