#include "cvbench/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include "cvbench/errors.hpp"
#include "doctest.h"

using namespace cvbench;

namespace {

std::filesystem::path write_csv(const std::string& name,
                                const std::string& body) {
  auto dir = std::filesystem::temp_directory_path() / "cvbench_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("load_csv: header file with string labels") {
  auto path = write_csv("basic.csv",
                        "x1,x2,label\n"
                        "1.0,2.0,a\n0.5,1.5,b\n2.0,0.1,a\n0.1,0.2,b\n"
                        "1.1,2.1,a\n0.6,1.6,b\n2.1,0.2,a\n0.2,0.3,b\n");
  auto d = load_csv(path, {LabelColumn::by_name("label"), true});
  CHECK(d.n_instances == 8);
  CHECK(d.n_features == 2);
  CHECK(d.name == "basic");
  // 'a' sorts before 'b' so it maps to class 0
  CHECK(d.labels[0] == 0);
  CHECK(d.labels[1] == 1);
  auto counts = d.class_counts();
  CHECK(counts[0] == 4);
  CHECK(counts[1] == 4);
  CHECK(d.row(1)[1] == 1.5);
}

TEST_CASE("load_csv: numeric labels map by numeric order") {
  auto path = write_csv("numlab.csv",
                        "10,1.0\n2,2.0\n10,1.1\n2,2.1\n"
                        "10,1.2\n2,2.2\n10,1.3\n2,2.3\n");
  auto d = load_csv(path, {LabelColumn::by_index(0), false});
  // 2 < 10 numerically (lexicographic order would reverse them)
  CHECK(d.labels[0] == 1);
  CHECK(d.labels[1] == 0);
  CHECK(d.n_features == 1);
}

TEST_CASE("load_csv: three distinct labels") {
  auto path = write_csv("threeway.csv",
                        "x,label\n1,a\n2,b\n3,c\n4,a\n5,b\n6,c\n7,a\n8,b\n");
  CHECK_THROWS_AS(load_csv(path, {LabelColumn::by_name("label"), true}),
                  NonBinaryLabels);
}

TEST_CASE("load_csv: missing field is a malformed row with its line number") {
  auto path = write_csv("gap.csv", "x1,x2,label\n1.0,2.0,a\n1.0,,b\n");
  try {
    load_csv(path, {LabelColumn::by_name("label"), true});
    FAIL("expected MalformedRow");
  } catch (const MalformedRow& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
}

TEST_CASE("load_csv: wrong arity and non-numeric features") {
  auto bad_arity = write_csv("arity.csv", "x,y,label\n1,2,a\n1,b\n");
  CHECK_THROWS_AS(load_csv(bad_arity, {LabelColumn::by_name("label"), true}),
                  MalformedRow);
  auto bad_value = write_csv("value.csv", "x,label\noops,a\n2,b\n");
  CHECK_THROWS_AS(load_csv(bad_value, {LabelColumn::by_name("label"), true}),
                  MalformedRow);
  auto non_finite = write_csv("inf.csv", "x,label\ninf,a\n2,b\n");
  CHECK_THROWS_AS(load_csv(non_finite, {LabelColumn::by_name("label"), true}),
                  MalformedRow);
}

TEST_CASE("load_csv: classes with fewer than 4 instances are rejected") {
  auto path = write_csv("tiny.csv", "x,label\n1,a\n2,b\n3,a\n4,b\n");
  CHECK_THROWS_AS(load_csv(path, {LabelColumn::by_name("label"), true}),
                  TooFewInstances);
}

TEST_CASE("load_csv: label column by name needs a header") {
  auto path = write_csv("nohdr.csv", "1,a\n2,b\n");
  CHECK_THROWS_AS(load_csv(path, {LabelColumn::by_name("label"), false}),
                  ConfigError);
  CHECK_THROWS_AS(load_csv(path, {LabelColumn::by_index(7), false}),
                  MalformedRow);
}

TEST_CASE("data views compose") {
  Dataset d = make_dataset("v", 4, 1, {0, 1, 2, 3}, {0, 0, 1, 1});
  DataView all(d);
  DataView evens = all.select({0, 2});
  CHECK(evens.size() == 2);
  CHECK(evens.row(1)[0] == 2.0);
  DataView second = evens.select({1});
  CHECK(second.row(0)[0] == 2.0);
  CHECK(second.label(0) == 1);
  auto counts = evens.class_counts();
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 1);
}
