#include "cvbench/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

using namespace cvbench;

TEST_CASE("hash64 separates role tags and argument order") {
  CHECK(hash64(1, "split") == hash64(1, "split"));
  CHECK(hash64(1, "split") != hash64(1, "folds"));
  CHECK(hash64(1, "a", 2) != hash64(1, 2, "a"));
  CHECK(hash64(1, "x") != hash64(2, "x"));
}

TEST_CASE("streams are reproducible and bounded draws stay in range") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  SplitMix64 r(7);
  for (int i = 0; i < 1000; ++i) {
    auto v = r.next_below(13);
    CHECK(v < 13);
    double u = r.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("fisher_yates yields a permutation") {
  SplitMix64 rng(99);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  auto shuffled = v;
  fisher_yates(shuffled, rng);
  CHECK(shuffled != v);  // astronomically unlikely to be identity
  std::sort(shuffled.begin(), shuffled.end());
  CHECK(shuffled == v);
}

TEST_CASE("gaussian draws have roughly standard moments") {
  SplitMix64 rng(2024);
  double total = 0.0, total_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double g = rng.next_gaussian();
    total += g;
    total_sq += g * g;
  }
  double mean = total / n;
  double var = total_sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.03);
  CHECK(std::abs(var - 1.0) < 0.05);
}
