#include "cvbench/stats.hpp"

#include <algorithm>
#include <cmath>

#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"

namespace cvbench {

namespace {

constexpr std::size_t kExactLimit = 25;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Average ranks of |d|, doubled so ties stay integral.
std::vector<long long> doubled_ranks(const std::vector<double>& abs_d) {
  std::size_t n = abs_d.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return abs_d[a] < abs_d[b] || (abs_d[a] == abs_d[b] && a < b);
  });
  std::vector<long long> out(n, 0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && abs_d[order[j + 1]] == abs_d[order[i]]) ++j;
    // positions i..j share ranks i+1..j+1; average doubled = (i+1)+(j+1)
    long long doubled = static_cast<long long>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = doubled;
    i = j + 1;
  }
  return out;
}

}  // namespace

TestResult wilcoxon_one_sided(const PairedSample& sample) {
  if (sample.pairs.empty()) throw EmptySample("empty paired sample");

  std::vector<double> abs_d;
  std::vector<bool> positive;
  for (const auto& [x, y] : sample.pairs) {
    double d = x - y;
    if (d == 0.0) continue;  // zero differences are dropped
    abs_d.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }

  TestResult result;
  result.n_effective = abs_d.size();
  if (abs_d.empty()) {
    result.p_value = 1.0;
    result.method = "exact";
    return result;
  }

  auto ranks2 = doubled_ranks(abs_d);
  long long w_plus2 = 0;
  for (std::size_t i = 0; i < ranks2.size(); ++i)
    if (positive[i]) w_plus2 += ranks2[i];
  result.statistic = static_cast<double>(w_plus2) / 2.0;

  std::size_t n = abs_d.size();
  if (n <= kExactLimit) {
    // P(W+ <= observed) by counting sign assignments via subset sums of the
    // doubled ranks; counts fit a double exactly for n <= 25.
    long long total2 = 0;
    for (long long r : ranks2) total2 += r;
    std::vector<double> count(static_cast<std::size_t>(total2) + 1, 0.0);
    count[0] = 1.0;
    for (long long r : ranks2)
      for (long long s = total2; s >= r; --s)
        count[static_cast<std::size_t>(s)] +=
            count[static_cast<std::size_t>(s - r)];
    double below = 0.0;
    for (long long s = 0; s <= std::min(w_plus2, total2); ++s)
      below += count[static_cast<std::size_t>(s)];
    result.p_value = below / std::pow(2.0, static_cast<double>(n));
    result.method = "exact";
  } else {
    double nn = static_cast<double>(n);
    double mean = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    // tie correction: subtract sum(t^3 - t)/48 over groups of tied |d|
    std::vector<double> sorted_abs = abs_d;
    std::sort(sorted_abs.begin(), sorted_abs.end());
    std::size_t i = 0;
    while (i < sorted_abs.size()) {
      std::size_t j = i;
      while (j + 1 < sorted_abs.size() && sorted_abs[j + 1] == sorted_abs[i])
        ++j;
      double t = static_cast<double>(j - i + 1);
      var -= (t * t * t - t) / 48.0;
      i = j + 1;
    }
    double z = (result.statistic - mean + 0.5) / std::sqrt(var);
    result.p_value = std::clamp(normal_cdf(z), 0.0, 1.0);
    result.method = "normal-approximation";
  }
  return result;
}

IntervalEstimate bootstrap_ci_mean(const std::vector<double>& values,
                                   std::size_t b, double level,
                                   std::uint64_t seed) {
  if (values.empty()) throw EmptySample("empty sample for bootstrap");
  std::size_t n = values.size();

  IntervalEstimate out;
  out.level = level;
  out.resamples = b;
  double total = 0.0;
  for (double v : values) total += v;
  out.mean = total / static_cast<double>(n);

  // Each resample has its own derived stream, so block-parallel evaluation
  // would produce the identical mean vector.
  std::vector<double> means(b);
  for (std::size_t r = 0; r < b; ++r) {
    SplitMix64 rng(hash64(seed, "resample", r));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += values[rng.next_below(n)];
    means[r] = acc / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());

  auto quantile = [&](double q) {
    double h = q * static_cast<double>(b - 1);
    auto lo = static_cast<std::size_t>(std::floor(h));
    auto hi = std::min(lo + 1, b - 1);
    double frac = h - std::floor(h);
    return means[lo] + frac * (means[hi] - means[lo]);
  };
  double alpha = 1.0 - level;
  out.lower = quantile(alpha / 2.0);
  out.upper = quantile(1.0 - alpha / 2.0);
  return out;
}

std::vector<std::pair<std::string, double>> mean_ranks(
    const std::vector<std::string>& learners,
    const std::vector<std::vector<double>>& cells) {
  if (learners.empty() || cells.empty())
    throw IncompleteMatrix("mean ranks need at least one learner and one cell");
  for (const auto& cell : cells)
    if (cell.size() != learners.size())
      throw IncompleteMatrix("rank matrix cell is missing learner values");

  std::size_t l = learners.size();
  std::vector<double> sums(l, 0.0);
  for (const auto& cell : cells) {
    for (std::size_t i = 0; i < l; ++i) {
      std::size_t better = 0, equal = 0;
      for (std::size_t j = 0; j < l; ++j) {
        if (cell[j] > cell[i]) ++better;
        if (cell[j] == cell[i]) ++equal;  // includes i itself
      }
      sums[i] += static_cast<double>(better) + 1.0 +
                 (static_cast<double>(equal) - 1.0) / 2.0;
    }
  }
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < l; ++i)
    out.emplace_back(learners[i], sums[i] / static_cast<double>(cells.size()));
  return out;
}

ChoiceRate same_choice_rate(
    const std::vector<std::pair<std::string, std::string>>& selections,
    std::size_t candidate_count) {
  if (selections.empty()) throw EmptySample("no selection records");
  if (candidate_count == 0) throw EmptySample("no candidates");
  std::size_t agree = 0;
  for (const auto& [a, b] : selections)
    if (a == b) ++agree;
  ChoiceRate out;
  out.n = selections.size();
  out.rate = static_cast<double>(agree) / static_cast<double>(out.n);
  out.random_baseline = 1.0 / static_cast<double>(candidate_count);
  return out;
}

}  // namespace cvbench
