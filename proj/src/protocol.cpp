#include "cvbench/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"
#include "cvbench/selection.hpp"
#include "cvbench/split.hpp"

namespace cvbench {

LearnerSet LearnerSet::builtin(const std::vector<std::string>& ids) {
  LearnerSet set;
  for (const auto& id : ids) set.specs.push_back(default_spec(id));
  return set;
}

const LearnerSpec& LearnerSet::get(const std::string& id) const {
  for (const auto& s : specs)
    if (s.id == id) return s;
  throw UnknownLearner("learner '" + id + "' is not configured");
}

bool LearnerSet::contains(const std::string& id) const {
  return std::any_of(specs.begin(), specs.end(),
                     [&](const LearnerSpec& s) { return s.id == id; });
}

namespace {

const LearnerCell& cell_of(const RepetitionRecord& record,
                           const std::string& learner) {
  for (const auto& c : record.cells)
    if (c.learner == learner) return c;
  throw IncompleteTable("record " + record.dataset + "#" +
                        std::to_string(record.repetition) +
                        " has no cell for learner '" + learner + "'");
}

}  // namespace

void derive_selection(RepetitionRecord& record, const Scenario& scenario) {
  std::vector<std::pair<std::string, double>> flat_estimates;
  std::vector<std::pair<std::string, double>> nested_estimates;
  for (const auto& id : scenario.learners) {
    const LearnerCell& cell = cell_of(record, id);
    flat_estimates.emplace_back(id, cell.flat_estimate);
    nested_estimates.emplace_back(id, cell.nested_estimate);
  }
  record.flat_choice = select_algorithm(flat_estimates);
  record.nested_choice = select_algorithm(nested_estimates);

  const LearnerCell& flat_cell = cell_of(record, record.flat_choice);
  const LearnerCell& nested_cell = cell_of(record, record.nested_choice);
  record.future_flat = flat_cell.future_accuracy;
  record.future_nested = nested_cell.future_accuracy;
  record.accgain = record.future_nested - record.future_flat;
  record.delta_flat =
      std::abs(flat_cell.nested_estimate - flat_cell.future_accuracy);
  record.delta_nested =
      std::abs(nested_cell.nested_estimate - nested_cell.future_accuracy);
  record.delta = std::min(record.delta_nested, record.delta_flat);
}

RepetitionRecord run_repetition(const Dataset& data, const Scenario& scenario,
                                const LearnerSet& learners,
                                const StudyParams& params, int repetition) {
  RepetitionRecord record;
  record.dataset = data.name;
  record.n_instances = data.n_instances;
  record.repetition = repetition;

  std::uint64_t rep_seed = hash64(params.master_seed, data.name,
                                  static_cast<std::uint64_t>(repetition));
  DataView all(data);
  SplitPair split = stratified_holdout(all, params.split_fraction,
                                       hash64(rep_seed, "split"));
  DataView train_half = all.select(split.train);
  DataView test_half = all.select(split.test);

  for (const auto& id : scenario.learners) {
    const LearnerSpec& spec = learners.get(id);
    std::uint64_t learner_seed = hash64(rep_seed, "learner", id);
    try {
      LearnerCell cell;
      cell.learner = id;
      FlatResult flat =
          flat_cv(spec, train_half, params.k_outer, learner_seed);
      NestedResult nested = nested_cv(spec, train_half, params.k_outer,
                                      params.k_inner, learner_seed);
      cell.theta = flat.best_theta;
      cell.flat_estimate = flat.estimate;
      cell.nested_estimate = nested.estimate;
      // future accuracy: train on the full train half with the
      // flat-selected hyperparameters, score on the held-out test half
      TrainedModel model = train(spec, train_half, flat.best_theta,
                                 hash64(learner_seed, "future"));
      cell.future_accuracy = accuracy(model, test_half);
      record.cells.push_back(std::move(cell));
    } catch (const Error& e) {
      throw StudyExecutionError("dataset=" + data.name + " repetition=" +
                                std::to_string(repetition) + " learner=" + id +
                                ": " + e.what());
    }
  }

  derive_selection(record, scenario);
  return record;
}

DatasetRecord aggregate_dataset(std::vector<RepetitionRecord> records,
                                int expected_repetitions) {
  if (records.empty()) throw MismatchedRecords("no repetition records");
  if (records.size() != static_cast<std::size_t>(expected_repetitions))
    throw MismatchedRecords(
        "expected " + std::to_string(expected_repetitions) +
        " repetitions, got " + std::to_string(records.size()));
  for (const auto& r : records)
    if (r.dataset != records.front().dataset)
      throw MismatchedRecords("records mix datasets '" +
                              records.front().dataset + "' and '" + r.dataset +
                              "'");

  DatasetRecord out;
  out.dataset = records.front().dataset;
  out.n_instances = records.front().n_instances;
  double gain = 0.0, delta = 0.0;
  for (const auto& r : records) {
    gain += r.accgain;
    delta += r.delta;
  }
  out.accgain_mean = gain / static_cast<double>(records.size());
  out.delta_mean = delta / static_cast<double>(records.size());
  out.repetitions = std::move(records);
  return out;
}

StudyRecord run_study(const std::vector<Dataset>& datasets,
                      const Scenario& scenario, const LearnerSet& learners,
                      const StudyParams& params) {
  if (datasets.empty()) throw Error("study needs at least one dataset");
  if (scenario.learners.empty())
    throw EmptyCandidateSet("scenario '" + scenario.name + "' has no learners");
  // validate before any training
  for (const auto& id : scenario.learners) learners.get(id);
  for (const auto& d : datasets) validate_study_dataset(d);

  std::size_t n_datasets = datasets.size();
  auto reps = static_cast<std::size_t>(params.repetitions);
  std::vector<RepetitionRecord> grid(n_datasets * reps);
  std::vector<std::string> failures(n_datasets * reps);

  auto run_cell = [&](std::size_t job) {
    std::size_t di = job / reps;
    int r = static_cast<int>(job % reps);
    grid[job] =
        run_repetition(datasets[di], scenario, learners, params, r);
  };

  std::size_t n_jobs = n_datasets * reps;
  int workers = std::max(1, params.workers);
  if (workers == 1) {
    for (std::size_t job = 0; job < n_jobs; ++job) run_cell(job);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t job = next.fetch_add(1);
        if (job >= n_jobs) return;
        try {
          run_cell(job);
        } catch (const std::exception& e) {
          failures[job] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    // report the first failing cell in job order, independent of timing
    for (std::size_t job = 0; job < n_jobs; ++job)
      if (!failures[job].empty()) throw StudyExecutionError(failures[job]);
  }

  StudyRecord study;
  study.scenario = scenario;
  study.params = params;
  for (std::size_t di = 0; di < n_datasets; ++di) {
    std::vector<RepetitionRecord> records(
        grid.begin() + static_cast<std::ptrdiff_t>(di * reps),
        grid.begin() + static_cast<std::ptrdiff_t>((di + 1) * reps));
    study.datasets.push_back(
        aggregate_dataset(std::move(records), params.repetitions));
  }
  return study;
}

StudyRecord derive_scenario(const StudyRecord& study, const Scenario& subset) {
  StudyRecord out;
  out.scenario = subset;
  out.params = study.params;
  for (const auto& ds : study.datasets) {
    std::vector<RepetitionRecord> records;
    for (const auto& rep : ds.repetitions) {
      RepetitionRecord r;
      r.dataset = rep.dataset;
      r.n_instances = rep.n_instances;
      r.repetition = rep.repetition;
      for (const auto& id : subset.learners)
        r.cells.push_back(cell_of(rep, id));
      derive_selection(r, subset);
      records.push_back(std::move(r));
    }
    out.datasets.push_back(
        aggregate_dataset(std::move(records), study.params.repetitions));
  }
  return out;
}

StudyRecord baseline_fixed(const StudyRecord& study, const Scenario& scenario,
                           const std::string& fixed) {
  bool present = false;
  for (const auto& ds : study.datasets)
    for (const auto& rep : ds.repetitions)
      for (const auto& c : rep.cells)
        if (c.learner == fixed) present = true;
  if (!present)
    throw UnknownLearner("baseline learner '" + fixed +
                         "' is not part of the study");

  StudyRecord out;
  out.scenario = scenario;
  out.params = study.params;
  for (const auto& ds : study.datasets) {
    std::vector<RepetitionRecord> records;
    for (const auto& rep : ds.repetitions) {
      RepetitionRecord r = rep;
      derive_selection(r, scenario);
      const LearnerCell& fixed_cell = cell_of(r, fixed);
      r.flat_choice = fixed;
      r.future_flat = fixed_cell.future_accuracy;
      r.accgain = r.future_nested - r.future_flat;
      r.delta_flat =
          std::abs(fixed_cell.nested_estimate - fixed_cell.future_accuracy);
      r.delta = std::min(r.delta_nested, r.delta_flat);
      records.push_back(std::move(r));
    }
    out.datasets.push_back(
        aggregate_dataset(std::move(records), study.params.repetitions));
  }
  return out;
}

double threshold_stddev(const StudyRecord& study, const std::string& learner,
                        const std::string& dataset) {
  const DatasetRecord* ds = nullptr;
  for (const auto& d : study.datasets)
    if (d.dataset == dataset) ds = &d;
  if (!ds) throw IncompleteTable("no dataset '" + dataset + "' in study");
  if (ds->repetitions.size() < 2)
    throw InsufficientRepetitions(
        "standard-deviation threshold needs at least 2 repetitions");

  std::vector<double> flat, nested, future;
  for (const auto& rep : ds->repetitions) {
    const LearnerCell& cell = cell_of(rep, learner);
    flat.push_back(cell.flat_estimate);
    nested.push_back(cell.nested_estimate);
    future.push_back(cell.future_accuracy);
  }
  auto sample_sd = [](const std::vector<double>& v) {
    bool constant = true;
    for (double x : v) constant = constant && x == v.front();
    if (constant) return 0.0;  // avoid rounding residue in the mean
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
  };
  return std::min({sample_sd(nested), sample_sd(flat), sample_sd(future)});
}

namespace {

// Average-first view of one dataset: estimates averaged over repetitions
// before selecting, thresholds from the averaged series.
struct AvgFirstRow {
  std::string flat_choice;
  std::string nested_choice;
  double abs_gain = 0.0;
  double threshold = 0.0;
};

AvgFirstRow avg_first_row(const StudyRecord& study, const DatasetRecord& ds) {
  const auto& ids = study.scenario.learners;
  std::size_t l = ids.size();
  std::vector<double> flat(l, 0.0), nested(l, 0.0), future(l, 0.0);
  for (const auto& rep : ds.repetitions) {
    if (rep.cells.size() != l)
      throw IncompleteTable("record " + rep.dataset + "#" +
                            std::to_string(rep.repetition) +
                            " is missing learner cells");
    for (std::size_t a = 0; a < l; ++a) {
      const LearnerCell& cell = cell_of(rep, ids[a]);
      flat[a] += cell.flat_estimate;
      nested[a] += cell.nested_estimate;
      future[a] += cell.future_accuracy;
    }
  }
  auto r = static_cast<double>(ds.repetitions.size());
  for (std::size_t a = 0; a < l; ++a) {
    flat[a] /= r;
    nested[a] /= r;
    future[a] /= r;
  }

  std::vector<std::pair<std::string, double>> flat_pairs, nested_pairs;
  for (std::size_t a = 0; a < l; ++a) {
    flat_pairs.emplace_back(ids[a], flat[a]);
    nested_pairs.emplace_back(ids[a], nested[a]);
  }
  AvgFirstRow row;
  row.flat_choice = select_algorithm(flat_pairs);
  row.nested_choice = select_algorithm(nested_pairs);
  auto index_of = [&](const std::string& id) {
    return static_cast<std::size_t>(
        std::find(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::size_t fi = index_of(row.flat_choice);
  std::size_t ni = index_of(row.nested_choice);
  row.abs_gain = std::abs(future[ni] - future[fi]);
  double delta_f = std::abs(nested[fi] - future[fi]);
  double delta_n = std::abs(nested[ni] - future[ni]);
  row.threshold = std::min(delta_n, delta_f);
  return row;
}

}  // namespace

AnalysisOutput analyze(const StudyRecord& study, Analysis analysis,
                       Threshold threshold) {
  if (study.datasets.empty()) throw IncompleteStudy("study has no datasets");
  AnalysisOutput out;

  auto stddev_delta = [&](const RepetitionRecord& rep) {
    return std::min(threshold_stddev(study, rep.nested_choice, rep.dataset),
                    threshold_stddev(study, rep.flat_choice, rep.dataset));
  };

  switch (analysis) {
    case Analysis::primary: {
      for (const auto& ds : study.datasets) {
        AnalysisPoint p;
        p.dataset = ds.dataset;
        p.abs_gain = ds.abs_accgain();
        if (threshold == Threshold::nested_gap) {
          p.threshold = ds.delta_mean;
        } else {
          double acc = 0.0;
          for (const auto& rep : ds.repetitions) acc += stddev_delta(rep);
          p.threshold = acc / static_cast<double>(ds.repetitions.size());
        }
        out.points.push_back(std::move(p));
        for (const auto& rep : ds.repetitions)
          out.selections.emplace_back(rep.flat_choice, rep.nested_choice);
      }
      break;
    }
    case Analysis::per_repetition: {
      for (const auto& ds : study.datasets) {
        for (const auto& rep : ds.repetitions) {
          AnalysisPoint p;
          p.dataset = ds.dataset;
          p.repetition = rep.repetition;
          p.abs_gain = std::abs(rep.accgain);
          p.threshold = threshold == Threshold::nested_gap
                            ? rep.delta
                            : stddev_delta(rep);
          out.points.push_back(std::move(p));
          out.selections.emplace_back(rep.flat_choice, rep.nested_choice);
        }
      }
      break;
    }
    case Analysis::avg_first: {
      for (const auto& ds : study.datasets) {
        AvgFirstRow row = avg_first_row(study, ds);
        AnalysisPoint p;
        p.dataset = ds.dataset;
        p.abs_gain = row.abs_gain;
        if (threshold == Threshold::nested_gap) {
          p.threshold = row.threshold;
        } else {
          p.threshold =
              std::min(threshold_stddev(study, row.nested_choice, ds.dataset),
                       threshold_stddev(study, row.flat_choice, ds.dataset));
        }
        out.points.push_back(std::move(p));
        out.selections.emplace_back(row.flat_choice, row.nested_choice);
      }
      break;
    }
  }
  return out;
}

}  // namespace cvbench
