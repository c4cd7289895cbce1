#include "cvbench/study_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "cvbench/errors.hpp"

namespace cvbench {

namespace {

constexpr const char* kMagic = "# cvbench-study v1";
constexpr const char* kHeader =
    "row,scenario,dataset,n_instances,repetition,learner,learner_index,"
    "flat_estimate,nested_estimate,future_accuracy,theta,"
    "flat_choice,nested_choice,future_flat,future_nested,accgain,"
    "delta_flat,delta_nested,delta,accgain_mean,delta_mean";

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double_field(const std::string& s, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw IncompleteTable(std::string("bad numeric field for ") + what +
                          ": '" + s + "'");
  return v;
}

std::uint64_t parse_u64_field(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw IncompleteTable(std::string("bad integer field for ") + what +
                          ": '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_raw_table(const std::filesystem::path& path,
                     const StudyRecord& universe,
                     const std::vector<Scenario>& scenarios) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());

  out << kMagic << '\n';
  out << "# master_seed=" << universe.params.master_seed << '\n';
  out << "# repetitions=" << universe.params.repetitions << '\n';
  out << "# split_fraction=" << format_double(universe.params.split_fraction)
      << '\n';
  out << "# k_outer=" << universe.params.k_outer << '\n';
  out << "# k_inner=" << universe.params.k_inner << '\n';
  out << "# learners=" << join(universe.scenario.learners, ',') << '\n';
  for (const auto& s : scenarios)
    out << "# scenario:" << s.name << '=' << join(s.learners, ',') << '\n';
  out << kHeader << '\n';

  auto learner_index = [&](const std::string& id) {
    const auto& ids = universe.scenario.learners;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return i;
    throw IncompleteTable("learner '" + id + "' missing from universe");
  };

  for (const auto& ds : universe.datasets) {
    for (const auto& rep : ds.repetitions) {
      for (const auto& cell : rep.cells) {
        LearnerSpec spec = default_spec(cell.learner);
        out << "learner,," << ds.dataset << ',' << ds.n_instances << ','
            << rep.repetition << ',' << cell.learner << ','
            << learner_index(cell.learner) << ','
            << format_double(cell.flat_estimate) << ','
            << format_double(cell.nested_estimate) << ','
            << format_double(cell.future_accuracy) << ','
            << format_theta(spec, cell.theta) << ",,,,,,,,,,\n";
      }
    }
  }

  for (const auto& s : scenarios) {
    StudyRecord view = derive_scenario(universe, s);
    for (const auto& ds : view.datasets) {
      for (const auto& rep : ds.repetitions) {
        out << "repetition," << s.name << ',' << ds.dataset << ','
            << ds.n_instances << ',' << rep.repetition << ",,,,,,,"
            << rep.flat_choice << ',' << rep.nested_choice << ','
            << format_double(rep.future_flat) << ','
            << format_double(rep.future_nested) << ','
            << format_double(rep.accgain) << ','
            << format_double(rep.delta_flat) << ','
            << format_double(rep.delta_nested) << ','
            << format_double(rep.delta) << ",,\n";
      }
      out << "dataset," << s.name << ',' << ds.dataset << ','
          << ds.n_instances << ",,,,,,,,,,,,,,,,"
          << format_double(ds.accgain_mean) << ','
          << format_double(ds.delta_mean) << '\n';
    }
  }
  if (!out) throw Error("failed writing " + path.string());
}

RawStudy load_raw_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());

  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw IncompleteTable(path.string() + ": not a study table");

  RawStudy raw;
  StudyParams params;
  std::vector<std::string> universe_ids;

  while (in.peek() == '#') {
    std::getline(in, line);
    std::string body = line.substr(1);
    if (!body.empty() && body.front() == ' ') body.erase(0, 1);
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw IncompleteTable("bad metadata line: " + line);
    std::string key = body.substr(0, eq);
    std::string value = body.substr(eq + 1);
    if (key == "master_seed") {
      params.master_seed = parse_u64_field(value, "master_seed");
    } else if (key == "repetitions") {
      params.repetitions =
          static_cast<int>(parse_u64_field(value, "repetitions"));
    } else if (key == "split_fraction") {
      params.split_fraction = parse_double_field(value, "split_fraction");
    } else if (key == "k_outer") {
      params.k_outer = static_cast<int>(parse_u64_field(value, "k_outer"));
    } else if (key == "k_inner") {
      params.k_inner = static_cast<int>(parse_u64_field(value, "k_inner"));
    } else if (key == "learners") {
      universe_ids = split(value, ',');
    } else if (key.rfind("scenario:", 0) == 0) {
      raw.scenarios.push_back({key.substr(9), split(value, ',')});
    } else {
      throw IncompleteTable("unknown metadata key: " + key);
    }
  }
  if (universe_ids.empty())
    throw IncompleteTable(path.string() + ": missing learners metadata");

  if (!std::getline(in, line) || line != kHeader)
    throw IncompleteTable(path.string() + ": missing or mismatched header");

  // dataset name -> repetition -> cells, in file order
  std::vector<std::string> dataset_order;
  std::map<std::string, std::map<int, RepetitionRecord>> by_dataset;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 21)
      throw IncompleteTable("bad row (expected 21 fields): " + line);
    if (fields[0] != "learner") continue;  // derived rows are recomputed

    const std::string& dataset = fields[2];
    int repetition = static_cast<int>(parse_u64_field(fields[4], "repetition"));
    if (by_dataset.find(dataset) == by_dataset.end())
      dataset_order.push_back(dataset);
    RepetitionRecord& rec = by_dataset[dataset][repetition];
    rec.dataset = dataset;
    rec.n_instances = parse_u64_field(fields[3], "n_instances");
    rec.repetition = repetition;

    LearnerCell cell;
    cell.learner = fields[5];
    cell.flat_estimate = parse_double_field(fields[7], "flat_estimate");
    cell.nested_estimate = parse_double_field(fields[8], "nested_estimate");
    cell.future_accuracy = parse_double_field(fields[9], "future_accuracy");
    cell.theta = parse_theta(default_spec(cell.learner), fields[10]);
    rec.cells.push_back(std::move(cell));
  }

  Scenario universe{"", universe_ids};
  raw.universe.scenario = universe;
  raw.universe.params = params;
  for (const auto& name : dataset_order) {
    auto& reps = by_dataset[name];
    std::vector<RepetitionRecord> records;
    for (int r = 0; r < params.repetitions; ++r) {
      auto it = reps.find(r);
      if (it == reps.end())
        throw IncompleteTable("dataset '" + name + "' is missing repetition " +
                              std::to_string(r));
      RepetitionRecord& rec = it->second;
      if (rec.cells.size() != universe_ids.size())
        throw IncompleteTable("dataset '" + name + "' repetition " +
                              std::to_string(r) + " has " +
                              std::to_string(rec.cells.size()) + " of " +
                              std::to_string(universe_ids.size()) +
                              " learner cells");
      derive_selection(rec, universe);
      records.push_back(std::move(rec));
    }
    raw.universe.datasets.push_back(
        aggregate_dataset(std::move(records), params.repetitions));
  }
  if (raw.universe.datasets.empty())
    throw IncompleteTable(path.string() + ": no learner rows");
  return raw;
}

}  // namespace cvbench
