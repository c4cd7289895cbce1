#include "cvbench/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"

#include "cvbench/errors.hpp"

namespace cvbench {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultSubsampleCap = 5000;

void require_clean_name(const std::string& name, const char* what) {
  if (name.empty()) throw ConfigError(std::string(what) + " must not be empty");
  if (name.find_first_of(",;=\n") != std::string::npos)
    throw ConfigError(std::string(what) + " '" + name +
                      "' contains a reserved character (,;=)");
}

LabelColumn parse_label_column(const Json& j) {
  if (j.is_string()) return LabelColumn::by_name(j.get<std::string>());
  if (j.is_number_unsigned() || j.is_number_integer()) {
    auto v = j.get<long long>();
    if (v < 0) throw ConfigError("label_column index must be non-negative");
    return LabelColumn::by_index(static_cast<std::size_t>(v));
  }
  throw ConfigError("label_column must be a column name or a 0-based index");
}

}  // namespace

StudyConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());

  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }

  StudyConfig config;
  try {
    config.learners = j.value("learners", builtin_learner_ids());
    if (config.learners.empty())
      throw ConfigError("learners list must not be empty");
    std::set<std::string> seen;
    for (const auto& id : config.learners) {
      if (!is_builtin_learner(id))
        throw ConfigError("UnknownLearner: '" + id + "' is not a built-in");
      if (!seen.insert(id).second)
        throw ConfigError("learner '" + id + "' listed twice");
    }
    config.learner_set = LearnerSet::builtin(config.learners);

    if (j.contains("grids")) {
      for (const auto& [learner, axes] : j.at("grids").items()) {
        if (!is_builtin_learner(learner))
          throw ConfigError("grids: UnknownLearner '" + learner + "'");
        for (auto& spec : config.learner_set.specs) {
          if (spec.id != learner) continue;
          for (const auto& [axis_name, values] : axes.items()) {
            bool found = false;
            for (auto& axis : spec.axes) {
              if (axis.name != axis_name) continue;
              found = true;
              if (!values.is_array() || values.empty())
                throw ConfigError("grids." + learner + "." + axis_name +
                                  " must be a non-empty array");
              axis.values.clear();
              for (const auto& v : values)
                axis.values.push_back(v.get<double>());
            }
            if (!found)
              throw ConfigError("grids." + learner + ": no axis named '" +
                                axis_name + "'");
          }
          create_grid(spec);  // validates bounds and emptiness now
        }
      }
    }

    if (j.contains("scenarios")) {
      for (const auto& [name, ids] : j.at("scenarios").items()) {
        require_clean_name(name, "scenario name");
        Scenario s{name, {}};
        for (const auto& id : ids) {
          std::string learner = id.get<std::string>();
          if (std::find(config.learners.begin(), config.learners.end(),
                        learner) == config.learners.end())
            throw ConfigError("scenario '" + name + "': UnknownLearner '" +
                              learner + "' (not in the learners list)");
          s.learners.push_back(learner);
        }
        if (s.learners.empty())
          throw ConfigError("scenario '" + name + "' has no learners");
        config.scenarios.push_back(std::move(s));
      }
    }
    if (config.scenarios.empty())
      config.scenarios.push_back({"full", config.learners});
    {
      std::set<std::string> names;
      for (const auto& s : config.scenarios)
        if (!names.insert(s.name).second)
          throw ConfigError("scenario '" + s.name + "' defined twice");
    }

    if (!j.contains("datasets") || !j.at("datasets").is_array() ||
        j.at("datasets").empty())
      throw ConfigError("config needs a non-empty datasets array");
    std::set<std::string> dataset_names;
    for (const auto& entry : j.at("datasets")) {
      DatasetEntry d;
      d.path = entry.at("path").get<std::string>();
      if (d.path.is_relative()) d.path = path.parent_path() / d.path;
      d.name = entry.value("name", d.path.stem().string());
      require_clean_name(d.name, "dataset name");
      if (!dataset_names.insert(d.name).second)
        throw ConfigError("dataset name '" + d.name + "' used twice");
      if (!entry.contains("label_column"))
        throw ConfigError("dataset '" + d.name + "': label_column is required");
      d.label_column = parse_label_column(entry.at("label_column"));
      d.has_header = entry.value("header", true);
      if (entry.contains("subsample_cap") && entry.at("subsample_cap").is_null())
        d.subsample_cap = std::nullopt;
      else
        d.subsample_cap = entry.value("subsample_cap", kDefaultSubsampleCap);
      if (d.subsample_cap && *d.subsample_cap < 4)
        throw ConfigError("dataset '" + d.name + "': subsample_cap too small");
      config.datasets.push_back(std::move(d));
    }

    config.params.repetitions = j.value("repetitions", 6);
    if (config.params.repetitions < 1)
      throw ConfigError("repetitions must be at least 1");
    config.params.split_fraction = j.value("split_fraction", 0.5);
    if (!(config.params.split_fraction > 0.0 &&
          config.params.split_fraction < 1.0))
      throw ConfigError("split_fraction must be in (0,1)");
    config.params.k_outer = j.value("k_outer", 5);
    config.params.k_inner = j.value("k_inner", 5);
    if (config.params.k_outer < 2 || config.params.k_inner < 2)
      throw ConfigError("k_outer and k_inner must be at least 2");
    config.params.master_seed = j.value("master_seed", std::uint64_t{0});

    if (j.contains("workers")) {
      config.workers = j.at("workers").get<int>();
      if (*config.workers < 1) throw ConfigError("workers must be at least 1");
    }

    if (auto a = parse_analysis(j.value("analysis", "primary")))
      config.analysis = *a;
    else
      throw ConfigError("analysis must be primary|avg_first|per_repetition");
    if (auto t = parse_threshold(j.value("threshold", "nested-gap")))
      config.threshold = *t;
    else
      throw ConfigError("threshold must be nested-gap|stddev");

    if (j.contains("baseline")) {
      std::string b = j.at("baseline").get<std::string>();
      if (std::find(config.learners.begin(), config.learners.end(), b) ==
          config.learners.end())
        throw ConfigError("baseline: UnknownLearner '" + b +
                          "' (not in the learners list)");
      config.baseline = b;
    }
    if (j.contains("min_dataset_size"))
      config.min_size = j.at("min_dataset_size").get<std::size_t>();

    if (j.contains("output_dir")) {
      std::filesystem::path dir = j.at("output_dir").get<std::string>();
      config.output_dir =
          dir.is_relative() ? path.parent_path() / dir : dir;
    } else {
      config.output_dir = path.parent_path() / "out";
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("config error: " + std::string(e.what()));
  }
  return config;
}

}  // namespace cvbench
