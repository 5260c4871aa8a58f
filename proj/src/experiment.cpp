// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "episodia/clustering.hpp"
#include "episodia/errors.hpp"

namespace episodia {

namespace {

using nlohmann::ordered_json;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return std::string(buf);
}

// Lazy per-day context: cluster assignments and caption scores are built
// the first time a method needs them, so an Interval-only run never demands
// embeddings, and a missing field is reported with its scene_id.
class DayContext {
 public:
  DayContext(const std::string& date, const std::vector<SceneRecord>& scenes,
             const SentiLexicon& lexicon, const ExperimentConfig& config)
      : date_(date), scenes_(scenes), lexicon_(lexicon), config_(config) {
    scores_.assign(scenes.size(), std::nullopt);
  }

  int size() const { return static_cast<int>(scenes_.size()); }
  const std::string& date() const { return date_; }

  double scene_score(int i) {
    auto& cached = scores_[static_cast<std::size_t>(i)];
    if (!cached) {
      const SceneRecord& scene = scenes_[static_cast<std::size_t>(i)];
      if (!scene.affective_caption)
        throw DataError("scene '" + scene.scene_id +
                        "': affective caption required for senti scoring");
      cached = score_caption(lexicon_, *scene.affective_caption).value;
    }
    return *cached;
  }

  double mean_score(const std::vector<int>& indices) {
    double sum = 0.0;
    for (int i : indices) sum += scene_score(i);
    return sum / static_cast<double>(indices.size());
  }

  const SelectionDistribution& distribution(SelectionMethod method) {
    switch (method) {
      case SelectionMethod::ClusterCap:
        if (!cap_dist_) {
          cap_dist_ = probs_from_clusters(assignment(true), SelectionMethod::ClusterCap, date_);
        }
        return *cap_dist_;
      case SelectionMethod::ClusterEmo:
        if (!emo_dist_) {
          emo_dist_ = probs_from_clusters(assignment(false), SelectionMethod::ClusterEmo, date_);
        }
        return *emo_dist_;
      case SelectionMethod::ClusterCapEmo:
        if (!cap_emo_dist_) {
          cap_emo_dist_ = combine_cap_emo(distribution(SelectionMethod::ClusterCap),
                                          distribution(SelectionMethod::ClusterEmo));
        }
        return *cap_emo_dist_;
      default:
        throw UsageError("distribution: method is not cluster-based");
    }
  }

 private:
  const ClusterAssignment& assignment(bool caption_side) {
    auto& slot = caption_side ? cap_assignment_ : emo_assignment_;
    if (!slot) {
      std::vector<Embedding> points;
      points.reserve(scenes_.size());
      for (const SceneRecord& scene : scenes_) {
        const auto& embedding =
            caption_side ? scene.caption_embedding : scene.affective_embedding;
        if (!embedding)
          throw DataError("scene '" + scene.scene_id + "': " +
                          (caption_side ? "caption" : "affective") +
                          " embedding required for cluster selection");
        points.push_back(*embedding);
      }
      slot = kmedoids(points, config_.num_clusters, config_.base_seed);
    }
    return *slot;
  }

  const std::string& date_;
  const std::vector<SceneRecord>& scenes_;
  const SentiLexicon& lexicon_;
  const ExperimentConfig& config_;
  std::vector<std::optional<double>> scores_;
  std::optional<ClusterAssignment> cap_assignment_;
  std::optional<ClusterAssignment> emo_assignment_;
  std::optional<SelectionDistribution> cap_dist_;
  std::optional<SelectionDistribution> emo_dist_;
  std::optional<SelectionDistribution> cap_emo_dist_;
};

}  // namespace

std::string to_string(VarianceDenominator d) {
  return d == VarianceDenominator::Population ? "population" : "sample";
}

VarianceDenominator variance_denominator_from_string(const std::string& name) {
  if (name == "population") return VarianceDenominator::Population;
  if (name == "sample") return VarianceDenominator::Sample;
  throw UsageError("unknown variance denominator: '" + name +
                   "' (expected population|sample)");
}

double cross_date_variance(std::span<const double> means, VarianceDenominator d) {
  const auto n = static_cast<double>(means.size());
  if (means.size() < 2) throw DataError("cross_date_variance: need at least 2 values");
  double mean = 0.0;
  for (double x : means) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : means) ss += (x - mean) * (x - mean);
  return d == VarianceDenominator::Population ? ss / n : ss / (n - 1.0);
}

ExperimentReport run_senti_experiment(const WalkCorpus& corpus,
                                      const SentiLexicon& lexicon,
                                      const ExperimentConfig& config) {
  if (config.repetitions < 1) throw UsageError("experiment: repetitions must be >= 1");
  if (config.scenes_per_day < 1) throw UsageError("experiment: C must be >= 1");
  if (config.num_clusters < 1) throw UsageError("experiment: M must be >= 1");
  if (config.methods.empty()) throw UsageError("experiment: no methods requested");
  if (corpus.days.empty()) throw DataError("experiment: corpus has no days");

  ExperimentReport report;
  report.config = config;
  for (const auto& [date, scenes] : corpus.days) {
    if (scenes.empty()) throw DataError("experiment: empty day " + date);
    report.dates.push_back(date);
  }

  std::vector<DayContext> days;
  days.reserve(corpus.days.size());
  for (const auto& [date, scenes] : corpus.days)
    days.emplace_back(date, scenes, lexicon, config);

  const int repetitions = config.repetitions;
  for (SelectionMethod method : config.methods) {
    MethodDateStats stats;
    stats.method = method;
    for (DayContext& day : days) {
      const int n = day.size();
      const int c = config.scenes_per_day;

      std::vector<double> rep_values;
      if (method == SelectionMethod::All) {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
        rep_values.push_back(day.mean_score(all));
      } else if (method == SelectionMethod::Interval) {
        rep_values.push_back(day.mean_score(interval_select(n, c)));
      } else {
        rep_values.reserve(static_cast<std::size_t>(repetitions));
        for (int r = 0; r < repetitions; ++r) {
          const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
          const std::vector<int> indices =
              method == SelectionMethod::Random
                  ? random_select(n, c, seed)
                  : weighted_indices_without_replacement(day.distribution(method).probs,
                                                         c, seed);
          rep_values.push_back(day.mean_score(indices));
        }
      }

      double mean = 0.0;
      for (double v : rep_values) mean += v;
      mean /= static_cast<double>(rep_values.size());
      double ss = 0.0;
      for (double v : rep_values) ss += (v - mean) * (v - mean);
      stats.date_means.push_back(mean);
      stats.date_spreads.push_back(std::sqrt(ss / static_cast<double>(rep_values.size())));
    }
    stats.cross_date_variance =
        report.dates.size() >= 2
            ? cross_date_variance(stats.date_means, config.variance_denominator)
            : 0.0;
    report.methods.push_back(std::move(stats));
  }
  return report;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
  ordered_json methods_array = ordered_json::array();
  for (const MethodDateStats& stats : report.methods) {
    methods_array.push_back(ordered_json{{"method", to_string(stats.method)},
                                         {"date_means", stats.date_means},
                                         {"date_spreads", stats.date_spreads},
                                         {"cross_date_variance", stats.cross_date_variance}});
  }
  ordered_json method_names = ordered_json::array();
  for (SelectionMethod m : report.config.methods) method_names.push_back(to_string(m));
  return ordered_json{
      {"config",
       ordered_json{{"methods", method_names},
                    {"C", report.config.scenes_per_day},
                    {"M", report.config.num_clusters},
                    {"R", report.config.repetitions},
                    {"base_seed", report.config.base_seed},
                    {"senti_lo", report.config.senti_lo},
                    {"senti_hi", report.config.senti_hi},
                    {"variance_denominator", to_string(report.config.variance_denominator)}}},
      {"dates", report.dates},
      {"methods", methods_array}};
}

std::string report_to_markdown(const ExperimentReport& report) {
  std::string md = "| Method |";
  for (const std::string& date : report.dates) md += " " + date + " |";
  md += " Variance |\n|---|";
  for (std::size_t i = 0; i < report.dates.size(); ++i) md += "---|";
  md += "---|\n";
  for (const MethodDateStats& stats : report.methods) {
    md += "| " + display_name(stats.method) + " |";
    for (double mean : stats.date_means) md += " " + format_number(mean) + " |";
    md += " " + format_number(stats.cross_date_variance) + " |\n";
  }
  return md;
}

PreferenceCell proportion_ztest(int left_count, int right_count) {
  if (left_count < 0 || right_count < 0)
    throw DataError("proportion_ztest: counts must be non-negative");
  const int n = left_count + right_count;
  if (n < 1) throw DataError("proportion_ztest: empty cell (0, 0)");
  PreferenceCell cell;
  cell.left_count = left_count;
  cell.right_count = right_count;
  const double half_n = static_cast<double>(n) / 2.0;
  cell.z = (static_cast<double>(left_count) - half_n) /
           (std::sqrt(static_cast<double>(n)) / 2.0);
  cell.significant_two_sided_05 = std::abs(cell.z) > kZTwoSided05;
  cell.significant_one_sided_05 = cell.z > kZOneSided05;
  return cell;
}

PreferenceReport analyze_preference_table(const nlohmann::ordered_json& fixture) {
  if (!fixture.is_object() || !fixture.contains("rows") || !fixture["rows"].is_object())
    throw DataError("preference fixture must be an object with a 'rows' object");
  if (fixture["rows"].empty()) throw UsageError("preference fixture has no rows");

  PreferenceReport report;
  for (const auto& [method, cells] : fixture["rows"].items()) {
    if (!cells.is_array() || cells.empty())
      throw DataError("preference row '" + method + "' must be a non-empty array");
    PreferenceRow row;
    row.method = method;
    int left_majority = 0;
    int right_majority = 0;
    for (const auto& cell : cells) {
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer() ||
          !cell[1].is_number_integer())
        throw DataError("preference row '" + method + "' cells must be [left, right] integers");
      PreferenceCellResult result;
      try {
        result.cell = proportion_ztest(cell[0].get<int>(), cell[1].get<int>());
        if (result.cell->left_count > result.cell->right_count) ++left_majority;
        if (result.cell->right_count > result.cell->left_count) ++right_majority;
      } catch (const DataError& e) {
        result.error = e.what();
      }
      row.cells.push_back(std::move(result));
    }
    row.majority = left_majority > right_majority
                       ? "left"
                       : (right_majority > left_majority ? "right" : "tie");
    report.rows.push_back(std::move(row));
  }
  return report;
}

PreferenceReport load_preference_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open preference fixture: " + path.string());
  ordered_json fixture;
  try {
    in >> fixture;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("malformed preference fixture " + path.string() + ": " + e.what());
  }
  return analyze_preference_table(fixture);
}

nlohmann::ordered_json preference_report_to_json(const PreferenceReport& report) {
  ordered_json rows = ordered_json::array();
  for (const PreferenceRow& row : report.rows) {
    ordered_json cells = ordered_json::array();
    for (const PreferenceCellResult& result : row.cells) {
      if (result.cell) {
        cells.push_back(ordered_json{
            {"left", result.cell->left_count},
            {"right", result.cell->right_count},
            {"z", result.cell->z},
            {"significant_two_sided_05", result.cell->significant_two_sided_05},
            {"significant_one_sided_05", result.cell->significant_one_sided_05}});
      } else {
        cells.push_back(ordered_json{{"error", result.error}});
      }
    }
    rows.push_back(ordered_json{{"method", row.method},
                                {"majority", row.majority},
                                {"cells", std::move(cells)}});
  }
  return ordered_json{{"rows", std::move(rows)}};
}

std::string preference_report_to_markdown(const PreferenceReport& report) {
  std::size_t columns = 0;
  for (const PreferenceRow& row : report.rows)
    columns = std::max(columns, row.cells.size());

  std::string md = "| Method |";
  for (std::size_t i = 1; i <= columns; ++i) md += " " + std::to_string(i) + " |";
  md += " Majority |\n|---|";
  for (std::size_t i = 0; i < columns; ++i) md += "---|";
  md += "---|\n";
  for (const PreferenceRow& row : report.rows) {
    md += "| " + row.method + " |";
    for (std::size_t i = 0; i < columns; ++i) {
      if (i >= row.cells.size()) {
        md += "  |";
        continue;
      }
      const PreferenceCellResult& result = row.cells[i];
      if (!result.cell) {
        md += " invalid |";
        continue;
      }
      const PreferenceCell& cell = *result.cell;
      std::string mark = cell.significant_two_sided_05
                             ? "**"
                             : (cell.significant_one_sided_05 ? "*" : "");
      md += " " + std::to_string(cell.left_count) + ", " +
            std::to_string(cell.right_count) + " (z=" + format_number(cell.z) + mark +
            ") |";
    }
    md += " " + row.majority + " |\n";
  }
  return md;
}

}  // namespace episodia
