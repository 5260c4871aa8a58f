// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "episodia/corpus.hpp"
#include "episodia/selection.hpp"
#include "episodia/sentiment.hpp"

namespace episodia {

enum class VarianceDenominator { Population, Sample };

std::string to_string(VarianceDenominator d);
VarianceDenominator variance_denominator_from_string(const std::string& name);

struct ExperimentConfig {
  std::vector<SelectionMethod> methods{
      SelectionMethod::All,        SelectionMethod::Random,
      SelectionMethod::Interval,   SelectionMethod::ClusterCap,
      SelectionMethod::ClusterEmo, SelectionMethod::ClusterCapEmo};
  int scenes_per_day = 6;  // selection size per date
  int num_clusters = 8;
  int repetitions = 1000;
  std::uint64_t base_seed = 0;
  double senti_lo = -1.0;
  double senti_hi = 1.0;
  VarianceDenominator variance_denominator = VarianceDenominator::Population;
};

/// Per-method results across the corpus dates. Deterministic methods (All,
/// Interval) have zero spread by construction.
struct MethodDateStats {
  SelectionMethod method = SelectionMethod::All;
  std::vector<double> date_means;    // mean raw senti point over repetitions
  std::vector<double> date_spreads;  // population stddev across repetitions
  double cross_date_variance = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> dates;
  std::vector<MethodDateStats> methods;
};

/// For each requested method and date: select scenes with seed base_seed + r
/// for r in [0, repetitions), score the selected affective captions, average
/// the per-repetition raw senti points, then take the cross-date variance of
/// those means. All and Interval collapse to a single repetition.
ExperimentReport run_senti_experiment(const WalkCorpus& corpus,
                                      const SentiLexicon& lexicon,
                                      const ExperimentConfig& config);

double cross_date_variance(std::span<const double> means, VarianceDenominator d);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);
std::string report_to_markdown(const ExperimentReport& report);

// Preference-table analysis: one-sample proportion z-test against 0.5 on
// paired "which diary did you prefer" counts.

inline constexpr double kZTwoSided05 = 1.959964;
inline constexpr double kZOneSided05 = 1.644854;

struct PreferenceCell {
  int left_count = 0;
  int right_count = 0;
  double z = 0.0;  // positive iff left_count > right_count
  bool significant_two_sided_05 = false;
  bool significant_one_sided_05 = false;
};

/// z = (left - n/2) / (sqrt(n)/2) with n = left + right. Requires n >= 1.
PreferenceCell proportion_ztest(int left_count, int right_count);

struct PreferenceCellResult {
  std::optional<PreferenceCell> cell;  // empty when the cell was invalid
  std::string error;
};

struct PreferenceRow {
  std::string method;  // display label from the fixture, kept verbatim
  std::vector<PreferenceCellResult> cells;
  std::string majority;  // "left" | "right" | "tie" over the row's cells
};

struct PreferenceReport {
  std::vector<PreferenceRow> rows;
};

/// Fixture shape: {"rows": {"Random": [[32,3], ...], ...}}, row order kept.
/// Invalid cells are reported in place so the rest of the table still
/// renders; structurally malformed fixtures throw.
PreferenceReport analyze_preference_table(const nlohmann::ordered_json& fixture);
PreferenceReport load_preference_fixture(const std::filesystem::path& path);

nlohmann::ordered_json preference_report_to_json(const PreferenceReport& report);
std::string preference_report_to_markdown(const PreferenceReport& report);

}  // namespace episodia
