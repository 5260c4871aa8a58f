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
#include "episodia/model_clients.hpp"
#include "episodia/selection.hpp"
#include "episodia/sentiment.hpp"

namespace episodia {

/// The three diary flavors: captions only; captions plus the day's Senti
/// Point; captions plus per-scene affective captions (feelings prioritized).
enum class DiaryVariant { Cap, Senti, Emo };

std::string to_string(DiaryVariant variant);
DiaryVariant diary_variant_from_string(const std::string& name);

struct GenerationParams {
  int max_tokens = 256;
  double temperature = 0.7;
  std::optional<std::int64_t> seed;
};

struct DiaryProvenance {
  SelectionMethod method = SelectionMethod::Random;
  std::uint64_t seed = 0;
  int num_clusters = 0;    // 0 for non-cluster methods
  int scenes_per_day = 0;  // requested selection size
  int max_tokens = 0;
  double temperature = 0.0;
  std::string generator_model;
};

struct DiaryDocument {
  std::string date;
  DiaryVariant variant = DiaryVariant::Cap;
  std::string prompt;
  std::string body;
  std::optional<SentiPoint> senti_point;  // absent for the cap variant
  std::vector<std::string> scene_ids;     // chronological
  DiaryProvenance provenance;
};

/// "HH:MM" day-clock rendering of a seconds-since-epoch timestamp (UTC, so
/// output is identical on every machine).
std::string render_clock_time(double timestamp);

/// Deterministic prompt assembly. Fixed template, one scene line per scene:
///   header: You are a robot writing a first-person diary entry for {date}.
///   cap:    {HH:MM} | {caption}
///   emo:    {HH:MM} | {caption} | {affective_caption}
///   senti/emo: Senti Point: {S'}/100 (0 = very negative day, 100 = very positive day)
///   footer (cap/senti): Write a short diary entry narrating these moments in order.
///   footer (emo): ... narrating these moments in order, prioritizing the stated feelings.
/// senti must be present exactly when variant is not Cap; the emo variant
/// requires an affective caption on every scene.
std::string build_prompt(DiaryVariant variant, std::span<const SceneRecord> scenes,
                         const std::optional<SentiPoint>& senti);

/// build_prompt + one generator call, with full provenance recorded.
DiaryDocument generate_diary(Generator& generator, DiaryVariant variant,
                             std::span<const SceneRecord> scenes,
                             const std::optional<SentiPoint>& senti,
                             const GenerationParams& params,
                             DiaryProvenance provenance);

nlohmann::ordered_json diary_to_json(const DiaryDocument& doc);

/// Atomic write (temp file + rename) of the diary JSON document.
void save_diary(const DiaryDocument& doc, const std::filesystem::path& path);

}  // namespace episodia
