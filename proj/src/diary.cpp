// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/diary.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "episodia/errors.hpp"

namespace episodia {

namespace {

using nlohmann::ordered_json;

void require_clean_text(const std::string& text, const char* field,
                        const std::string& scene_id) {
  if (text.find('\n') != std::string::npos)
    throw DataError("scene '" + scene_id + "': " + field + " must not contain newlines");
}

}  // namespace

std::string to_string(DiaryVariant variant) {
  switch (variant) {
    case DiaryVariant::Cap: return "cap";
    case DiaryVariant::Senti: return "senti";
    case DiaryVariant::Emo: return "emo";
  }
  throw UsageError("unknown diary variant enum value");
}

DiaryVariant diary_variant_from_string(const std::string& name) {
  if (name == "cap") return DiaryVariant::Cap;
  if (name == "senti") return DiaryVariant::Senti;
  if (name == "emo") return DiaryVariant::Emo;
  throw UsageError("unknown diary variant: '" + name + "' (expected cap|senti|emo)");
}

std::string render_clock_time(double timestamp) {
  if (!std::isfinite(timestamp)) throw DataError("render_clock_time: non-finite timestamp");
  const auto secs = static_cast<long long>(std::floor(timestamp));
  const long long day_secs = ((secs % 86400) + 86400) % 86400;
  char buf[6];
  std::snprintf(buf, sizeof(buf), "%02lld:%02lld", day_secs / 3600, (day_secs % 3600) / 60);
  return std::string(buf);
}

std::string build_prompt(DiaryVariant variant, std::span<const SceneRecord> scenes,
                         const std::optional<SentiPoint>& senti) {
  if (scenes.empty()) throw DataError("build_prompt: no scenes selected");
  if (senti.has_value() != (variant != DiaryVariant::Cap))
    throw DataError(senti ? "build_prompt: the cap variant takes no senti point"
                          : "build_prompt: variant '" + to_string(variant) +
                                "' requires a senti point");
  for (std::size_t i = 1; i < scenes.size(); ++i) {
    if (!(scenes[i - 1].timestamp < scenes[i].timestamp))
      throw DataError("build_prompt: scenes must be chronological ('" +
                      scenes[i].scene_id + "' is out of order)");
  }

  std::string prompt =
      "You are a robot writing a first-person diary entry for " + scenes.front().date + ".";
  for (const SceneRecord& scene : scenes) {
    if (!scene.caption)
      throw DataError("scene '" + scene.scene_id + "': caption missing");
    require_clean_text(*scene.caption, "caption", scene.scene_id);
    prompt += '\n' + render_clock_time(scene.timestamp) + " | " + *scene.caption;
    if (variant == DiaryVariant::Emo) {
      if (!scene.affective_caption)
        throw DataError("scene '" + scene.scene_id + "': affective caption missing");
      require_clean_text(*scene.affective_caption, "affective_caption", scene.scene_id);
      prompt += " | " + *scene.affective_caption;
    }
  }
  if (senti) {
    prompt += "\nSenti Point: " + std::to_string(std::llround(senti->normalized)) +
              "/100 (0 = very negative day, 100 = very positive day)";
  }
  prompt += variant == DiaryVariant::Emo
                ? "\nWrite a short diary entry narrating these moments in order, "
                  "prioritizing the stated feelings."
                : "\nWrite a short diary entry narrating these moments in order.";
  return prompt;
}

DiaryDocument generate_diary(Generator& generator, DiaryVariant variant,
                             std::span<const SceneRecord> scenes,
                             const std::optional<SentiPoint>& senti,
                             const GenerationParams& params,
                             DiaryProvenance provenance) {
  DiaryDocument doc;
  doc.variant = variant;
  doc.prompt = build_prompt(variant, scenes, senti);
  doc.date = scenes.front().date;
  doc.senti_point = senti;
  for (const SceneRecord& scene : scenes) doc.scene_ids.push_back(scene.scene_id);

  GenerationRequest request;
  request.prompt = doc.prompt;
  request.max_tokens = params.max_tokens;
  request.temperature = params.temperature;
  request.seed = params.seed;
  doc.body = generator.generate_text(request);
  if (doc.body.empty()) throw ClientError("generator returned an empty diary body");

  provenance.max_tokens = params.max_tokens;
  provenance.temperature = params.temperature;
  provenance.generator_model = generator.model_name();
  doc.provenance = provenance;
  return doc;
}

nlohmann::ordered_json diary_to_json(const DiaryDocument& doc) {
  ordered_json j;
  j["date"] = doc.date;
  j["variant"] = to_string(doc.variant);
  j["prompt"] = doc.prompt;
  j["body"] = doc.body;
  if (doc.senti_point) {
    j["senti_point"] = ordered_json{{"raw", doc.senti_point->raw},
                                    {"normalized", doc.senti_point->normalized},
                                    {"bounds", {doc.senti_point->lo, doc.senti_point->hi}}};
  } else {
    j["senti_point"] = nullptr;
  }
  j["scene_ids"] = doc.scene_ids;
  j["provenance"] = ordered_json{{"method", to_string(doc.provenance.method)},
                                 {"seed", doc.provenance.seed},
                                 {"M", doc.provenance.num_clusters},
                                 {"C", doc.provenance.scenes_per_day},
                                 {"max_tokens", doc.provenance.max_tokens},
                                 {"temperature", doc.provenance.temperature},
                                 {"generator_model", doc.provenance.generator_model}};
  return j;
}

void save_diary(const DiaryDocument& doc, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw DataError("cannot write diary file: " + tmp.string());
    out << diary_to_json(doc).dump(2) << '\n';
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw DataError("failed writing diary file: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace episodia
