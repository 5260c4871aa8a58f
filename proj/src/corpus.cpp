// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/corpus.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "episodia/errors.hpp"

namespace episodia {

namespace {

using nlohmann::ordered_json;

bool embedding_equal(const std::optional<Embedding>& a, const std::optional<Embedding>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->size() == b->size() && (a->array() == b->array()).all();
}

bool valid_date_label(const std::string& date) {
  if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
  for (std::size_t i = 0; i < date.size(); ++i) {
    if (i == 4 || i == 7) continue;
    if (!std::isdigit(static_cast<unsigned char>(date[i]))) return false;
  }
  return true;
}

Embedding embedding_from_json(const ordered_json& arr, const std::string& field,
                              const std::string& where) {
  if (!arr.is_array() || arr.empty())
    throw DataError(where + ": " + field + " must be a non-empty array of numbers");
  Embedding v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& x : arr) {
    if (!x.is_number())
      throw DataError(where + ": " + field + " must contain only numbers");
    v[i++] = x.get<double>();
  }
  return v;
}

SceneRecord record_from_json(const ordered_json& j, const std::string& where) {
  static const std::unordered_set<std::string> known = {
      "scene_id",        "date",
      "timestamp",       "image_ref",
      "caption",         "affective_caption",
      "caption_embedding", "affective_embedding"};
  if (!j.is_object()) throw DataError(where + ": record must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw DataError(where + ": unknown field '" + key + "'");
  }

  SceneRecord r;
  if (!j.contains("scene_id") || !j["scene_id"].is_string())
    throw DataError(where + ": scene_id must be a string");
  r.scene_id = j["scene_id"].get<std::string>();
  if (r.scene_id.empty()) throw DataError(where + ": scene_id must be non-empty");

  if (!j.contains("date") || !j["date"].is_string())
    throw DataError(where + ": date must be a string");
  r.date = j["date"].get<std::string>();
  if (!valid_date_label(r.date))
    throw DataError(where + ": date must be formatted YYYY-MM-DD, got '" + r.date + "'");

  if (!j.contains("timestamp") || !j["timestamp"].is_number())
    throw DataError(where + ": timestamp must be a number");
  r.timestamp = j["timestamp"].get<double>();

  auto get_opt_string = [&](const char* field) -> std::optional<std::string> {
    if (!j.contains(field) || j[field].is_null()) return std::nullopt;
    if (!j[field].is_string())
      throw DataError(where + ": " + field + " must be a string or null");
    return j[field].get<std::string>();
  };
  r.image_ref = get_opt_string("image_ref");
  r.caption = get_opt_string("caption");
  r.affective_caption = get_opt_string("affective_caption");

  auto get_opt_embedding = [&](const char* field) -> std::optional<Embedding> {
    if (!j.contains(field) || j[field].is_null()) return std::nullopt;
    return embedding_from_json(j[field], field, where);
  };
  r.caption_embedding = get_opt_embedding("caption_embedding");
  r.affective_embedding = get_opt_embedding("affective_embedding");
  return r;
}

void check_embedding(const std::optional<Embedding>& e, const char* field,
                     const std::string& scene_id, int& dim) {
  if (!e) return;
  if (!e->allFinite())
    throw DataError("scene '" + scene_id + "': " + field + " has non-finite values");
  if (e->squaredNorm() == 0.0)
    throw DataError("scene '" + scene_id + "': " + field + " is the zero vector");
  const int n = static_cast<int>(e->size());
  if (dim == 0) {
    dim = n;
  } else if (n != dim) {
    throw DataError("scene '" + scene_id + "': " + field + " has dimension " +
                    std::to_string(n) + ", corpus uses " + std::to_string(dim));
  }
}

ordered_json embedding_to_json(const std::optional<Embedding>& e) {
  if (!e) return nullptr;
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < e->size(); ++i) arr.push_back((*e)[i]);
  return arr;
}

}  // namespace

bool operator==(const SceneRecord& a, const SceneRecord& b) {
  return a.scene_id == b.scene_id && a.date == b.date && a.timestamp == b.timestamp &&
         a.image_ref == b.image_ref && a.caption == b.caption &&
         a.affective_caption == b.affective_caption &&
         embedding_equal(a.caption_embedding, b.caption_embedding) &&
         embedding_equal(a.affective_embedding, b.affective_embedding);
}

bool operator==(const WalkCorpus& a, const WalkCorpus& b) {
  return a.embedding_dim == b.embedding_dim && a.days == b.days;
}

WalkCorpus corpus_from_records(std::vector<SceneRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const SceneRecord& a, const SceneRecord& b) {
                     if (a.date != b.date) return a.date < b.date;
                     return a.timestamp < b.timestamp;
                   });

  WalkCorpus corpus;
  std::unordered_set<std::string> seen_ids;
  for (auto& r : records) {
    if (!seen_ids.insert(r.scene_id).second)
      throw DataError("duplicate scene_id '" + r.scene_id + "'");
    check_embedding(r.caption_embedding, "caption_embedding", r.scene_id,
                    corpus.embedding_dim);
    check_embedding(r.affective_embedding, "affective_embedding", r.scene_id,
                    corpus.embedding_dim);
    auto& day = corpus.days[r.date];
    if (!day.empty() && !(day.back().timestamp < r.timestamp))
      throw DataError("scene '" + r.scene_id + "': timestamp " +
                      std::to_string(r.timestamp) + " does not increase within date " +
                      r.date);
    day.push_back(std::move(r));
  }
  return corpus;
}

WalkCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());

  std::vector<SceneRecord> records;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(where + ": JSON parse error: " + e.what());
    }
    records.push_back(record_from_json(j, where));
  }
  return corpus_from_records(std::move(records));
}

std::string to_jsonl_line(const SceneRecord& r) {
  ordered_json j;
  j["scene_id"] = r.scene_id;
  j["date"] = r.date;
  j["timestamp"] = r.timestamp;
  j["image_ref"] = r.image_ref ? ordered_json(*r.image_ref) : ordered_json(nullptr);
  j["caption"] = r.caption ? ordered_json(*r.caption) : ordered_json(nullptr);
  j["affective_caption"] =
      r.affective_caption ? ordered_json(*r.affective_caption) : ordered_json(nullptr);
  j["caption_embedding"] = embedding_to_json(r.caption_embedding);
  j["affective_embedding"] = embedding_to_json(r.affective_embedding);
  return j.dump();
}

void save_corpus(const WalkCorpus& corpus, const std::filesystem::path& path) {
  const std::filesystem::path tmp =
      path.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw DataError("cannot write corpus file: " + tmp.string());
    for (const auto& [date, scenes] : corpus.days)
      for (const auto& r : scenes) out << to_jsonl_line(r) << '\n';
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw DataError("failed writing corpus file: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

const std::vector<SceneRecord>& day_scenes(const WalkCorpus& corpus,
                                           const std::string& date) {
  auto it = corpus.days.find(date);
  if (it == corpus.days.end()) throw DataError("unknown date: " + date);
  return it->second;
}

}  // namespace episodia
