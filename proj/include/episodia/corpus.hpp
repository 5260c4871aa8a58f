// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace episodia {

using Embedding = Eigen::VectorXd;

/// One captured moment of a walk: a timestamped image reference plus the
/// texts and vectors derived from it. Captions and embeddings are optional
/// at load time; each downstream stage declares what it needs and fails
/// fast with the offending scene_id.
struct SceneRecord {
  std::string scene_id;
  std::string date;        // "YYYY-MM-DD"
  double timestamp = 0.0;  // seconds since epoch; clock time renders as UTC
  std::optional<std::string> image_ref;
  std::optional<std::string> caption;
  std::optional<std::string> affective_caption;
  std::optional<Embedding> caption_embedding;
  std::optional<Embedding> affective_embedding;
};

/// Scene records grouped by date, timestamp-ordered within each date.
/// Immutable after construction; safe to share across threads.
struct WalkCorpus {
  int embedding_dim = 0;  // 0 until any record carries an embedding
  std::map<std::string, std::vector<SceneRecord>> days;

  std::size_t total_scenes() const {
    std::size_t n = 0;
    for (const auto& [date, scenes] : days) n += scenes.size();
    return n;
  }
};

bool operator==(const SceneRecord& a, const SceneRecord& b);
bool operator==(const WalkCorpus& a, const WalkCorpus& b);

/// Validates and groups records: sorts by (date, timestamp), rejects
/// duplicate scene ids, tied timestamps within a date, and zero/non-finite
/// or dimension-mismatched embeddings.
WalkCorpus corpus_from_records(std::vector<SceneRecord> records);

/// Reads a line-delimited JSON corpus. Parse and validation errors carry
/// the 1-based line number.
WalkCorpus load_corpus(const std::filesystem::path& path);

/// Writes the corpus in canonical JSONL form (temp file + rename).
void save_corpus(const WalkCorpus& corpus, const std::filesystem::path& path);

/// The date's records in timestamp order; throws DataError for unknown dates.
const std::vector<SceneRecord>& day_scenes(const WalkCorpus& corpus,
                                           const std::string& date);

/// Canonical single-line JSON for one record (schema field order, explicit
/// nulls). save_corpus emits exactly these lines.
std::string to_jsonl_line(const SceneRecord& record);

}  // namespace episodia
