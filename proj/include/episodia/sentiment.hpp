// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace episodia {

/// One SentiWordNet synset: positive/negative scores in [0,1] shared by all
/// lemma#sense terms of the synset.
struct SentiSynsetEntry {
  char pos_tag = 'a';  // a | n | v | r
  std::string synset_id;
  double pos_score = 0.0;
  double neg_score = 0.0;
  std::vector<std::pair<std::string, int>> lemmas;  // (lemma, sense rank)
  std::string gloss;
};

struct SentiLexicon {
  std::vector<SentiSynsetEntry> entries;
  std::unordered_map<std::string, std::vector<int>> index;  // lemma -> entries
};

/// Sentiment of one affective caption: mean of (pos - neg) over every
/// (token, synset) match; 0 when nothing matches.
struct CaptionScore {
  double value = 0.0;      // in [-1, 1]
  int matched_count = 0;   // number of (token, synset) matches
  std::vector<std::pair<std::string, int>> matched;  // (token, entry index)
};

/// A day's emotion summary: the raw mean of caption scores and its affine
/// image on the 0..100 scale, clamped at both ends.
struct SentiPoint {
  double raw = 0.0;
  double normalized = 0.0;  // in [0, 100]
  double lo = -1.0;
  double hi = 1.0;
};

/// Parses the public SentiWordNet 3.0 TSV layout:
///   POS<TAB>ID<TAB>PosScore<TAB>NegScore<TAB>SynsetTerms<TAB>Gloss
/// SynsetTerms is space-separated lemma#rank; '#'-prefixed lines are
/// comments. Malformed lines are reported with their line number.
SentiLexicon parse_sentiwordnet(const std::filesystem::path& path);

/// Canonical TSV line for one entry; parsing then re-serializing a valid
/// file reproduces its non-comment lines byte for byte.
std::string to_sentiwordnet_line(const SentiSynsetEntry& entry);

/// Lowercases and splits on every non-alphanumeric byte, dropping empties.
std::vector<std::string> tokenize(const std::string& text);

CaptionScore score_caption(const SentiLexicon& lexicon, const std::string& text);

/// Mean caption score over the scenes chosen for a day. Errors on empty input.
double raw_senti_point(std::span<const CaptionScore> scores);

/// clamp(100 * (raw - lo) / (hi - lo), 0, 100). Requires lo < hi.
SentiPoint normalize_senti(double raw, double lo, double hi);

}  // namespace episodia
