// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "episodia/errors.hpp"

namespace episodia {

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_int(const std::string& s, int& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// Shortest decimal that round-trips; "0" and "0.125" stay as written.
std::string format_score(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::vector<std::string> split(const std::string& s, char sep, std::size_t max_fields) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (fields.size() + 1 < max_fields) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) break;
    fields.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  fields.push_back(s.substr(start));
  return fields;
}

SentiSynsetEntry parse_entry(const std::string& line, const std::string& where) {
  const std::vector<std::string> cols = split(line, '\t', 6);
  if (cols.size() != 6)
    throw DataError(where + ": expected 6 tab-separated columns, got " +
                    std::to_string(cols.size()));

  SentiSynsetEntry entry;
  if (cols[0].size() != 1 || std::string("anvr").find(cols[0][0]) == std::string::npos)
    throw DataError(where + ": POS tag must be one of a/n/v/r, got '" + cols[0] + "'");
  entry.pos_tag = cols[0][0];

  if (cols[1].size() != 8 ||
      !std::all_of(cols[1].begin(), cols[1].end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw DataError(where + ": synset id must be an 8-digit string, got '" + cols[1] + "'");
  entry.synset_id = cols[1];

  if (!parse_double(cols[2], entry.pos_score) || !parse_double(cols[3], entry.neg_score))
    throw DataError(where + ": unparsable scores '" + cols[2] + "' / '" + cols[3] + "'");
  if (entry.pos_score < 0.0 || entry.pos_score > 1.0 || entry.neg_score < 0.0 ||
      entry.neg_score > 1.0)
    throw DataError(where + ": scores must lie in [0, 1]");

  for (const std::string& term : split(cols[4], ' ', std::string::npos)) {
    if (term.empty()) continue;
    const std::size_t hash = term.rfind('#');
    int rank = 0;
    if (hash == std::string::npos || hash == 0 ||
        !parse_int(term.substr(hash + 1), rank) || rank < 1)
      throw DataError(where + ": synset term must be 'lemma#rank', got '" + term + "'");
    std::string lemma = term.substr(0, hash);
    std::transform(lemma.begin(), lemma.end(), lemma.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    entry.lemmas.emplace_back(std::move(lemma), rank);
  }
  if (entry.lemmas.empty()) throw DataError(where + ": no synset terms");

  entry.gloss = cols[5];
  return entry;
}

}  // namespace

SentiLexicon parse_sentiwordnet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon file: " + path.string());

  SentiLexicon lexicon;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    SentiSynsetEntry entry = parse_entry(line, where);
    const int idx = static_cast<int>(lexicon.entries.size());
    for (const auto& [lemma, rank] : entry.lemmas) lexicon.index[lemma].push_back(idx);
    lexicon.entries.push_back(std::move(entry));
  }
  return lexicon;
}

std::string to_sentiwordnet_line(const SentiSynsetEntry& entry) {
  std::string terms;
  for (const auto& [lemma, rank] : entry.lemmas) {
    if (!terms.empty()) terms += ' ';
    terms += lemma + "#" + std::to_string(rank);
  }
  std::string line;
  line += entry.pos_tag;
  line += '\t';
  line += entry.synset_id + '\t' + format_score(entry.pos_score) + '\t' +
          format_score(entry.neg_score) + '\t' + terms + '\t' + entry.gloss;
  return line;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

CaptionScore score_caption(const SentiLexicon& lexicon, const std::string& text) {
  CaptionScore score;
  double sum = 0.0;
  for (const std::string& token : tokenize(text)) {
    const auto it = lexicon.index.find(token);
    if (it == lexicon.index.end()) continue;
    for (int idx : it->second) {
      const SentiSynsetEntry& entry = lexicon.entries[idx];
      sum += entry.pos_score - entry.neg_score;
      score.matched.emplace_back(token, idx);
    }
  }
  score.matched_count = static_cast<int>(score.matched.size());
  score.value = score.matched_count > 0 ? sum / score.matched_count : 0.0;
  return score;
}

double raw_senti_point(std::span<const CaptionScore> scores) {
  if (scores.empty()) throw DataError("raw_senti_point: no caption scores");
  double sum = 0.0;
  for (const CaptionScore& s : scores) sum += s.value;
  return sum / static_cast<double>(scores.size());
}

SentiPoint normalize_senti(double raw, double lo, double hi) {
  if (!(lo < hi))
    throw UsageError("normalize_senti: bounds must satisfy lo < hi");
  SentiPoint point;
  point.raw = raw;
  point.lo = lo;
  point.hi = hi;
  point.normalized = std::clamp(100.0 * (raw - lo) / (hi - lo), 0.0, 100.0);
  return point;
}

}  // namespace episodia
