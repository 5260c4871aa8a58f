// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/commands.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "episodia/clustering.hpp"
#include "episodia/errors.hpp"

namespace episodia {

namespace {

using nlohmann::ordered_json;

WalkCorpus load_required_corpus(const PipelineConfig& config) {
  if (config.corpus_path.empty())
    throw UsageError("a corpus path is required (config key 'corpus' or --corpus)");
  return load_corpus(config.corpus_path);
}

SentiLexicon load_required_lexicon(const PipelineConfig& config) {
  if (config.lexicon_path.empty())
    throw UsageError("a lexicon path is required (config key 'lexicon' or --lexicon)");
  return parse_sentiwordnet(config.lexicon_path);
}

std::vector<Embedding> day_embeddings(const std::vector<SceneRecord>& scenes,
                                      bool caption_side) {
  std::vector<Embedding> points;
  points.reserve(scenes.size());
  for (const SceneRecord& scene : scenes) {
    const auto& embedding =
        caption_side ? scene.caption_embedding : scene.affective_embedding;
    if (!embedding)
      throw DataError("scene '" + scene.scene_id + "': " +
                      (caption_side ? "caption" : "affective") +
                      " embedding required; run `episodia annotate` first");
    points.push_back(*embedding);
  }
  return points;
}

SelectionDistribution method_distribution(const PipelineConfig& config,
                                          const std::vector<SceneRecord>& scenes,
                                          const std::string& date,
                                          SelectionMethod method) {
  const int m = config.experiment.num_clusters;
  const std::uint64_t seed = config.experiment.base_seed;
  switch (method) {
    case SelectionMethod::ClusterCap:
      return probs_from_clusters(kmedoids(day_embeddings(scenes, true), m, seed),
                                 SelectionMethod::ClusterCap, date);
    case SelectionMethod::ClusterEmo:
      return probs_from_clusters(kmedoids(day_embeddings(scenes, false), m, seed),
                                 SelectionMethod::ClusterEmo, date);
    case SelectionMethod::ClusterCapEmo:
      return combine_cap_emo(
          method_distribution(config, scenes, date, SelectionMethod::ClusterCap),
          method_distribution(config, scenes, date, SelectionMethod::ClusterEmo));
    case SelectionMethod::Random: {
      SelectionDistribution dist;
      dist.method = SelectionMethod::Random;
      dist.date = date;
      dist.probs = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(scenes.size()),
                                             1.0 / static_cast<double>(scenes.size()));
      return dist;
    }
    default: {  // All / Interval: deterministic indicator, not a distribution
      SelectionDistribution dist;
      dist.method = method;
      dist.date = date;
      dist.probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(scenes.size()));
      const int n = static_cast<int>(scenes.size());
      const std::vector<int> chosen =
          method == SelectionMethod::All
              ? [n] {
                  std::vector<int> all(static_cast<std::size_t>(n));
                  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
                  return all;
                }()
              : interval_select(n, config.experiment.scenes_per_day);
      for (int i : chosen) dist.probs[i] = 1.0;
      return dist;
    }
  }
}

std::vector<int> select_indices(const PipelineConfig& config,
                                const std::vector<SceneRecord>& scenes,
                                const std::string& date, SelectionMethod method,
                                std::uint64_t seed) {
  const int n = static_cast<int>(scenes.size());
  const int c = config.experiment.scenes_per_day;
  switch (method) {
    case SelectionMethod::All: {
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
      return all;
    }
    case SelectionMethod::Interval:
      return interval_select(n, c);
    case SelectionMethod::Random:
      return random_select(n, c, seed);
    default: {
      auto indices = weighted_indices_without_replacement(
          method_distribution(config, scenes, date, method).probs, c, seed);
      std::sort(indices.begin(), indices.end());
      return indices;
    }
  }
}

}  // namespace

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw DataError("failed writing file: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

OutputDirLock::OutputDirLock(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  lock_path_ = dir / ".episodia.lock";
  const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    lock_path_.clear();
    throw UsageError("output directory " + dir.string() +
                     " is locked by another episodia command (remove " +
                     (dir / ".episodia.lock").string() + " if that command died)");
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  (void)!::write(fd, pid.data(), pid.size());
  ::close(fd);
}

OutputDirLock::~OutputDirLock() {
  if (!lock_path_.empty()) ::unlink(lock_path_.c_str());
}

int cmd_annotate(const PipelineConfig& config, std::ostream& out) {
  const WalkCorpus corpus = load_required_corpus(config);
  const ModelClients clients = make_clients(config);
  const int dim = corpus.embedding_dim > 0 ? corpus.embedding_dim : config.embed_dim;

  std::vector<SceneRecord> records;
  records.reserve(corpus.total_scenes());
  for (const auto& [date, scenes] : corpus.days) {
    for (const SceneRecord& scene : scenes) {
      SceneRecord r = scene;
      try {
        if (!r.caption) {
          if (!r.image_ref)
            throw DataError("cannot caption a scene without an image_ref");
          r.caption = clients.captioner->caption_image(*r.image_ref, false);
        }
        if (!r.affective_caption) {
          if (!r.image_ref)
            throw DataError("cannot caption a scene without an image_ref");
          r.affective_caption = clients.captioner->caption_image(*r.image_ref, true);
        }
        if (!r.caption_embedding)
          r.caption_embedding = clients.embedder->embed_text(*r.caption, dim);
        if (!r.affective_embedding)
          r.affective_embedding = clients.embedder->embed_text(*r.affective_caption, dim);
      } catch (const ClientError& e) {
        throw ClientError("scene '" + r.scene_id + "': " + e.what());
      } catch (const DataError& e) {
        throw DataError("scene '" + r.scene_id + "': " + e.what());
      }
      records.push_back(std::move(r));
    }
  }

  const WalkCorpus annotated = corpus_from_records(std::move(records));
  OutputDirLock lock(config.out_dir);
  const std::filesystem::path out_path =
      config.out_dir / (config.corpus_path.stem().string() + ".annotated.jsonl");
  std::string payload;
  for (const auto& [date, scenes] : annotated.days)
    for (const SceneRecord& r : scenes) payload += to_jsonl_line(r) + "\n";
  atomic_write_file(out_path, payload);
  out << out_path.string() << "\n";
  return 0;
}

int cmd_cluster(const PipelineConfig& config, const std::string& date,
                const std::string& embedding_kind, std::ostream& out) {
  if (embedding_kind != "cap" && embedding_kind != "emo")
    throw UsageError("cluster: embedding kind must be cap or emo");
  const WalkCorpus corpus = load_required_corpus(config);
  const auto& scenes = day_scenes(corpus, date);
  const ClusterAssignment assignment =
      kmedoids(day_embeddings(scenes, embedding_kind == "cap"),
               config.experiment.num_clusters, config.experiment.base_seed);

  ordered_json medoid_ids = ordered_json::array();
  for (int m : assignment.medoids) medoid_ids.push_back(scenes[m].scene_id);
  out << ordered_json{{"date", date},
                      {"embedding", embedding_kind},
                      {"M", assignment.num_clusters},
                      {"medoid_scene_ids", std::move(medoid_ids)},
                      {"labels", assignment.labels},
                      {"sizes", assignment.sizes},
                      {"objective", assignment.objective}}
             .dump(2)
      << "\n";
  return 0;
}

int cmd_select(const PipelineConfig& config, const std::string& date,
               SelectionMethod method, std::ostream& out) {
  const WalkCorpus corpus = load_required_corpus(config);
  const auto& scenes = day_scenes(corpus, date);
  const SelectionDistribution dist = method_distribution(config, scenes, date, method);
  const std::vector<int> indices =
      select_indices(config, scenes, date, method, config.experiment.base_seed);

  ordered_json ids = ordered_json::array();
  for (int i : indices) ids.push_back(scenes[static_cast<std::size_t>(i)].scene_id);
  std::vector<double> probs(dist.probs.data(), dist.probs.data() + dist.probs.size());
  out << ordered_json{{"date", date},
                      {"method", to_string(method)},
                      {"seed", config.experiment.base_seed},
                      {"probs", probs},
                      {"selected_scene_ids", std::move(ids)}}
             .dump(2)
      << "\n";
  return 0;
}

int cmd_score(const PipelineConfig& config, const std::string& date, std::ostream& out) {
  const WalkCorpus corpus = load_required_corpus(config);
  const SentiLexicon lexicon = load_required_lexicon(config);
  const auto& scenes = day_scenes(corpus, date);

  std::vector<CaptionScore> scores;
  ordered_json per_scene = ordered_json::array();
  for (const SceneRecord& scene : scenes) {
    if (!scene.affective_caption)
      throw DataError("scene '" + scene.scene_id + "': affective caption required");
    CaptionScore score = score_caption(lexicon, *scene.affective_caption);
    per_scene.push_back(ordered_json{{"scene_id", scene.scene_id},
                                     {"K", score.matched_count},
                                     {"s", score.value}});
    scores.push_back(std::move(score));
  }
  const double raw = raw_senti_point(scores);
  const SentiPoint senti =
      normalize_senti(raw, config.experiment.senti_lo, config.experiment.senti_hi);
  out << ordered_json{{"date", date},
                      {"scores", std::move(per_scene)},
                      {"raw_senti_point", senti.raw},
                      {"senti_point", senti.normalized},
                      {"bounds", {senti.lo, senti.hi}}}
             .dump(2)
      << "\n";
  return 0;
}

int cmd_diary(const PipelineConfig& config, const std::string& date,
              SelectionMethod method, DiaryVariant variant, std::ostream& out) {
  const WalkCorpus corpus = load_required_corpus(config);
  const ModelClients clients = make_clients(config);
  const auto& scenes = day_scenes(corpus, date);
  const std::uint64_t seed = config.experiment.base_seed;

  const std::vector<int> indices = select_indices(config, scenes, date, method, seed);
  std::vector<SceneRecord> selected;
  selected.reserve(indices.size());
  for (int i : indices) selected.push_back(scenes[static_cast<std::size_t>(i)]);

  std::optional<SentiPoint> senti;
  if (variant != DiaryVariant::Cap) {
    const SentiLexicon lexicon = load_required_lexicon(config);
    std::vector<CaptionScore> scores;
    for (const SceneRecord& scene : selected) {
      if (!scene.affective_caption)
        throw DataError("scene '" + scene.scene_id +
                        "': affective caption required for variant " + to_string(variant));
      scores.push_back(score_caption(lexicon, *scene.affective_caption));
    }
    senti = normalize_senti(raw_senti_point(scores), config.experiment.senti_lo,
                            config.experiment.senti_hi);
  }

  DiaryProvenance provenance;
  provenance.method = method;
  provenance.seed = seed;
  provenance.num_clusters = is_cluster_method(method) ? config.experiment.num_clusters : 0;
  provenance.scenes_per_day = static_cast<int>(indices.size());
  const DiaryDocument doc = generate_diary(*clients.generator, variant, selected, senti,
                                           config.generation, provenance);

  OutputDirLock lock(config.out_dir);
  const std::filesystem::path path =
      config.out_dir /
      ("diary_" + date + "_" + to_string(method) + "_" + to_string(variant) + ".json");
  save_diary(doc, path);
  out << doc.body << "\n";
  return 0;
}

int cmd_experiment(const PipelineConfig& config, std::ostream& out) {
  const WalkCorpus corpus = load_required_corpus(config);
  const SentiLexicon lexicon = load_required_lexicon(config);
  const ExperimentReport report = run_senti_experiment(corpus, lexicon, config.experiment);

  OutputDirLock lock(config.out_dir);
  atomic_write_file(config.out_dir / "experiment_report.json",
                    report_to_json(report).dump(2) + "\n");
  atomic_write_file(config.out_dir / "experiment_report.md", report_to_markdown(report));
  out << report_to_markdown(report);
  return 0;
}

int cmd_ztest(const std::filesystem::path& table_path, std::ostream& out) {
  const PreferenceReport report = load_preference_fixture(table_path);
  out << preference_report_to_markdown(report);
  bool any_invalid = false;
  for (const PreferenceRow& row : report.rows)
    for (const PreferenceCellResult& cell : row.cells)
      if (!cell.cell) any_invalid = true;
  return any_invalid ? 2 : 0;
}

}  // namespace episodia
