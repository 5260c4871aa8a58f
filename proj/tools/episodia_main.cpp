// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "episodia/commands.hpp"
#include "episodia/errors.hpp"

namespace {

using episodia::PipelineConfig;

struct CliOverrides {
  std::string config_path;
  std::optional<std::string> corpus;
  std::optional<std::string> lexicon;
  std::optional<std::string> out_dir;
  std::optional<std::vector<std::string>> methods;
  std::optional<int> scenes_per_day;
  std::optional<int> num_clusters;
  std::optional<int> repetitions;
  std::optional<std::uint64_t> seed;
  std::optional<double> senti_lo;
  std::optional<double> senti_hi;
  std::optional<int> embed_dim;
  std::optional<int> max_tokens;
  std::optional<double> temperature;
  bool live = false;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "pipeline config JSON")->required();
  cmd->add_option("--corpus", o.corpus, "corpus JSONL path (overrides config)");
  cmd->add_option("--lexicon", o.lexicon, "SentiWordNet TSV path (overrides config)");
  cmd->add_option("--out", o.out_dir, "output directory (overrides config)");
  cmd->add_option("--methods", o.methods, "experiment methods (overrides config)")
      ->delimiter(',');
  cmd->add_option("--C", o.scenes_per_day, "scenes selected per day");
  cmd->add_option("--M", o.num_clusters, "number of clusters");
  cmd->add_option("--R", o.repetitions, "experiment repetitions");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--senti-lo", o.senti_lo, "senti normalization lower bound");
  cmd->add_option("--senti-hi", o.senti_hi, "senti normalization upper bound");
  cmd->add_option("--embed-dim", o.embed_dim, "embedding dimension for annotation");
  cmd->add_option("--max-tokens", o.max_tokens, "generation token budget");
  cmd->add_option("--temperature", o.temperature, "generation temperature");
  cmd->add_flag("--live", o.live, "use configured HTTP endpoints instead of stubs");
}

PipelineConfig resolve_config(const CliOverrides& o) {
  PipelineConfig config = episodia::load_pipeline_config(o.config_path);
  if (o.corpus) config.corpus_path = *o.corpus;
  if (o.lexicon) config.lexicon_path = *o.lexicon;
  if (o.out_dir) config.out_dir = *o.out_dir;
  if (o.methods) {
    config.experiment.methods.clear();
    for (const std::string& name : *o.methods)
      config.experiment.methods.push_back(episodia::selection_method_from_string(name));
  }
  if (o.scenes_per_day) config.experiment.scenes_per_day = *o.scenes_per_day;
  if (o.num_clusters) config.experiment.num_clusters = *o.num_clusters;
  if (o.repetitions) config.experiment.repetitions = *o.repetitions;
  if (o.seed) config.experiment.base_seed = *o.seed;
  if (o.senti_lo) config.experiment.senti_lo = *o.senti_lo;
  if (o.senti_hi) config.experiment.senti_hi = *o.senti_hi;
  if (o.embed_dim) config.embed_dim = *o.embed_dim;
  if (o.max_tokens) config.generation.max_tokens = *o.max_tokens;
  if (o.temperature) config.generation.temperature = *o.temperature;
  if (o.live) config.live = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"episodia: turns a timestamped log of walk scenes into robot diaries"};
  app.require_subcommand(1);

  CliOverrides o;
  std::string date;
  std::string method_name = "Random";
  std::string variant_name = "cap";
  std::string embedding_kind = "cap";
  std::string table_path;

  CLI::App* annotate =
      app.add_subcommand("annotate", "fill missing captions and embeddings");
  add_common_options(annotate, o);

  CLI::App* cluster = app.add_subcommand("cluster", "k-medoids assignment for one date");
  add_common_options(cluster, o);
  cluster->add_option("--date", date, "date YYYY-MM-DD")->required();
  cluster->add_option("--embedding", embedding_kind, "cap or emo");

  CLI::App* select = app.add_subcommand("select", "selection probabilities and a draw");
  add_common_options(select, o);
  select->add_option("--date", date, "date YYYY-MM-DD")->required();
  select->add_option("--method", method_name, "selection method");

  CLI::App* score = app.add_subcommand("score", "senti scores for one date");
  add_common_options(score, o);
  score->add_option("--date", date, "date YYYY-MM-DD")->required();

  CLI::App* diary = app.add_subcommand("diary", "generate one diary document");
  add_common_options(diary, o);
  diary->add_option("--date", date, "date YYYY-MM-DD")->required();
  diary->add_option("--method", method_name, "selection method");
  diary->add_option("--variant", variant_name, "cap, senti or emo");

  CLI::App* experiment =
      app.add_subcommand("experiment", "senti point means and cross-date variances");
  add_common_options(experiment, o);

  CLI::App* ztest = app.add_subcommand("ztest", "preference-table proportion z-tests");
  ztest->add_option("table", table_path, "preference table fixture JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // exit code 1 covers every usage error
  }

  try {
    if (ztest->parsed()) return episodia::cmd_ztest(table_path, std::cout);

    const PipelineConfig config = resolve_config(o);
    if (annotate->parsed()) return episodia::cmd_annotate(config, std::cout);
    if (cluster->parsed())
      return episodia::cmd_cluster(config, date, embedding_kind, std::cout);
    if (select->parsed())
      return episodia::cmd_select(
          config, date, episodia::selection_method_from_string(method_name), std::cout);
    if (score->parsed()) return episodia::cmd_score(config, date, std::cout);
    if (diary->parsed())
      return episodia::cmd_diary(config, date,
                                 episodia::selection_method_from_string(method_name),
                                 episodia::diary_variant_from_string(variant_name),
                                 std::cout);
    if (experiment->parsed()) return episodia::cmd_experiment(config, std::cout);
    std::cerr << "episodia: no subcommand\n";
    return 1;
  } catch (const episodia::UsageError& e) {
    std::cerr << "episodia: " << e.what() << "\n";
    return 1;
  } catch (const episodia::DataError& e) {
    std::cerr << "episodia: " << e.what() << "\n";
    return 2;
  } catch (const episodia::ClientError& e) {
    std::cerr << "episodia: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "episodia: unexpected error: " << e.what() << "\n";
    return 1;
  }
}
