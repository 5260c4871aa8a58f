// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "episodia/diary.hpp"
#include "episodia/experiment.hpp"
#include "episodia/model_clients.hpp"

namespace episodia {

/// One JSON file configures the whole pipeline; every field can be
/// overridden by a same-named CLI flag (the flag wins). Relative paths
/// resolve against the config file's directory.
struct PipelineConfig {
  std::filesystem::path corpus_path;
  std::filesystem::path lexicon_path;
  std::filesystem::path out_dir = "out";
  ExperimentConfig experiment;
  GenerationParams generation;
  int embed_dim = kDefaultEmbedDim;
  bool live = false;  // stubs by default; live endpoints are opt-in
  std::optional<ModelEndpointConfig> caption_endpoint;
  std::optional<ModelEndpointConfig> embed_endpoint;
  std::optional<ModelEndpointConfig> generate_endpoint;
};

PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Stub clients unless live mode is on; live mode requires all three
/// endpoint configs.
ModelClients make_clients(const PipelineConfig& config);

}  // namespace episodia
