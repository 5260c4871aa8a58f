// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/cli_config.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "episodia/errors.hpp"

namespace episodia {

namespace {

using nlohmann::ordered_json;

void reject_unknown_keys(const ordered_json& obj,
                         const std::unordered_set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key))
      throw UsageError("config " + where + ": unknown key '" + key + "'");
  }
}

ModelEndpointConfig endpoint_from_json(const ordered_json& j, const std::string& name) {
  reject_unknown_keys(j, {"base_url", "timeout", "auth_token", "model_name"},
                      "endpoints." + name);
  ModelEndpointConfig config;
  if (!j.contains("base_url") || !j["base_url"].is_string())
    throw UsageError("config endpoints." + name + ": base_url (string) is required");
  config.base_url = j["base_url"].get<std::string>();
  if (j.contains("timeout")) {
    config.timeout_seconds = j["timeout"].get<double>();
    if (!(config.timeout_seconds > 0.0))
      throw UsageError("config endpoints." + name + ": timeout must be positive");
  }
  if (j.contains("auth_token") && !j["auth_token"].is_null())
    config.auth_token = j["auth_token"].get<std::string>();
  if (j.contains("model_name")) config.model_name = j["model_name"].get<std::string>();
  return config;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");

  reject_unknown_keys(
      j,
      {"corpus", "lexicon", "out_dir", "methods", "C", "M", "R", "base_seed",
       "senti_lo", "senti_hi", "variance_denominator", "embed_dim", "max_tokens",
       "temperature", "generation_seed", "live", "endpoints"},
      "(top level)");

  PipelineConfig config;
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&base](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  try {
    if (j.contains("corpus")) config.corpus_path = resolve(j["corpus"].get<std::string>());
    if (j.contains("lexicon")) config.lexicon_path = resolve(j["lexicon"].get<std::string>());
    if (j.contains("out_dir")) config.out_dir = resolve(j["out_dir"].get<std::string>());
    if (j.contains("methods")) {
      config.experiment.methods.clear();
      for (const auto& name : j["methods"])
        config.experiment.methods.push_back(
            selection_method_from_string(name.get<std::string>()));
    }
    if (j.contains("C")) config.experiment.scenes_per_day = j["C"].get<int>();
    if (j.contains("M")) config.experiment.num_clusters = j["M"].get<int>();
    if (j.contains("R")) config.experiment.repetitions = j["R"].get<int>();
    if (j.contains("base_seed"))
      config.experiment.base_seed = j["base_seed"].get<std::uint64_t>();
    if (j.contains("senti_lo")) config.experiment.senti_lo = j["senti_lo"].get<double>();
    if (j.contains("senti_hi")) config.experiment.senti_hi = j["senti_hi"].get<double>();
    if (j.contains("variance_denominator"))
      config.experiment.variance_denominator =
          variance_denominator_from_string(j["variance_denominator"].get<std::string>());
    if (j.contains("embed_dim")) config.embed_dim = j["embed_dim"].get<int>();
    if (j.contains("max_tokens")) config.generation.max_tokens = j["max_tokens"].get<int>();
    if (j.contains("temperature"))
      config.generation.temperature = j["temperature"].get<double>();
    if (j.contains("generation_seed"))
      config.generation.seed = j["generation_seed"].get<std::int64_t>();
    if (j.contains("live")) config.live = j["live"].get<bool>();
    if (j.contains("endpoints")) {
      const auto& endpoints = j["endpoints"];
      reject_unknown_keys(endpoints, {"caption", "embed", "generate"}, "endpoints");
      if (endpoints.contains("caption"))
        config.caption_endpoint = endpoint_from_json(endpoints["caption"], "caption");
      if (endpoints.contains("embed"))
        config.embed_endpoint = endpoint_from_json(endpoints["embed"], "embed");
      if (endpoints.contains("generate"))
        config.generate_endpoint = endpoint_from_json(endpoints["generate"], "generate");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }

  if (config.experiment.scenes_per_day < 1) throw UsageError("config: C must be >= 1");
  if (config.experiment.num_clusters < 1) throw UsageError("config: M must be >= 1");
  if (config.experiment.repetitions < 1) throw UsageError("config: R must be >= 1");
  if (config.embed_dim < 1) throw UsageError("config: embed_dim must be >= 1");
  return config;
}

ModelClients make_clients(const PipelineConfig& config) {
  if (!config.live) return make_stub_clients();
  if (!config.caption_endpoint || !config.embed_endpoint || !config.generate_endpoint)
    throw UsageError("live mode requires endpoints.caption, endpoints.embed and "
                     "endpoints.generate in the config");
  return make_http_clients(*config.caption_endpoint, *config.embed_endpoint,
                           *config.generate_endpoint);
}

}  // namespace episodia
