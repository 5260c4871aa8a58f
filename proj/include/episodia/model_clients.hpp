// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "episodia/corpus.hpp"

namespace episodia {

inline constexpr int kDefaultEmbedDim = 64;

/// Reads EPISODIA_AUTH_TOKEN when the config leaves auth_token unset.
struct ModelEndpointConfig {
  std::string base_url;  // e.g. "http://localhost:8080"
  double timeout_seconds = 10.0;
  std::optional<std::string> auth_token;
  std::string model_name;
};

struct GenerationRequest {
  std::string prompt;
  int max_tokens = 256;
  double temperature = 0.0;
  std::optional<std::int64_t> seed;
};

class Captioner {
 public:
  virtual ~Captioner() = default;
  /// Non-empty caption for the image; affective=true switches the endpoint
  /// into emotion-description mode.
  virtual std::string caption_image(const std::string& image_ref, bool affective) = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  /// Finite, unit-norm vector of length dim (normalized on receipt).
  virtual Embedding embed_text(const std::string& text, int dim) = 0;
};

class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string generate_text(const GenerationRequest& request) = 0;
  virtual std::string model_name() const { return "stub"; }
};

// Offline stubs: pure functions of their inputs, so every test and every
// default CLI run is reproducible with no network.

class StubCaptioner : public Captioner {
 public:
  std::string caption_image(const std::string& image_ref, bool affective) override;
};

/// Hashes boundary-padded character trigrams into dim buckets with a +/-1
/// sign per gram, then unit-normalizes. Distinct texts (including prefixes
/// of each other) land on distinct gram multisets.
class StubEmbedder : public Embedder {
 public:
  Embedding embed_text(const std::string& text, int dim) override;
};

/// Emits a fixed diary skeleton that restates every scene line found in the
/// prompt. The request seed does not alter the output.
class StubGenerator : public Generator {
 public:
  std::string generate_text(const GenerationRequest& request) override;
};

// JSON-over-HTTP clients. One POST per call:
//   {base_url}/caption  {"image_ref": str, "affective": bool} -> {"caption": str}
//   {base_url}/embed    {"text": str, "dim": int}             -> {"vector": [num]}
//   {base_url}/generate {"prompt": str, "max_tokens": int,
//                        "temperature": num, "seed": int|null} -> {"text": str}

class HttpCaptioner : public Captioner {
 public:
  explicit HttpCaptioner(ModelEndpointConfig config);
  std::string caption_image(const std::string& image_ref, bool affective) override;

 private:
  ModelEndpointConfig config_;
};

class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(ModelEndpointConfig config);
  Embedding embed_text(const std::string& text, int dim) override;

 private:
  ModelEndpointConfig config_;
};

class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(ModelEndpointConfig config);
  std::string generate_text(const GenerationRequest& request) override;
  std::string model_name() const override { return config_.model_name; }

 private:
  ModelEndpointConfig config_;
};

struct ModelClients {
  std::unique_ptr<Captioner> captioner;
  std::unique_ptr<Embedder> embedder;
  std::unique_ptr<Generator> generator;
};

ModelClients make_stub_clients();
ModelClients make_http_clients(ModelEndpointConfig caption, ModelEndpointConfig embed,
                               ModelEndpointConfig generate);

}  // namespace episodia
