// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/model_clients.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "episodia/errors.hpp"

namespace episodia {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// "images/img_007.jpg" -> "img 007": basename without extension,
// non-alphanumerics collapsed to single spaces.
std::string ref_label(const std::string& image_ref) {
  std::string base = image_ref;
  const std::size_t slash = base.find_last_of("/\\");
  if (slash != std::string::npos) base = base.substr(slash + 1);
  const std::size_t dot = base.rfind('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  std::string label;
  for (char ch : base) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      label += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (!label.empty() && label.back() != ' ') {
      label += ' ';
    }
  }
  while (!label.empty() && label.back() == ' ') label.pop_back();
  return label.empty() ? "an unmarked frame" : label;
}

void validate_request(const GenerationRequest& request) {
  if (request.prompt.empty()) throw UsageError("generate_text: prompt must be non-empty");
  if (request.max_tokens < 1) throw UsageError("generate_text: max_tokens must be >= 1");
  if (!(request.temperature >= 0.0))
    throw UsageError("generate_text: temperature must be >= 0");
}

Embedding finalize_embedding(Embedding v, int dim, const std::string& source) {
  if (v.size() != dim)
    throw ClientError(source + ": expected dimension " + std::to_string(dim) + ", got " +
                      std::to_string(v.size()));
  if (!v.allFinite()) throw ClientError(source + ": embedding has non-finite values");
  const double norm = v.norm();
  if (norm == 0.0) throw ClientError(source + ": embedding is the zero vector");
  return v / norm;
}

std::optional<std::string> resolve_auth_token(const ModelEndpointConfig& config) {
  if (config.auth_token) return config.auth_token;
  if (const char* env = std::getenv("EPISODIA_AUTH_TOKEN")) return std::string(env);
  return std::nullopt;
}

json post_json(const ModelEndpointConfig& config, const std::string& path,
               const json& body) {
  if (!(config.timeout_seconds > 0.0))
    throw UsageError("endpoint timeout must be positive");
  httplib::Client client(config.base_url);
  const auto secs = static_cast<time_t>(config.timeout_seconds);
  const auto usecs =
      static_cast<time_t>((config.timeout_seconds - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  httplib::Headers headers;
  if (const auto token = resolve_auth_token(config))
    headers.emplace("Authorization", "Bearer " + *token);

  const auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res)
    throw ClientError("transport failure POST " + config.base_url + path + ": " +
                      httplib::to_string(res.error()));
  if (res->status != 200)
    throw ClientError("endpoint " + config.base_url + path + " returned status " +
                      std::to_string(res->status));
  try {
    return json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ClientError("endpoint " + config.base_url + path +
                      " returned invalid JSON: " + e.what());
  }
}

}  // namespace

std::string StubCaptioner::caption_image(const std::string& image_ref, bool affective) {
  if (image_ref.empty()) throw DataError("caption_image: empty image_ref");
  const std::string label = ref_label(image_ref);
  if (!affective) return "a photo of " + label + " along the route";
  static const char* kFeelings[] = {"calm", "cheerful", "uneasy", "curious"};
  const char* feeling = kFeelings[fnv1a(image_ref) % 4];
  return "a " + std::string(feeling) + " feeling near " + label;
}

Embedding StubEmbedder::embed_text(const std::string& text, int dim) {
  if (text.empty()) throw UsageError("embed_text: text must be non-empty");
  if (dim < 1) throw UsageError("embed_text: dim must be >= 1");
  // Pad so that a text and its prefix never share the same trigram multiset.
  const std::string padded = "\x01\x01" + text + "\x02\x02";
  Embedding v = Embedding::Zero(dim);
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    const std::uint64_t h = fnv1a(std::string_view(padded).substr(i, 3));
    const auto bucket = static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(dim));
    v[bucket] += ((h >> 32) & 1ULL) ? 1.0 : -1.0;
  }
  if (v.squaredNorm() == 0.0)  // all grams cancelled; give the text one bucket
    v[static_cast<Eigen::Index>(fnv1a(text) % static_cast<std::uint64_t>(dim))] = 1.0;
  return v / v.norm();
}

std::string StubGenerator::generate_text(const GenerationRequest& request) {
  validate_request(request);

  std::string date = "today";
  std::vector<std::array<std::string, 3>> scenes;  // time, caption, affective
  std::string senti;

  std::string_view rest = request.prompt;
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    const std::string_view line = rest.substr(0, nl);
    rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);

    constexpr std::string_view kHeader = "You are a robot writing a first-person diary entry for ";
    constexpr std::string_view kSenti = "Senti Point: ";
    if (line.starts_with(kHeader)) {
      std::string_view d = line.substr(kHeader.size());
      if (d.ends_with('.')) d.remove_suffix(1);
      date = std::string(d);
    } else if (line.starts_with(kSenti)) {
      std::string_view s = line.substr(kSenti.size());
      const std::size_t paren = s.find(" (");
      senti = std::string(paren == std::string_view::npos ? s : s.substr(0, paren));
    } else if (line.find(" | ") != std::string_view::npos) {
      std::array<std::string, 3> parts;
      std::string_view remainder = line;
      for (int p = 0; p < 2; ++p) {
        const std::size_t sep = remainder.find(" | ");
        if (sep == std::string_view::npos) break;
        parts[p] = std::string(remainder.substr(0, sep));
        remainder = remainder.substr(sep + 3);
      }
      parts[parts[1].empty() ? 1 : 2] = std::string(remainder);
      scenes.push_back(std::move(parts));
    }
  }

  std::string body = "Dear diary, this is my entry for " + date + ".\n";
  for (const auto& [time, caption, affective] : scenes) {
    body += "At " + time + " I saw " + caption;
    if (!affective.empty()) body += " and I felt " + affective;
    body += ".\n";
  }
  if (!senti.empty()) body += "My Senti Point for the day was " + senti + ".\n";
  body += "That was my walk.";
  return body;
}

HttpCaptioner::HttpCaptioner(ModelEndpointConfig config) : config_(std::move(config)) {}

std::string HttpCaptioner::caption_image(const std::string& image_ref, bool affective) {
  if (image_ref.empty()) throw DataError("caption_image: empty image_ref");
  const json reply =
      post_json(config_, "/caption", json{{"image_ref", image_ref}, {"affective", affective}});
  if (!reply.contains("caption") || !reply["caption"].is_string())
    throw ClientError("caption endpoint reply lacks a string 'caption' field");
  const auto caption = reply["caption"].get<std::string>();
  if (caption.empty()) throw ClientError("caption endpoint returned an empty caption");
  return caption;
}

HttpEmbedder::HttpEmbedder(ModelEndpointConfig config) : config_(std::move(config)) {}

Embedding HttpEmbedder::embed_text(const std::string& text, int dim) {
  if (text.empty()) throw UsageError("embed_text: text must be non-empty");
  if (dim < 1) throw UsageError("embed_text: dim must be >= 1");
  const json reply = post_json(config_, "/embed", json{{"text", text}, {"dim", dim}});
  if (!reply.contains("vector") || !reply["vector"].is_array())
    throw ClientError("embed endpoint reply lacks a 'vector' array");
  Embedding v(static_cast<Eigen::Index>(reply["vector"].size()));
  Eigen::Index i = 0;
  for (const auto& x : reply["vector"]) {
    if (!x.is_number()) throw ClientError("embed endpoint returned a non-numeric vector");
    v[i++] = x.get<double>();
  }
  return finalize_embedding(std::move(v), dim, "embed endpoint");
}

HttpGenerator::HttpGenerator(ModelEndpointConfig config) : config_(std::move(config)) {}

std::string HttpGenerator::generate_text(const GenerationRequest& request) {
  validate_request(request);
  json body{{"prompt", request.prompt},
            {"max_tokens", request.max_tokens},
            {"temperature", request.temperature},
            {"seed", nullptr}};
  if (request.seed) body["seed"] = *request.seed;
  const json reply = post_json(config_, "/generate", body);
  if (!reply.contains("text") || !reply["text"].is_string())
    throw ClientError("generate endpoint reply lacks a string 'text' field");
  const auto text = reply["text"].get<std::string>();
  if (text.empty()) throw ClientError("generate endpoint returned an empty completion");
  return text;
}

ModelClients make_stub_clients() {
  return ModelClients{std::make_unique<StubCaptioner>(), std::make_unique<StubEmbedder>(),
                      std::make_unique<StubGenerator>()};
}

ModelClients make_http_clients(ModelEndpointConfig caption, ModelEndpointConfig embed,
                               ModelEndpointConfig generate) {
  return ModelClients{std::make_unique<HttpCaptioner>(std::move(caption)),
                      std::make_unique<HttpEmbedder>(std::move(embed)),
                      std::make_unique<HttpGenerator>(std::move(generate))};
}

}  // namespace episodia
