// Copyright 2026 The Schema Forge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "schema_forge/ranking.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "schema_forge/errors.h"

namespace schema_forge {

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw ConfigError("embedding has a non-finite entry");
  }
}

double CosineSimilarity(const EmbeddingVector &a, const EmbeddingVector &b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("dimensions " + std::to_string(a.dimension()) + " and " +
                            std::to_string(b.dimension()) + " differ");
  }
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (size_t i = 0; i < a.dimension(); ++i) {
    dot += a.values()[i] * b.values()[i];
    norm_a += a.values()[i] * a.values()[i];
    norm_b += b.values()[i] * b.values()[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) throw ZeroVector("cosine similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), -1.0, 1.0);
}

EmbeddingVector HashingEmbedder::Embed(std::string_view text) {
  std::vector<double> values(dimension_, 0.0);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    // FNV-1a, stable across platforms unlike std::hash.
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : token) {
      hash ^= static_cast<unsigned char>(c);
      hash *= 0x100000001b3ULL;
    }
    values[hash % static_cast<uint64_t>(dimension_)] += 1.0;
    token.clear();
  };
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 128 && std::isalnum(u)) {
      token.push_back(static_cast<char>(std::tolower(u)));
    } else {
      flush();
    }
  }
  flush();
  return EmbeddingVector(std::move(values));
}

HttpEmbedder::HttpEmbedder(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {
  if (endpoint_.path == "/v1/completions") endpoint_.path = "/v1/embeddings";
}

EmbeddingVector HttpEmbedder::Embed(std::string_view text) {
  nlohmann::json body{{"model", endpoint_.model}, {"input", std::string(text)}};
  nlohmann::json reply = PostJson(endpoint_, body);
  try {
    return EmbeddingVector(reply.at("data").at(0).at("embedding").get<std::vector<double>>());
  } catch (const nlohmann::json::exception &e) {
    throw ProviderError(std::string("unexpected embedding reply: ") + e.what());
  }
}

std::vector<RankedDocument> RankDocuments(const std::vector<Document> &documents,
                                          const Topic &topic, EmbeddingProvider &embedder,
                                          const InductionConfig &config) {
  if (documents.empty()) throw ConfigError("ranking needs at least one document");
  const EmbeddingVector topic_vector = embedder.Embed(topic.name());

  std::vector<RankedDocument> scored;
  std::vector<RankedDocument> steps;
  for (const Document &doc : documents) {
    if (doc.genre == Genre::kSteps) {
      steps.push_back({doc, 0.0, true});
      continue;
    }
    EmbeddingVector v = embedder.Embed(doc.text);
    if (v.dimension() != topic_vector.dimension()) {
      throw DimensionMismatch("embedding of '" + doc.id + "' has dimension " +
                              std::to_string(v.dimension()));
    }
    // An empty document has no direction; it ranks below everything else.
    bool zero = std::all_of(v.values().begin(), v.values().end(), [](double x) { return x == 0.0; });
    scored.push_back({doc, zero ? -2.0 : CosineSimilarity(v, topic_vector), false});
  }

  auto by_score = [](const RankedDocument &a, const RankedDocument &b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.document.id < b.document.id;
  };
  std::sort(scored.begin(), scored.end(), by_score);
  if (scored.size() > static_cast<size_t>(config.ranked_selection)) {
    scored.resize(config.ranked_selection);
  }
  std::sort(steps.begin(), steps.end(), by_score);
  scored.insert(scored.end(), steps.begin(), steps.end());
  return scored;
}

std::vector<Document> SelectTopDocuments(const std::vector<Document> &documents,
                                         const Topic &topic, EmbeddingProvider &embedder,
                                         const InductionConfig &config) {
  std::vector<Document> out;
  for (RankedDocument &r : RankDocuments(documents, topic, embedder, config)) {
    out.push_back(std::move(r.document));
  }
  return out;
}

}  // namespace schema_forge
