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

#ifndef SCHEMA_FORGE_RANKING_H_
#define SCHEMA_FORGE_RANKING_H_

#include <string>
#include <string_view>
#include <vector>

#include "schema_forge/core.h"
#include "schema_forge/text_generator.h"

namespace schema_forge {

class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  // Throws ConfigError on non-finite entries.
  explicit EmbeddingVector(std::vector<double> values);

  const std::vector<double> &values() const { return values_; }
  size_t dimension() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Throws DimensionMismatch or
// ZeroVector.
double CosineSimilarity(const EmbeddingVector &a, const EmbeddingVector &b);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string name() const = 0;
  virtual EmbeddingVector Embed(std::string_view text) = 0;
};

// Term frequencies of lowercased ASCII alphanumeric tokens, hashed into a
// fixed number of buckets. Deterministic and model-free.
class HashingEmbedder : public EmbeddingProvider {
 public:
  explicit HashingEmbedder(int dimension = 512) : dimension_(dimension) {}

  std::string name() const override { return "hash" + std::to_string(dimension_); }
  EmbeddingVector Embed(std::string_view text) override;

 private:
  int dimension_;
};

// OpenAI-compatible /v1/embeddings endpoint.
class HttpEmbedder : public EmbeddingProvider {
 public:
  explicit HttpEmbedder(HttpEndpoint endpoint);

  std::string name() const override { return "http:" + endpoint_.model; }
  EmbeddingVector Embed(std::string_view text) override;

 private:
  HttpEndpoint endpoint_;
};

struct RankedDocument {
  Document document;
  // Similarity to the topic; steps documents are not scored and carry 0.
  double similarity = 0.0;
  bool bypassed_ranking = false;
};

// Keeps the rankedSelection news/how-to documents closest to the topic plus
// every steps document. Ties break on document id. Output is ordered by
// similarity descending then id, steps documents last.
std::vector<RankedDocument> RankDocuments(const std::vector<Document> &documents,
                                          const Topic &topic, EmbeddingProvider &embedder,
                                          const InductionConfig &config);

std::vector<Document> SelectTopDocuments(const std::vector<Document> &documents,
                                         const Topic &topic, EmbeddingProvider &embedder,
                                         const InductionConfig &config);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_RANKING_H_
