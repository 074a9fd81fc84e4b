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

// Corpus generation. Three prompt genres are issued for a topic: chained
// news headline/body prompts, how-to prompts and a single enumerated steps
// prompt. Each successful body, how-to and steps output becomes a Document.

#ifndef SCHEMA_FORGE_GENERATION_H_
#define SCHEMA_FORGE_GENERATION_H_

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schema_forge/core.h"
#include "schema_forge/text_generator.h"

namespace schema_forge {

enum class PromptStage { kHeadline, kBody, kSingle };

std::string_view PromptStageName(PromptStage stage);

struct PromptJob {
  Genre genre = Genre::kNews;
  PromptStage stage = PromptStage::kSingle;
  std::string prompt;
  int repetition = 0;

  bool operator==(const PromptJob &other) const = default;
};

struct GenerationRecord {
  PromptJob job;
  std::optional<std::string> raw_output;
  std::string provider_name;
  std::string timestamp;
  std::optional<std::string> error;
  int attempts = 0;
};

std::string NewsHeadlinePrompt(const Topic &topic);
std::string NewsBodyPrompt(std::string_view headline);
std::string HowToPrompt(const Topic &topic);
std::string StepsPrompt(const Topic &topic);

// docs_per_genre headline jobs, docs_per_genre how-to jobs and one steps job,
// in that order. Body jobs are created from headline outputs at run time.
std::vector<PromptJob> BuildPrompts(const Topic &topic, const InductionConfig &config);

// Body job chained from a headline output.
PromptJob MakeBodyJob(const PromptJob &headline_job, std::string_view headline_output);

// First non-empty line, trimmed, surrounding quotes and one trailing period
// removed.
std::string CleanHeadline(std::string_view raw);

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_delay{200};
  double backoff_factor = 2.0;
};

// Runs fn until it returns a text response or attempts run out. Returns the
// last response and the number of attempts used.
std::pair<GenerationResponse, int> CallWithRetry(
    const std::function<GenerationResponse()> &fn, const RetryPolicy &policy,
    const std::function<void(std::chrono::milliseconds)> &sleep);

// Lets a caller reuse outputs from an earlier, partially completed run.
class JobCache {
 public:
  virtual ~JobCache() = default;
  virtual std::optional<std::string> Lookup(const PromptJob &job) = 0;
  virtual void Store(const PromptJob &job, const std::string &output) = 0;
};

struct GenerationOptions {
  RetryPolicy retry;
  int max_in_flight = 4;
  int max_tokens = 512;
  std::string profile = "default";
  JobCache *cache = nullptr;
  // Injected for tests; default sleeps the calling thread.
  std::function<void(std::chrono::milliseconds)> sleep;
  // Injected for tests; default is the current UTC time in ISO 8601.
  std::function<std::string()> clock;
};

struct CorpusResult {
  std::vector<Document> documents;
  // One record per executed job, ordered by job (news headline/body pairs,
  // then how-to, then steps).
  std::vector<GenerationRecord> records;

  size_t error_count() const;
};

// Throws ConfigError if docs_per_genre < 1. Provider failures never throw:
// the job is recorded with its error and skipped.
CorpusResult GenerateCorpus(const Topic &topic, TextGenerator &provider,
                            const InductionConfig &config,
                            const GenerationOptions &options = {});

// Document id for a generated text, e.g. "news-007".
std::string GeneratedDocumentId(Genre genre, int repetition);

// Splits on line-leading "N." enumerators and returns the trimmed,
// non-empty step texts in textual order. Lines without an enumerator are
// appended to the current step; text before the first enumerator is dropped.
// Throws EmptySteps if no enumerator occurs.
std::vector<std::string> ParseEnumeratedSteps(std::string_view text);
// Same, for a steps-genre document. Throws ConfigError for other genres.
std::vector<std::string> ParseEnumeratedSteps(const Document &steps_document);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_GENERATION_H_
