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

#include "schema_forge/generation.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <regex>
#include <thread>

#include "schema_forge/errors.h"

namespace schema_forge {

namespace {

std::string_view TrimView(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

std::string UtcNow() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

bool StartsWith(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

// Strips one layer of matching ASCII or typographic double/single quotes.
std::string_view StripQuotes(std::string_view text) {
  static const std::pair<std::string_view, std::string_view> kQuotes[] = {
      {"\"", "\""}, {"'", "'"}, {"“", "”"}, {"‘", "’"}};
  for (const auto &[open, close] : kQuotes) {
    if (text.size() >= open.size() + close.size() && StartsWith(text, open) &&
        text.substr(text.size() - close.size()) == close) {
      return TrimView(text.substr(open.size(), text.size() - open.size() - close.size()));
    }
  }
  return text;
}

// Runs work(i) for i in [0, count) on at most max_in_flight threads.
void ParallelFor(int count, int max_in_flight, const std::function<void(int)> &work) {
  int threads = std::clamp(max_in_flight, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) work(i);
    });
  }
  for (std::thread &thread : pool) thread.join();
}

}  // namespace

std::string_view PromptStageName(PromptStage stage) {
  switch (stage) {
    case PromptStage::kHeadline: return "headline";
    case PromptStage::kBody: return "body";
    case PromptStage::kSingle: return "single";
  }
  return "single";
}

std::string NewsHeadlinePrompt(const Topic &topic) {
  return "Write a news headline about " + topic.name() + ".";
}

std::string NewsBodyPrompt(std::string_view headline) {
  return "Write a news story titled \"" + std::string(headline) + "\".";
}

std::string HowToPrompt(const Topic &topic) {
  return "Describe how to " + topic.name() + ".";
}

std::string StepsPrompt(const Topic &topic) {
  return "What are the steps involved in " + topic.name() + "? 1.";
}

std::vector<PromptJob> BuildPrompts(const Topic &topic, const InductionConfig &config) {
  std::vector<PromptJob> jobs;
  for (int i = 0; i < config.docs_per_genre; ++i) {
    jobs.push_back({Genre::kNews, PromptStage::kHeadline, NewsHeadlinePrompt(topic), i});
  }
  for (int i = 0; i < config.docs_per_genre; ++i) {
    jobs.push_back({Genre::kHowTo, PromptStage::kSingle, HowToPrompt(topic), i});
  }
  jobs.push_back({Genre::kSteps, PromptStage::kSingle, StepsPrompt(topic), 0});
  return jobs;
}

std::string CleanHeadline(std::string_view raw) {
  std::string_view line;
  size_t pos = 0;
  while (pos <= raw.size()) {
    size_t eol = raw.find('\n', pos);
    if (eol == std::string_view::npos) eol = raw.size();
    line = TrimView(raw.substr(pos, eol - pos));
    if (!line.empty()) break;
    pos = eol + 1;
  }
  line = StripQuotes(line);
  if (!line.empty() && line.back() == '.') line = TrimView(line.substr(0, line.size() - 1));
  return std::string(StripQuotes(line));
}

PromptJob MakeBodyJob(const PromptJob &headline_job, std::string_view headline_output) {
  return {Genre::kNews, PromptStage::kBody,
          NewsBodyPrompt(CleanHeadline(headline_output)), headline_job.repetition};
}

std::pair<GenerationResponse, int> CallWithRetry(
    const std::function<GenerationResponse()> &fn, const RetryPolicy &policy,
    const std::function<void(std::chrono::milliseconds)> &sleep) {
  GenerationResponse response = GenerationResponse::Fail("no attempt made");
  auto delay = policy.initial_delay;
  const int attempts = std::max(policy.max_attempts, 1);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    try {
      response = fn();
    } catch (const std::exception &e) {
      response = GenerationResponse::Fail(e.what());
    }
    if (response.text) return {std::move(response), attempt};
    if (!response.error) response.error = "provider returned neither text nor error";
    if (attempt < attempts) {
      sleep(delay);
      delay = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(delay.count()) * policy.backoff_factor));
    }
  }
  return {std::move(response), attempts};
}

size_t CorpusResult::error_count() const {
  return static_cast<size_t>(std::count_if(records.begin(), records.end(),
                                           [](const GenerationRecord &r) { return r.error.has_value(); }));
}

std::string GeneratedDocumentId(Genre genre, int repetition) {
  char suffix[16];
  std::snprintf(suffix, sizeof(suffix), "-%03d", repetition);
  return std::string(GenreName(genre)) + suffix;
}

CorpusResult GenerateCorpus(const Topic &topic, TextGenerator &provider,
                            const InductionConfig &config,
                            const GenerationOptions &options) {
  if (config.docs_per_genre < 1) {
    throw ConfigError("docsPerGenre must be >= 1, got " + std::to_string(config.docs_per_genre));
  }
  auto sleep = options.sleep ? options.sleep
                             : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  auto clock = options.clock ? options.clock : UtcNow;
  std::mutex cache_mutex;

  auto run_job = [&](const PromptJob &job) {
    GenerationRecord record;
    record.job = job;
    record.provider_name = provider.name();
    if (options.cache != nullptr) {
      std::optional<std::string> cached;
      {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cached = options.cache->Lookup(job);
      }
      if (cached) {
        record.raw_output = std::move(cached);
        record.timestamp = clock();
        return record;
      }
    }
    GenerationRequest request{job.prompt, options.max_tokens, options.profile};
    auto [response, attempts] = CallWithRetry(
        [&] { return provider.Generate(request); }, options.retry, sleep);
    record.attempts = attempts;
    record.timestamp = clock();
    if (response.text) {
      record.raw_output = std::move(response.text);
      if (options.cache != nullptr) {
        std::lock_guard<std::mutex> lock(cache_mutex);
        options.cache->Store(job, *record.raw_output);
      }
    } else {
      record.error = "ProviderError: " + response.error.value_or("unknown") +
                     " (after " + std::to_string(attempts) + " attempts)";
    }
    return record;
  };

  // Stage one: headlines, how-to and steps. Stage two: bodies chained from
  // successful headlines. Results land in slots indexed by job, so
  // completion order never leaks into the output.
  const std::vector<PromptJob> jobs = BuildPrompts(topic, config);
  std::vector<GenerationRecord> first(jobs.size());
  ParallelFor(static_cast<int>(jobs.size()), options.max_in_flight,
              [&](int i) { first[i] = run_job(jobs[i]); });

  const int n = config.docs_per_genre;
  std::vector<std::optional<GenerationRecord>> bodies(n);
  ParallelFor(n, options.max_in_flight, [&](int i) {
    if (first[i].raw_output) bodies[i] = run_job(MakeBodyJob(jobs[i], *first[i].raw_output));
  });

  CorpusResult result;
  auto add_document = [&](const GenerationRecord &record) {
    if (!record.raw_output) return;
    Document doc;
    doc.id = GeneratedDocumentId(record.job.genre, record.job.repetition);
    doc.genre = record.job.genre;
    std::string_view text = TrimView(*record.raw_output);
    if (record.job.genre == Genre::kSteps && !StartsWith(text, "1.")) {
      // The prompt ends in "1." so the completion starts mid-list.
      doc.text = "1. " + std::string(text);
    } else {
      doc.text = std::string(text);
    }
    result.documents.push_back(std::move(doc));
  };

  for (int i = 0; i < n; ++i) {
    result.records.push_back(first[i]);
    if (bodies[i]) {
      result.records.push_back(*bodies[i]);
      add_document(*bodies[i]);
    }
  }
  for (size_t i = n; i < jobs.size(); ++i) {
    result.records.push_back(first[i]);
    add_document(first[i]);
  }
  return result;
}

std::vector<std::string> ParseEnumeratedSteps(std::string_view text) {
  static const std::regex kEnumerator(R"(^\s*(\d+)\.(\s+|$))");
  std::vector<std::string> steps;
  bool seen_enumerator = false;
  std::string current;
  auto flush = [&] {
    std::string_view step = TrimView(current);
    if (!step.empty()) steps.emplace_back(step);
    current.clear();
  };

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    std::smatch match;
    if (std::regex_search(line, match, kEnumerator)) {
      if (seen_enumerator) flush();
      seen_enumerator = true;
      current = match.suffix().str();
    } else if (seen_enumerator) {
      std::string_view cont = TrimView(line);
      if (!cont.empty()) {
        if (!current.empty()) current += ' ';
        current += cont;
      }
    }
    pos = eol + 1;
  }
  if (!seen_enumerator) throw EmptySteps("no enumerated step found");
  flush();
  if (steps.empty()) throw EmptySteps("enumerated steps are all empty");
  return steps;
}

std::vector<std::string> ParseEnumeratedSteps(const Document &steps_document) {
  if (steps_document.genre != Genre::kSteps) {
    throw ConfigError("document '" + steps_document.id + "' is not a steps document");
  }
  return ParseEnumeratedSteps(steps_document.text);
}

}  // namespace schema_forge
