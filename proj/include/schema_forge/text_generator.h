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

// Pluggable text generation providers.

#ifndef SCHEMA_FORGE_TEXT_GENERATOR_H_
#define SCHEMA_FORGE_TEXT_GENERATOR_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace schema_forge {

struct GenerationRequest {
  std::string prompt;
  int max_tokens = 512;
  std::string profile = "default";
};

// Exactly one of text/error is set.
struct GenerationResponse {
  std::optional<std::string> text;
  std::optional<std::string> error;

  static GenerationResponse Ok(std::string text) { return {std::move(text), std::nullopt}; }
  static GenerationResponse Fail(std::string error) { return {std::nullopt, std::move(error)}; }
};

// Implementations must tolerate concurrent Generate() calls.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string name() const = 0;
  virtual GenerationResponse Generate(const GenerationRequest &request) = 0;
};

// 64-bit FNV-1a of the prompt bytes as 16 lowercase hex digits. This is the
// file name stem the mock provider looks up.
std::string PromptHash(std::string_view prompt);

// Serves canned outputs from a fixture directory holding one <hash>.txt file
// per prompt. Unknown prompts yield an error response.
class MockTextGenerator : public TextGenerator {
 public:
  explicit MockTextGenerator(const std::filesystem::path &fixture_dir);
  // Keyed by prompt text, not hash.
  explicit MockTextGenerator(const std::map<std::string, std::string> &outputs);

  std::string name() const override { return "mock"; }
  GenerationResponse Generate(const GenerationRequest &request) override;

  size_t size() const { return outputs_.size(); }

 private:
  std::map<std::string, std::string> outputs_;  // hash -> output
};

struct HttpEndpoint {
  // e.g. "https://api.openai.com" or "http://localhost:8080".
  std::string base_url;
  std::string model;
  // Request path; paths containing "chat" use the chat message format.
  std::string path = "/v1/completions";
  std::string api_key_env = "SCHEMA_FORGE_API_KEY";
  int timeout_seconds = 60;
};

// OpenAI-compatible JSON completion endpoint.
class HttpTextGenerator : public TextGenerator {
 public:
  explicit HttpTextGenerator(HttpEndpoint endpoint,
                             std::map<std::string, nlohmann::json> profiles = {});

  std::string name() const override { return "http:" + endpoint_.model; }
  GenerationResponse Generate(const GenerationRequest &request) override;

 private:
  HttpEndpoint endpoint_;
  // Profile name -> extra request fields (temperature, top_p, ...).
  std::map<std::string, nlohmann::json> profiles_;
};

// Posts a JSON body and returns the parsed JSON reply. Throws ProviderError
// on transport failure or a non-2xx status.
nlohmann::json PostJson(const HttpEndpoint &endpoint, const nlohmann::json &body);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_TEXT_GENERATOR_H_
