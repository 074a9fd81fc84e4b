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

#include "schema_forge/text_generator.h"

#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include "schema_forge/bundle_io.h"
#include "schema_forge/errors.h"

#include "httplib.h"

namespace schema_forge {

namespace fs = std::filesystem;

std::string PromptHash(std::string_view prompt) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : prompt) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

MockTextGenerator::MockTextGenerator(const fs::path &fixture_dir) {
  if (!fs::is_directory(fixture_dir)) {
    throw IoError("mock fixture directory not found: " + fixture_dir.string());
  }
  for (const auto &entry : fs::directory_iterator(fixture_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    outputs_[entry.path().stem().string()] = ReadFile(entry.path());
  }
}

MockTextGenerator::MockTextGenerator(const std::map<std::string, std::string> &outputs) {
  for (const auto &[prompt, output] : outputs) outputs_[PromptHash(prompt)] = output;
}

GenerationResponse MockTextGenerator::Generate(const GenerationRequest &request) {
  const std::string hash = PromptHash(request.prompt);
  auto it = outputs_.find(hash);
  if (it == outputs_.end()) {
    return GenerationResponse::Fail("no mock fixture for prompt hash " + hash);
  }
  return GenerationResponse::Ok(it->second);
}

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path prefix without trailing slash
};

SplitUrl Split(const std::string &url) {
  size_t scheme = url.find("://");
  size_t path_start = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  SplitUrl out;
  if (path_start == std::string::npos) {
    out.origin = url;
  } else {
    out.origin = url.substr(0, path_start);
    out.prefix = url.substr(path_start);
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  return out;
}

}  // namespace

nlohmann::json PostJson(const HttpEndpoint &endpoint, const nlohmann::json &body) {
  SplitUrl url = Split(endpoint.base_url);
  httplib::Client client(url.origin);
  if (!client.is_valid()) throw ProviderError("invalid base URL '" + endpoint.base_url + "'");
  client.set_connection_timeout(endpoint.timeout_seconds, 0);
  client.set_read_timeout(endpoint.timeout_seconds, 0);
  httplib::Headers headers;
  if (const char *key = std::getenv(endpoint.api_key_env.c_str()); key != nullptr && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  auto result = client.Post(url.prefix + endpoint.path, headers, body.dump(), "application/json");
  if (!result) {
    throw ProviderError("request to " + endpoint.base_url + " failed: " +
                        httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    throw ProviderError("HTTP " + std::to_string(result->status) + ": " + result->body);
  }
  try {
    return nlohmann::json::parse(result->body);
  } catch (const nlohmann::json::exception &e) {
    throw ProviderError(std::string("unparseable provider reply: ") + e.what());
  }
}

HttpTextGenerator::HttpTextGenerator(HttpEndpoint endpoint,
                                     std::map<std::string, nlohmann::json> profiles)
    : endpoint_(std::move(endpoint)), profiles_(std::move(profiles)) {}

GenerationResponse HttpTextGenerator::Generate(const GenerationRequest &request) {
  const bool chat = endpoint_.path.find("chat") != std::string::npos;
  nlohmann::json body;
  body["model"] = endpoint_.model;
  if (chat) {
    body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}});
  } else {
    body["prompt"] = request.prompt;
  }
  body["max_tokens"] = request.max_tokens;
  if (auto it = profiles_.find(request.profile); it != profiles_.end() && it->second.is_object()) {
    for (const auto &[k, v] : it->second.items()) body[k] = v;
  }

  nlohmann::json reply;
  try {
    reply = PostJson(endpoint_, body);
  } catch (const ProviderError &e) {
    return GenerationResponse::Fail(e.what());
  }
  try {
    if (reply.contains("error") && !reply["error"].is_null()) {
      return GenerationResponse::Fail("provider error: " + reply["error"].dump());
    }
    const auto &choice = reply.at("choices").at(0);
    if (chat) return GenerationResponse::Ok(choice.at("message").at("content").get<std::string>());
    return GenerationResponse::Ok(choice.at("text").get<std::string>());
  } catch (const nlohmann::json::exception &e) {
    return GenerationResponse::Fail(std::string("unexpected reply shape: ") + e.what());
  }
}

}  // namespace schema_forge
