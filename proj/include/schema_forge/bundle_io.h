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

// JSON interchange for extraction bundles, documents and configs. The field
// names are the camelCase names documented in
// schemas/extraction_bundle.schema.json.

#ifndef SCHEMA_FORGE_BUNDLE_IO_H_
#define SCHEMA_FORGE_BUNDLE_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "schema_forge/core.h"

namespace schema_forge {

using Json = nlohmann::ordered_json;

Json DocumentToJson(const Document &document);
Document DocumentFromJson(const Json &json);

Json BundleToJson(const ExtractionBundle &bundle);
ExtractionBundle BundleFromJson(const Json &json);

Json ConfigToJson(const InductionConfig &config);
// Missing fields keep their defaults.
InductionConfig ConfigFromJson(const Json &json);

// Serialized text always ends in a newline.
std::string SerializeBundle(const ExtractionBundle &bundle);
// Throws ParseError on malformed JSON or missing/mistyped fields.
ExtractionBundle ParseBundle(const std::string &text);

// File helpers. Throw IoError when the file cannot be read or written.
std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, const std::string &content);
ExtractionBundle LoadBundle(const std::filesystem::path &path);
// Loads every *.json file of a directory, sorted by file name.
std::vector<ExtractionBundle> LoadBundleDirectory(
    const std::filesystem::path &directory);

// Pretty JSON with two-space indent and a trailing newline.
std::string DumpJson(const Json &json);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_BUNDLE_IO_H_
