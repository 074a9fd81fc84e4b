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

// Schema serialization. The JSON form is lossless; the DOT form draws
// temporal edges solid, hierarchy edges dashed and AND/OR groups as labeled
// clusters.

#ifndef SCHEMA_FORGE_SCHEMA_IO_H_
#define SCHEMA_FORGE_SCHEMA_IO_H_

#include <span>
#include <string>
#include <string_view>

#include "schema_forge/aggregation.h"
#include "schema_forge/assembly.h"
#include "schema_forge/bundle_io.h"

namespace schema_forge {

Json EventKeyToJson(const EventKey &key);
EventKey EventKeyFromJson(const Json &json);

Json EventNodeToJson(const EventNode &node);
EventNode EventNodeFromJson(const Json &json);

Json SchemaToJson(const SchemaGraph &schema);
// Throws ParseError on malformed input and InvariantViolation if the parsed
// schema is inconsistent.
SchemaGraph SchemaFromJson(const Json &json);
SchemaGraph ParseSchema(const std::string &text);

std::string SchemaToDot(const SchemaGraph &schema);

// format is "json" or "dot"; anything else throws UnknownFormat.
std::string ExportSchema(const SchemaGraph &schema, std::string_view format);

// Inspection dump of aggregated nodes and edges.
Json AggregationDebugJson(std::span<const EventNode> nodes,
                          std::span<const TemporalEdge> temporal,
                          std::span<const HierEdge> hier);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_SCHEMA_IO_H_
