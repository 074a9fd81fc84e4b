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

// Cross-document aggregation of event mentions and relation predictions.
// All support is counted in documents: a document contributes at most one
// to a node or edge no matter how often it mentions it.

#ifndef SCHEMA_FORGE_AGGREGATION_H_
#define SCHEMA_FORGE_AGGREGATION_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schema_forge/core.h"
#include "schema_forge/event_key.h"

namespace schema_forge {

using DocSet = std::set<std::string>;

struct ArgumentFiller {
  std::string ner_type;  // "ABSENT" when untyped
  std::string head_text;

  auto operator<=>(const ArgumentFiller &other) const = default;
};

// role -> filler -> mention count
using ArgumentProfile = std::map<std::string, std::map<ArgumentFiller, int>>;

struct EventNode {
  EventKey key;
  std::string display_label;
  DocSet support_docs;
  int frequency = 0;
  ArgumentProfile argument_profile;
  // Exact mention keys folded into this node.
  std::vector<EventKey> member_keys;

  bool operator==(const EventNode &other) const = default;
};

// "ARG0-head lemma ARG1-head ..." using the most frequent head per role.
std::string DisplayLabel(const std::string &lemma, const ArgumentProfile &profile);

enum class EdgeLabel { kBefore, kEqual };

struct TemporalEdge {
  EventKey source;
  EventKey target;
  EdgeLabel label = EdgeLabel::kBefore;
  DocSet support_docs;

  bool operator==(const TemporalEdge &other) const = default;
};

struct HierEdge {
  EventKey parent;
  EventKey child;
  DocSet support_docs;

  bool operator==(const HierEdge &other) const = default;
};

// Two nodes predicted to be the same event. a < b.
struct CorefDirective {
  EventKey a;
  EventKey b;
  DocSet support_docs;

  bool operator==(const CorefDirective &other) const = default;
};

// Groups mentions by key across documents and keeps nodes supported by at
// least minEventDocs documents, sorted by (frequency desc, key).
std::vector<EventNode> MergeEvents(std::span<const ExtractionBundle> bundles,
                                   const InductionConfig &config);

struct AggregatedRelations {
  std::vector<EventNode> nodes;  // after coreference merging
  std::vector<TemporalEdge> temporal;
  std::vector<HierEdge> hier;
  std::vector<CorefDirective> coref;  // directives that were applied
};

// Lifts mention-level predictions to node-level edges, applies coreference
// directives by union-find (smallest key wins), then applies the document
// thresholds. AFTER and CHILD-PARENT are re-oriented, VAGUE and NOREL
// dropped, EQUAL kept with source < target.
AggregatedRelations AggregateRelations(std::span<const ExtractionBundle> bundles,
                                       std::span<const EventNode> nodes,
                                       const InductionConfig &config);

struct StepList {
  std::string document_id;
  std::vector<std::string> steps;
};

// First content word of a step, lowercased ("Select a venue" -> "select").
std::optional<std::string> ExtractStepTrigger(std::string_view step);

// Node for a step trigger: exact lemma or a regular inflection of it, the
// most frequent node winning. nullopt if nothing matches.
std::optional<EventKey> MatchStepTrigger(std::string_view trigger,
                                         std::span<const EventNode> nodes);

// Adds BEFORE support from each steps document for consecutive mapped
// steps. Steps whose trigger maps to no node are skipped. Added support is
// not re-thresholded.
std::vector<TemporalEdge> ApplyDirectSteps(std::span<const StepList> step_lists,
                                           std::span<const EventNode> nodes,
                                           std::vector<TemporalEdge> edges);

// Canonical orderings.
void SortNodes(std::vector<EventNode> &nodes);
void SortEdges(std::vector<TemporalEdge> &edges);
void SortEdges(std::vector<HierEdge> &edges);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_AGGREGATION_H_
