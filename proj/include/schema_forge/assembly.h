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

// Final schema assembly: hierarchy forest, timeline repair against the
// hierarchy, AND/OR merging of timelines into one ordered backbone, and the
// SchemaGraph itself.

#ifndef SCHEMA_FORGE_ASSEMBLY_H_
#define SCHEMA_FORGE_ASSEMBLY_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schema_forge/aggregation.h"
#include "schema_forge/core.h"
#include "schema_forge/timeline.h"

namespace schema_forge {

class HierarchyForest {
 public:
  // Adds parent -> child. Returns false, leaving the forest unchanged, if
  // the child already has a parent or the edge would close a cycle.
  bool Add(const EventKey &parent, const EventKey &child);

  const EventKey *ParentOf(const EventKey &key) const;
  bool IsAncestor(const EventKey &ancestor, const EventKey &key) const;
  std::vector<EventKey> Ancestors(const EventKey &key) const;
  // Nodes with children but no parent, sorted.
  std::vector<EventKey> Roots() const;
  // (parent, child) pairs sorted by parent then child.
  std::vector<std::pair<EventKey, EventKey>> Edges() const;
  bool empty() const { return parent_of_.empty(); }

  // Edges rejected while building, in processing order.
  std::vector<HierEdge> dropped;

 private:
  std::map<EventKey, EventKey> parent_of_;
};

// Edges are taken by support descending, then parent, then child; an edge
// whose child already has a parent or that would close a cycle is dropped.
HierarchyForest BuildHierarchyForest(std::span<const HierEdge> edges);

// Removes from each timeline every event whose hierarchy ancestor is also in
// that timeline. Timelines shorter than two events are dropped; duplicates
// are removed.
std::vector<Timeline> RepairTimelines(std::span<const Timeline> timelines,
                                      const HierarchyForest &forest);

// Second pass over a repaired set: removes events whose ancestor occurs in
// any other timeline, since all timelines end up on one backbone.
std::vector<Timeline> RepairAcrossTimelines(std::span<const Timeline> timelines,
                                            const HierarchyForest &forest);

enum class Connective { kSingle, kAnd, kOr };

std::string_view ConnectiveName(Connective connective);
Connective ParseConnective(std::string_view name);

struct LogicalGroup {
  std::vector<EventKey> members;  // sorted
  Connective connective = Connective::kSingle;

  bool operator==(const LogicalGroup &other) const = default;
};

struct LogicalMerge {
  std::vector<LogicalGroup> groups;  // earliest first
  // Number of timeline families sharing no event. More than one means the
  // families were concatenated.
  int families = 0;
  std::vector<std::string> notes;
};

// Merges timelines into one ordered group sequence:
//  - events seen in both orders (more generally, any precedence cycle) are
//    fused into an AND group;
//  - two single events that never share a timeline are fused into an OR
//    group when they have the same predecessors and successors among the
//    events that co-occur with both, and the same immediate predecessors;
//  - groups are ordered topologically, ties by (frequency desc, key).
// Frequencies come from the nodes; keys missing from them count as 0.
LogicalMerge InduceLogicalGroups(std::span<const Timeline> timelines,
                                 std::span<const EventNode> nodes = {});

struct Provenance {
  InductionConfig config;
  std::vector<std::string> document_ids;

  bool operator==(const Provenance &other) const = default;
};

struct SchemaGraph {
  std::string topic;
  std::vector<LogicalGroup> ordered_groups;
  std::vector<std::pair<EventKey, EventKey>> hierarchy_edges;  // (parent, child)
  std::vector<EventNode> nodes;
  Provenance provenance;

  bool operator==(const SchemaGraph &other) const = default;
};

// Throws InvariantViolation naming the first broken invariant.
void CheckSchemaInvariants(const SchemaGraph &schema);

// Builds the schema. EQUAL edges, and BEFORE edges present in both
// directions, fuse their endpoints into one AND group when they are not
// already grouped together and neither is the other's hierarchy ancestor.
// Throws InvariantViolation if the inputs are inconsistent.
SchemaGraph AssembleSchema(const Topic &topic, std::vector<EventNode> nodes,
                           std::vector<LogicalGroup> groups, const HierarchyForest &forest,
                           std::span<const TemporalEdge> temporal, Provenance provenance,
                           std::vector<std::string> *notes = nullptr);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_ASSEMBLY_H_
