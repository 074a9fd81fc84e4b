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

// Timelines are chains e1 .. ek in which BEFORE(ei, ej) holds for every
// i < j, not only for neighbours. BuildTimelines returns every maximal such
// chain: nothing can be prepended, appended or inserted without breaking
// pairwise support.

#ifndef SCHEMA_FORGE_TIMELINE_H_
#define SCHEMA_FORGE_TIMELINE_H_

#include <span>
#include <vector>

#include "schema_forge/aggregation.h"
#include "schema_forge/event_key.h"

namespace schema_forge {

struct Timeline {
  std::vector<EventKey> events;
  // Index into the input edge list of the BEFORE edge supporting each pair
  // (i, j), i < j, in row-major order. Empty for timelines not built from an
  // edge list.
  std::vector<size_t> witness;

  bool operator==(const Timeline &other) const = default;
};

// Length descending, then lexicographic event sequence.
void SortTimelines(std::vector<Timeline> &timelines);

// True if every ordered pair of the sequence has a BEFORE edge.
bool IsFullySupported(std::span<const EventKey> events, std::span<const TemporalEdge> edges);

// Fills Timeline::witness from the edge list. Throws InvariantViolation if a
// pair is unsupported.
void AttachWitness(Timeline &timeline, std::span<const TemporalEdge> edges);

// All maximal fully supported chains over the BEFORE edges, deduplicated and
// sorted. EQUAL edges and self-loops are ignored. Throws ResourceLimit when
// more than max_timelines chains exist.
std::vector<Timeline> BuildTimelines(std::span<const TemporalEdge> edges,
                                     int max_timelines = 10000);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_TIMELINE_H_
