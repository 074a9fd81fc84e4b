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

#ifndef SCHEMA_FORGE_EVENT_KEY_H_
#define SCHEMA_FORGE_EVENT_KEY_H_

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "schema_forge/core.h"

namespace schema_forge {

struct RoleType {
  std::string role;
  std::string ner_type;

  auto operator<=>(const RoleType &other) const = default;
};

// Cross-document identity of an event: a trigger lemma plus the NER types
// of its typed arguments. The signature is sorted and duplicate-free.
struct EventKey {
  std::string lemma;
  std::vector<RoleType> signature;

  auto operator<=>(const EventKey &other) const = default;
  bool operator==(const EventKey &other) const = default;

  // "lemma" or "lemma[ARG0:PER,ARG1:LOC]".
  std::string ToString() const;
};

// Builds a key from a lemma and unsorted (role, ner) pairs.
EventKey MakeEventKey(std::string lemma, std::vector<RoleType> signature);

// The key of a mention. The lemma is the lexicographically smallest trigger
// lemma of the event coreference cluster that holds the mention (within its
// own document), or the mention's own lemma when it is unclustered.
// Arguments whose NER type is ABSENT do not contribute to the signature.
EventKey CanonicalEventKey(const EventMention &mention,
                           std::span<const EventMention> document_events,
                           std::span<const CorefCluster> clusters);

// Merge test used across documents. Lemmas must be equal; for every role
// present on both sides the NER types must agree. A role present on only one
// side is a wildcard. Reflexive and symmetric, but not transitive.
bool KeysCompatible(const EventKey &a, const EventKey &b);

// Union of two compatible signatures.
EventKey UnionKey(const EventKey &a, const EventKey &b);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_EVENT_KEY_H_
