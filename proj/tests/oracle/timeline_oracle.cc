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

#include "oracle/timeline_oracle.h"

#include <algorithm>
#include <set>

#include "schema_forge/errors.h"

namespace schema_forge::testing {

namespace {

using Relation = std::set<std::pair<EventKey, EventKey>>;

bool Supported(const std::vector<EventKey> &seq, const Relation &before) {
  for (size_t i = 0; i < seq.size(); ++i) {
    for (size_t j = i + 1; j < seq.size(); ++j) {
      if (!before.count({seq[i], seq[j]})) return false;
    }
  }
  return true;
}

// Every permutation of every subset, grown one element at a time; invalid
// prefixes are cut since no extension of them can be valid.
void Enumerate(const std::vector<EventKey> &events, const Relation &before,
               std::vector<EventKey> &seq, std::vector<bool> &used,
               std::vector<std::vector<EventKey>> &out) {
  if (seq.size() >= 2) out.push_back(seq);
  for (size_t i = 0; i < events.size(); ++i) {
    if (used[i]) continue;
    seq.push_back(events[i]);
    if (Supported(seq, before)) {
      used[i] = true;
      Enumerate(events, before, seq, used, out);
      used[i] = false;
    }
    seq.pop_back();
  }
}

}  // namespace

std::vector<Timeline> BruteForceTimelines(std::span<const TemporalEdge> edges) {
  Relation before;
  std::set<EventKey> event_set;
  for (const TemporalEdge &e : edges) {
    if (e.label != EdgeLabel::kBefore || e.source == e.target) continue;
    before.insert({e.source, e.target});
    event_set.insert(e.source);
    event_set.insert(e.target);
  }
  if (event_set.size() > 12) throw TooLarge("brute force supports at most 12 events");
  std::vector<EventKey> events(event_set.begin(), event_set.end());

  std::vector<std::vector<EventKey>> chains;
  std::vector<EventKey> seq;
  std::vector<bool> used(events.size(), false);
  Enumerate(events, before, seq, used, chains);

  std::vector<Timeline> out;
  for (const auto &chain : chains) {
    bool maximal = true;
    for (const EventKey &x : events) {
      if (std::find(chain.begin(), chain.end(), x) != chain.end()) continue;
      for (size_t p = 0; p <= chain.size() && maximal; ++p) {
        std::vector<EventKey> extended = chain;
        extended.insert(extended.begin() + static_cast<long>(p), x);
        if (Supported(extended, before)) maximal = false;
      }
      if (!maximal) break;
    }
    if (!maximal) continue;
    Timeline t;
    t.events = chain;
    AttachWitness(t, edges);
    out.push_back(std::move(t));
  }
  SortTimelines(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace schema_forge::testing
