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

#include "schema_forge/event_key.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace schema_forge {

namespace {

std::string Lowercase(std::string_view text) {
  std::string out(text);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Role -> set of NER types on that role.
std::map<std::string, std::set<std::string>> RoleTypes(const EventKey &key) {
  std::map<std::string, std::set<std::string>> types;
  for (const RoleType &rt : key.signature) types[rt.role].insert(rt.ner_type);
  return types;
}

}  // namespace

std::string EventKey::ToString() const {
  if (signature.empty()) return lemma;
  std::string out = lemma + "[";
  for (size_t i = 0; i < signature.size(); ++i) {
    if (i > 0) out += ",";
    out += signature[i].role + ":" + signature[i].ner_type;
  }
  out += "]";
  return out;
}

EventKey MakeEventKey(std::string lemma, std::vector<RoleType> signature) {
  std::sort(signature.begin(), signature.end());
  signature.erase(std::unique(signature.begin(), signature.end()),
                  signature.end());
  return EventKey{Lowercase(lemma), std::move(signature)};
}

EventKey CanonicalEventKey(const EventMention &mention,
                           std::span<const EventMention> document_events,
                           std::span<const CorefCluster> clusters) {
  std::string lemma = Lowercase(mention.trigger_lemma);
  for (const CorefCluster &cluster : clusters) {
    if (cluster.kind != CorefKind::kEvent) continue;
    if (cluster.document_id != mention.document_id) continue;
    const auto &members = cluster.member_mention_ids;
    if (std::find(members.begin(), members.end(), mention.id) == members.end()) {
      continue;
    }
    for (const EventMention &other : document_events) {
      if (other.document_id != mention.document_id) continue;
      if (std::find(members.begin(), members.end(), other.id) == members.end()) {
        continue;
      }
      std::string other_lemma = Lowercase(other.trigger_lemma);
      if (!other_lemma.empty() && other_lemma < lemma) lemma = other_lemma;
    }
  }

  std::vector<RoleType> signature;
  for (const ArgumentMention &arg : mention.arguments) {
    if (arg.ner_type.has_value()) signature.push_back({arg.role, *arg.ner_type});
  }
  return MakeEventKey(std::move(lemma), std::move(signature));
}

bool KeysCompatible(const EventKey &a, const EventKey &b) {
  if (a.lemma != b.lemma) return false;
  auto types_a = RoleTypes(a);
  auto types_b = RoleTypes(b);
  for (const auto &[role, types] : types_a) {
    auto it = types_b.find(role);
    if (it != types_b.end() && it->second != types) return false;
  }
  return true;
}

EventKey UnionKey(const EventKey &a, const EventKey &b) {
  std::vector<RoleType> signature = a.signature;
  signature.insert(signature.end(), b.signature.begin(), b.signature.end());
  return MakeEventKey(a.lemma, std::move(signature));
}

}  // namespace schema_forge
