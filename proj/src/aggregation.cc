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

#include "schema_forge/aggregation.h"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace schema_forge {

namespace {

// Per exact key: documents and argument fillers.
struct KeyStats {
  DocSet docs;
  ArgumentProfile profile;
};

void AddProfile(ArgumentProfile &into, const ArgumentProfile &from) {
  for (const auto &[role, fillers] : from) {
    for (const auto &[filler, count] : fillers) into[role][filler] += count;
  }
}

// Keys of every event mention in a bundle, by mention id.
std::map<std::string, EventKey> BundleKeys(const ExtractionBundle &bundle) {
  std::map<std::string, EventKey> keys;
  for (const EventMention &mention : bundle.events) {
    if (mention.trigger_lemma.empty()) continue;
    keys.emplace(mention.id,
                 CanonicalEventKey(mention, bundle.events, bundle.coref_clusters));
  }
  return keys;
}

bool NodeOrder(const EventNode &a, const EventNode &b) {
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  return a.key < b.key;
}

EventNode MakeNode(EventKey key, DocSet docs, ArgumentProfile profile,
                   std::vector<EventKey> members) {
  EventNode node;
  node.key = std::move(key);
  node.support_docs = std::move(docs);
  node.frequency = static_cast<int>(node.support_docs.size());
  node.argument_profile = std::move(profile);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  node.member_keys = std::move(members);
  node.display_label = DisplayLabel(node.key.lemma, node.argument_profile);
  return node;
}

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    for (size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  size_t Find(size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Lower index becomes the root; indices follow key order.
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<size_t> parent_;
};

bool IsWordChar(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '-' || c == '\'';
}

bool IsInflectionOf(const std::string &word, const std::string &lemma) {
  if (word == lemma) return true;
  for (const char *suffix : {"s", "es", "ed", "d", "ing"}) {
    if (word == lemma + suffix) return true;
  }
  if (lemma.size() > 1) {
    std::string stem = lemma.substr(0, lemma.size() - 1);
    if (lemma.back() == 'e' && word == stem + "ing") return true;
    if (lemma.back() == 'y' && (word == stem + "ies" || word == stem + "ied")) return true;
    // Doubled final consonant: plan -> planned, planning.
    const std::string doubled = lemma + lemma.back();
    if (word == doubled + "ed" || word == doubled + "ing") return true;
  }
  return false;
}

}  // namespace

std::string DisplayLabel(const std::string &lemma, const ArgumentProfile &profile) {
  auto top_head = [&](const std::string &role) -> std::string {
    auto it = profile.find(role);
    if (it == profile.end()) return "";
    const ArgumentFiller *best = nullptr;
    int best_count = 0;
    for (const auto &[filler, count] : it->second) {
      if (filler.head_text.empty()) continue;
      // Map iteration is sorted, so the first maximum is the smallest.
      if (count > best_count) {
        best = &filler;
        best_count = count;
      }
    }
    return best ? best->head_text : "";
  };
  std::vector<std::string> parts;
  if (std::string agent = top_head("ARG0"); !agent.empty()) parts.push_back(agent);
  parts.push_back(lemma);
  for (const auto &[role, fillers] : profile) {
    if (role == "ARG0") continue;
    if (std::string head = top_head(role); !head.empty()) parts.push_back(head);
  }
  std::string label;
  for (const std::string &p : parts) {
    if (!label.empty()) label += ' ';
    label += p;
  }
  return label;
}

void SortNodes(std::vector<EventNode> &nodes) {
  std::sort(nodes.begin(), nodes.end(), NodeOrder);
}

void SortEdges(std::vector<TemporalEdge> &edges) {
  std::sort(edges.begin(), edges.end(), [](const TemporalEdge &a, const TemporalEdge &b) {
    return std::tie(a.label, a.source, a.target) < std::tie(b.label, b.source, b.target);
  });
}

void SortEdges(std::vector<HierEdge> &edges) {
  std::sort(edges.begin(), edges.end(), [](const HierEdge &a, const HierEdge &b) {
    return std::tie(a.parent, a.child) < std::tie(b.parent, b.child);
  });
}

std::vector<EventNode> MergeEvents(std::span<const ExtractionBundle> bundles,
                                   const InductionConfig &config) {
  std::map<EventKey, KeyStats> stats;
  for (const ExtractionBundle &bundle : bundles) {
    const std::string &doc = bundle.document.id;
    auto keys = BundleKeys(bundle);
    for (const EventMention &mention : bundle.events) {
      auto it = keys.find(mention.id);
      if (it == keys.end()) continue;
      KeyStats &s = stats[it->second];
      s.docs.insert(doc);
      for (const ArgumentMention &arg : mention.arguments) {
        s.profile[arg.role][{arg.ner_type.value_or("ABSENT"), arg.head_text}] += 1;
      }
    }
  }

  // Within a lemma, fold exact keys into clusters of pairwise compatible
  // keys. Better supported keys seed clusters first, so a key missing a role
  // joins the dominant reading of that role.
  std::map<std::string, std::vector<const EventKey *>> by_lemma;
  for (const auto &[key, s] : stats) by_lemma[key.lemma].push_back(&key);

  std::vector<EventNode> nodes;
  for (auto &[lemma, keys] : by_lemma) {
    std::sort(keys.begin(), keys.end(), [&](const EventKey *a, const EventKey *b) {
      size_t da = stats[*a].docs.size(), db = stats[*b].docs.size();
      if (da != db) return da > db;
      return *a < *b;
    });
    std::vector<std::vector<const EventKey *>> clusters;
    for (const EventKey *key : keys) {
      bool placed = false;
      for (auto &cluster : clusters) {
        bool fits = std::all_of(cluster.begin(), cluster.end(),
                                [&](const EventKey *m) { return KeysCompatible(*m, *key); });
        if (fits) {
          cluster.push_back(key);
          placed = true;
          break;
        }
      }
      if (!placed) clusters.push_back({key});
    }
    for (const auto &cluster : clusters) {
      EventKey merged = *cluster.front();
      DocSet docs;
      ArgumentProfile profile;
      std::vector<EventKey> members;
      for (const EventKey *key : cluster) {
        merged = UnionKey(merged, *key);
        const KeyStats &s = stats[*key];
        docs.insert(s.docs.begin(), s.docs.end());
        AddProfile(profile, s.profile);
        members.push_back(*key);
      }
      if (static_cast<int>(docs.size()) < config.min_event_docs) continue;
      nodes.push_back(MakeNode(std::move(merged), std::move(docs), std::move(profile),
                               std::move(members)));
    }
  }
  SortNodes(nodes);
  return nodes;
}

AggregatedRelations AggregateRelations(std::span<const ExtractionBundle> bundles,
                                       std::span<const EventNode> nodes,
                                       const InductionConfig &config) {
  // Index nodes by key order so union-find roots are the smallest keys.
  std::vector<const EventNode *> ordered;
  for (const EventNode &n : nodes) ordered.push_back(&n);
  std::sort(ordered.begin(), ordered.end(),
            [](const EventNode *a, const EventNode *b) { return a->key < b->key; });
  std::map<EventKey, size_t> member_index;
  for (size_t i = 0; i < ordered.size(); ++i) {
    for (const EventKey &k : ordered[i]->member_keys) member_index.emplace(k, i);
  }
  for (size_t i = 0; i < ordered.size(); ++i) member_index.emplace(ordered[i]->key, i);

  std::map<std::tuple<size_t, size_t, EdgeLabel>, DocSet> temporal;
  std::map<std::pair<size_t, size_t>, DocSet> hier;
  std::map<std::pair<size_t, size_t>, DocSet> coref;

  for (const ExtractionBundle &bundle : bundles) {
    const std::string &doc = bundle.document.id;
    auto keys = BundleKeys(bundle);
    auto node_of = [&](const std::string &mention_id) -> std::optional<size_t> {
      auto k = keys.find(mention_id);
      if (k == keys.end()) return std::nullopt;
      auto n = member_index.find(k->second);
      if (n == member_index.end()) return std::nullopt;
      return n->second;
    };
    for (const TemporalRelationPred &p : bundle.temporal_preds) {
      if (p.confidence < config.min_confidence) continue;
      auto s = node_of(p.source_mention_id), t = node_of(p.target_mention_id);
      if (!s || !t || *s == *t) continue;
      switch (p.label) {
        case TemporalLabel::kBefore: temporal[{*s, *t, EdgeLabel::kBefore}].insert(doc); break;
        case TemporalLabel::kAfter: temporal[{*t, *s, EdgeLabel::kBefore}].insert(doc); break;
        case TemporalLabel::kEqual:
          temporal[{std::min(*s, *t), std::max(*s, *t), EdgeLabel::kEqual}].insert(doc);
          break;
        case TemporalLabel::kVague: break;
      }
    }
    for (const HierRelationPred &p : bundle.hier_preds) {
      if (p.confidence < config.min_confidence) continue;
      auto s = node_of(p.source_mention_id), t = node_of(p.target_mention_id);
      if (!s || !t || *s == *t) continue;
      switch (p.label) {
        case HierLabel::kParentChild: hier[{*s, *t}].insert(doc); break;
        case HierLabel::kChildParent: hier[{*t, *s}].insert(doc); break;
        case HierLabel::kCoref: coref[{std::min(*s, *t), std::max(*s, *t)}].insert(doc); break;
        case HierLabel::kNoRel: break;
      }
    }
  }

  AggregatedRelations out;
  UnionFind uf(ordered.size());
  for (const auto &[pair, docs] : coref) {
    if (static_cast<int>(docs.size()) < config.min_coref_hier_docs) continue;
    uf.Union(pair.first, pair.second);
    out.coref.push_back({ordered[pair.first]->key, ordered[pair.second]->key, docs});
  }

  // Merge nodes into their representatives.
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i = 0; i < ordered.size(); ++i) groups[uf.Find(i)].push_back(i);
  for (const auto &[root, members] : groups) {
    DocSet docs;
    ArgumentProfile profile;
    std::vector<EventKey> member_keys;
    for (size_t m : members) {
      const EventNode &n = *ordered[m];
      docs.insert(n.support_docs.begin(), n.support_docs.end());
      AddProfile(profile, n.argument_profile);
      member_keys.insert(member_keys.end(), n.member_keys.begin(), n.member_keys.end());
      member_keys.push_back(n.key);
    }
    if (members.size() == 1) {
      out.nodes.push_back(*ordered[root]);
    } else {
      out.nodes.push_back(MakeNode(ordered[root]->key, std::move(docs), std::move(profile),
                                   std::move(member_keys)));
    }
  }
  SortNodes(out.nodes);

  // Re-point edges at representatives, union supports, then threshold.
  std::map<std::tuple<size_t, size_t, EdgeLabel>, DocSet> merged_temporal;
  for (const auto &[edge, docs] : temporal) {
    auto [s, t, label] = edge;
    s = uf.Find(s);
    t = uf.Find(t);
    if (s == t) continue;
    if (label == EdgeLabel::kEqual && t < s) std::swap(s, t);
    merged_temporal[{s, t, label}].insert(docs.begin(), docs.end());
  }
  for (const auto &[edge, docs] : merged_temporal) {
    if (static_cast<int>(docs.size()) < config.min_temporal_docs) continue;
    const auto &[s, t, label] = edge;
    out.temporal.push_back({ordered[s]->key, ordered[t]->key, label, docs});
  }
  std::map<std::pair<size_t, size_t>, DocSet> merged_hier;
  for (const auto &[edge, docs] : hier) {
    size_t p = uf.Find(edge.first), c = uf.Find(edge.second);
    if (p == c) continue;
    merged_hier[{p, c}].insert(docs.begin(), docs.end());
  }
  for (const auto &[edge, docs] : merged_hier) {
    if (static_cast<int>(docs.size()) < config.min_coref_hier_docs) continue;
    out.hier.push_back({ordered[edge.first]->key, ordered[edge.second]->key, docs});
  }
  SortEdges(out.temporal);
  SortEdges(out.hier);
  return out;
}

std::optional<std::string> ExtractStepTrigger(std::string_view step) {
  static const std::unordered_set<std::string> kSkip = {
      "a",      "an",   "the",   "to",    "then",  "first",   "firstly", "second",
      "secondly", "next", "finally", "lastly", "and", "also",   "you",     "your",
      "should", "must", "need",  "needs", "will",  "can",     "it",      "be",
      "after",  "before", "once", "when",  "of",    "for",     "in",      "on",
      "by",     "with", "step",  "please", "always", "carefully", "now", "we"};
  size_t i = 0;
  while (i < step.size()) {
    while (i < step.size() && !IsWordChar(step[i])) ++i;
    size_t start = i;
    while (i < step.size() && IsWordChar(step[i])) ++i;
    if (start == i) break;
    std::string word(step.substr(start, i - start));
    for (char &c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    while (!word.empty() && (word.back() == '-' || word.back() == '\'')) word.pop_back();
    if (word.empty() || kSkip.count(word)) continue;
    return word;
  }
  return std::nullopt;
}

std::optional<EventKey> MatchStepTrigger(std::string_view trigger,
                                         std::span<const EventNode> nodes) {
  const EventNode *best = nullptr;
  std::string word(trigger);
  for (const EventNode &node : nodes) {
    if (!IsInflectionOf(word, node.key.lemma)) continue;
    if (best == nullptr || NodeOrder(node, *best)) best = &node;
  }
  if (best == nullptr) return std::nullopt;
  return best->key;
}

std::vector<TemporalEdge> ApplyDirectSteps(std::span<const StepList> step_lists,
                                           std::span<const EventNode> nodes,
                                           std::vector<TemporalEdge> edges) {
  for (const StepList &list : step_lists) {
    std::vector<EventKey> mapped;
    for (const std::string &step : list.steps) {
      auto trigger = ExtractStepTrigger(step);
      if (!trigger) continue;
      if (auto key = MatchStepTrigger(*trigger, nodes)) mapped.push_back(*key);
    }
    for (size_t i = 0; i + 1 < mapped.size(); ++i) {
      if (mapped[i] == mapped[i + 1]) continue;
      auto it = std::find_if(edges.begin(), edges.end(), [&](const TemporalEdge &e) {
        return e.label == EdgeLabel::kBefore && e.source == mapped[i] &&
               e.target == mapped[i + 1];
      });
      if (it == edges.end()) {
        edges.push_back({mapped[i], mapped[i + 1], EdgeLabel::kBefore, {list.document_id}});
      } else {
        it->support_docs.insert(list.document_id);
      }
    }
  }
  SortEdges(edges);
  return edges;
}

}  // namespace schema_forge
