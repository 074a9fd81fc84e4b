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

#include "schema_forge/assembly.h"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "schema_forge/errors.h"

namespace schema_forge {

// ---------------------------------------------------------------------------
// Hierarchy.

bool HierarchyForest::Add(const EventKey &parent, const EventKey &child) {
  if (parent == child || parent_of_.count(child)) return false;
  if (IsAncestor(child, parent)) return false;
  parent_of_.emplace(child, parent);
  return true;
}

const EventKey *HierarchyForest::ParentOf(const EventKey &key) const {
  auto it = parent_of_.find(key);
  return it == parent_of_.end() ? nullptr : &it->second;
}

bool HierarchyForest::IsAncestor(const EventKey &ancestor, const EventKey &key) const {
  const EventKey *p = ParentOf(key);
  while (p != nullptr) {
    if (*p == ancestor) return true;
    p = ParentOf(*p);
  }
  return false;
}

std::vector<EventKey> HierarchyForest::Ancestors(const EventKey &key) const {
  std::vector<EventKey> out;
  for (const EventKey *p = ParentOf(key); p != nullptr; p = ParentOf(*p)) out.push_back(*p);
  return out;
}

std::vector<EventKey> HierarchyForest::Roots() const {
  std::set<EventKey> roots;
  for (const auto &[child, parent] : parent_of_) {
    if (!parent_of_.count(parent)) roots.insert(parent);
  }
  return {roots.begin(), roots.end()};
}

std::vector<std::pair<EventKey, EventKey>> HierarchyForest::Edges() const {
  std::vector<std::pair<EventKey, EventKey>> edges;
  for (const auto &[child, parent] : parent_of_) edges.emplace_back(parent, child);
  std::sort(edges.begin(), edges.end());
  return edges;
}

HierarchyForest BuildHierarchyForest(std::span<const HierEdge> edges) {
  std::vector<const HierEdge *> order;
  for (const HierEdge &e : edges) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const HierEdge *a, const HierEdge *b) {
    if (a->support_docs.size() != b->support_docs.size()) {
      return a->support_docs.size() > b->support_docs.size();
    }
    if (a->parent != b->parent) return a->parent < b->parent;
    return a->child < b->child;
  });
  HierarchyForest forest;
  for (const HierEdge *e : order) {
    if (!forest.Add(e->parent, e->child)) forest.dropped.push_back(*e);
  }
  return forest;
}

namespace {

std::vector<Timeline> DropShortAndDuplicates(std::vector<Timeline> timelines) {
  std::vector<Timeline> out;
  std::set<std::vector<EventKey>> seen;
  for (Timeline &t : timelines) {
    if (t.events.size() < 2) continue;
    if (!seen.insert(t.events).second) continue;
    out.push_back(std::move(t));
  }
  SortTimelines(out);
  return out;
}

}  // namespace

std::vector<Timeline> RepairTimelines(std::span<const Timeline> timelines,
                                      const HierarchyForest &forest) {
  std::vector<Timeline> repaired;
  for (const Timeline &t : timelines) {
    std::set<EventKey> present(t.events.begin(), t.events.end());
    Timeline fixed;
    for (const EventKey &e : t.events) {
      auto ancestors = forest.Ancestors(e);
      bool shadowed = std::any_of(ancestors.begin(), ancestors.end(),
                                  [&](const EventKey &a) { return present.count(a) > 0; });
      if (!shadowed) fixed.events.push_back(e);
    }
    // Witness indices refer to pairs of the original chain; recompute only
    // when nothing was removed.
    if (fixed.events.size() == t.events.size()) fixed.witness = t.witness;
    repaired.push_back(std::move(fixed));
  }
  return DropShortAndDuplicates(std::move(repaired));
}

std::vector<Timeline> RepairAcrossTimelines(std::span<const Timeline> timelines,
                                            const HierarchyForest &forest) {
  std::set<EventKey> present;
  for (const Timeline &t : timelines) present.insert(t.events.begin(), t.events.end());
  std::vector<Timeline> repaired;
  for (const Timeline &t : timelines) {
    Timeline fixed;
    for (const EventKey &e : t.events) {
      auto ancestors = forest.Ancestors(e);
      bool shadowed = std::any_of(ancestors.begin(), ancestors.end(),
                                  [&](const EventKey &a) { return present.count(a) > 0; });
      if (!shadowed) fixed.events.push_back(e);
    }
    if (fixed.events.size() == t.events.size()) fixed.witness = t.witness;
    repaired.push_back(std::move(fixed));
  }
  return DropShortAndDuplicates(std::move(repaired));
}

// ---------------------------------------------------------------------------
// Logical groups.

std::string_view ConnectiveName(Connective connective) {
  switch (connective) {
    case Connective::kSingle: return "SINGLE";
    case Connective::kAnd: return "AND";
    case Connective::kOr: return "OR";
  }
  return "SINGLE";
}

Connective ParseConnective(std::string_view name) {
  if (name == "SINGLE") return Connective::kSingle;
  if (name == "AND") return Connective::kAnd;
  if (name == "OR") return Connective::kOr;
  throw ParseError("unknown connective '" + std::string(name) + "'");
}

namespace {

using Matrix = std::vector<std::vector<char>>;

Matrix Square(size_t n) { return Matrix(n, std::vector<char>(n, 0)); }

// Merges one family of timelines that are connected through shared events.
// Events are indices into `keys`, which is sorted.
class FamilyMerger {
 public:
  FamilyMerger(const std::vector<EventKey> &keys, const std::vector<int> &freq,
               const std::vector<std::vector<int>> &sequences)
      : keys_(keys), freq_(freq), sequences_(sequences) {}

  std::vector<LogicalGroup> Run() {
    BuildUnits();
    std::vector<std::vector<int>> groups = FuseAlternatives();
    std::vector<int> order = OrderGroups(groups);
    std::vector<LogicalGroup> out;
    for (int g : order) {
      LogicalGroup group;
      std::vector<int> events;
      for (int u : groups[g]) events.insert(events.end(), units_[u].begin(), units_[u].end());
      std::sort(events.begin(), events.end());
      for (int e : events) group.members.push_back(keys_[e]);
      if (events.size() == 1) {
        group.connective = Connective::kSingle;
      } else if (groups[g].size() == 1) {
        group.connective = Connective::kAnd;
      } else {
        group.connective = Connective::kOr;
      }
      out.push_back(std::move(group));
    }
    return out;
  }

 private:
  // Ranking used for every tie-break: frequency desc, then smallest key.
  bool Better(int freq_a, int key_a, int freq_b, int key_b) const {
    if (freq_a != freq_b) return freq_a > freq_b;
    return key_a < key_b;
  }

  // Units are strongly connected components of the precedence relation.
  void BuildUnits() {
    const size_t n = keys_.size();
    Matrix reach = Square(n);
    for (const auto &seq : sequences_) {
      for (size_t i = 0; i < seq.size(); ++i) {
        for (size_t j = i + 1; j < seq.size(); ++j) reach[seq[i]][seq[j]] = 1;
      }
    }
    prec_ = reach;
    for (size_t k = 0; k < n; ++k) {
      for (size_t i = 0; i < n; ++i) {
        if (!reach[i][k]) continue;
        for (size_t j = 0; j < n; ++j) {
          if (reach[k][j]) reach[i][j] = 1;
        }
      }
    }
    std::set<int> present;
    for (const auto &seq : sequences_) present.insert(seq.begin(), seq.end());
    unit_of_.assign(n, -1);
    for (int e : present) {
      if (unit_of_[e] != -1) continue;
      const int u = static_cast<int>(units_.size());
      units_.push_back({});
      for (int f : present) {
        if (f == e || (reach[e][f] && reach[f][e])) {
          unit_of_[f] = u;
          units_.back().push_back(f);
        }
      }
    }
    const size_t m = units_.size();
    unit_prec_ = Square(m);
    unit_co_ = Square(m);
    immediate_.assign(m, {});
    for (const auto &seq : sequences_) {
      std::vector<int> useq;
      for (int e : seq) {
        if (useq.empty() || useq.back() != unit_of_[e]) useq.push_back(unit_of_[e]);
      }
      for (size_t i = 0; i < useq.size(); ++i) {
        immediate_[useq[i]].insert(i == 0 ? -1 : useq[i - 1]);
        for (size_t j = 0; j < useq.size(); ++j) {
          if (i == j) continue;
          unit_co_[useq[i]][useq[j]] = 1;
          if (i < j) unit_prec_[useq[i]][useq[j]] = 1;
        }
      }
    }
  }

  int UnitFreq(int u) const {
    int best = 0;
    for (int e : units_[u]) best = std::max(best, freq_[e]);
    return best;
  }
  int UnitKey(int u) const { return *std::min_element(units_[u].begin(), units_[u].end()); }

  bool Alternatives(int u, int v) const {
    if (unit_co_[u][v]) return false;
    if (immediate_[u] != immediate_[v]) return false;
    bool any_anchor = false;
    for (size_t w = 0; w < units_.size(); ++w) {
      if (static_cast<int>(w) == u || static_cast<int>(w) == v) continue;
      if (!unit_co_[w][u] || !unit_co_[w][v]) continue;
      any_anchor = true;
      if (unit_prec_[w][u] != unit_prec_[w][v]) return false;
      if (unit_prec_[u][w] != unit_prec_[v][w]) return false;
    }
    return any_anchor;
  }

  // Greedy clustering of single-event units into OR groups.
  std::vector<std::vector<int>> FuseAlternatives() {
    std::vector<int> order(units_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return Better(UnitFreq(a), UnitKey(a), UnitFreq(b), UnitKey(b));
    });
    std::vector<std::vector<int>> groups;
    for (int u : order) {
      bool placed = false;
      if (units_[u].size() == 1) {
        for (auto &g : groups) {
          if (units_[g.front()].size() != 1) continue;
          if (std::all_of(g.begin(), g.end(), [&](int v) { return Alternatives(u, v); })) {
            g.push_back(u);
            placed = true;
            break;
          }
        }
      }
      if (!placed) groups.push_back({u});
    }
    return groups;
  }

  std::vector<int> OrderGroups(const std::vector<std::vector<int>> &groups) {
    const size_t g = groups.size();
    Matrix gprec = Square(g);
    for (size_t a = 0; a < g; ++a) {
      for (size_t b = 0; b < g; ++b) {
        if (a == b) continue;
        for (int u : groups[a]) {
          for (int v : groups[b]) {
            if (unit_prec_[u][v]) gprec[a][b] = 1;
          }
        }
      }
    }
    std::vector<int> freq(g), key(g);
    for (size_t a = 0; a < g; ++a) {
      freq[a] = 0;
      key[a] = static_cast<int>(keys_.size());
      for (int u : groups[a]) {
        freq[a] = std::max(freq[a], UnitFreq(u));
        key[a] = std::min(key[a], UnitKey(u));
      }
    }
    std::vector<int> indegree(g, 0);
    for (size_t a = 0; a < g; ++a) {
      for (size_t b = 0; b < g; ++b) indegree[b] += gprec[a][b];
    }
    std::vector<char> done(g, 0);
    std::vector<int> order;
    while (order.size() < g) {
      int pick = -1;
      for (size_t a = 0; a < g; ++a) {
        if (done[a] || indegree[a] != 0) continue;
        if (pick < 0 || Better(freq[a], key[a], freq[pick], key[pick])) pick = static_cast<int>(a);
      }
      if (pick < 0) {
        // Residual cycle through an OR group; release the best-ranked group.
        for (size_t a = 0; a < g; ++a) {
          if (done[a]) continue;
          if (pick < 0 || Better(freq[a], key[a], freq[pick], key[pick])) pick = static_cast<int>(a);
        }
      }
      done[pick] = 1;
      order.push_back(pick);
      for (size_t b = 0; b < g; ++b) {
        if (gprec[pick][b]) --indegree[b];
      }
    }
    return order;
  }

  const std::vector<EventKey> &keys_;
  const std::vector<int> &freq_;
  const std::vector<std::vector<int>> &sequences_;
  Matrix prec_;
  std::vector<int> unit_of_;
  std::vector<std::vector<int>> units_;
  Matrix unit_prec_;
  Matrix unit_co_;
  std::vector<std::set<int>> immediate_;  // -1 marks the timeline start
};

}  // namespace

LogicalMerge InduceLogicalGroups(std::span<const Timeline> timelines,
                                 std::span<const EventNode> nodes) {
  LogicalMerge merge;
  std::set<EventKey> key_set;
  for (const Timeline &t : timelines) key_set.insert(t.events.begin(), t.events.end());
  if (key_set.empty()) return merge;
  std::vector<EventKey> keys(key_set.begin(), key_set.end());
  auto index_of = [&](const EventKey &k) {
    return static_cast<int>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin());
  };
  std::vector<int> freq(keys.size(), 0);
  for (const EventNode &n : nodes) {
    auto it = std::lower_bound(keys.begin(), keys.end(), n.key);
    if (it != keys.end() && *it == n.key) freq[it - keys.begin()] = n.frequency;
  }

  // Families: timelines connected through shared events.
  std::vector<int> family(keys.size());
  std::iota(family.begin(), family.end(), 0);
  std::function<int(int)> find = [&](int x) { return family[x] == x ? x : family[x] = find(family[x]); };
  std::vector<std::vector<int>> sequences;
  for (const Timeline &t : timelines) {
    std::vector<int> seq;
    for (const EventKey &k : t.events) seq.push_back(index_of(k));
    for (size_t i = 1; i < seq.size(); ++i) {
      int a = find(seq[0]), b = find(seq[i]);
      if (a != b) family[std::max(a, b)] = std::min(a, b);
    }
    if (!seq.empty()) sequences.push_back(std::move(seq));
  }
  std::map<int, std::vector<std::vector<int>>> families;
  for (const auto &seq : sequences) families[find(seq.front())].push_back(seq);

  std::vector<std::vector<LogicalGroup>> merged;
  for (const auto &[root, seqs] : families) merged.push_back(FamilyMerger(keys, freq, seqs).Run());
  merge.families = static_cast<int>(merged.size());
  if (merged.size() > 1) {
    auto lead = [&](const std::vector<LogicalGroup> &groups) {
      int best = 0;
      for (const EventKey &k : groups.front().members) best = std::max(best, freq[index_of(k)]);
      return std::make_pair(-best, groups.front().members.front());
    };
    std::sort(merged.begin(), merged.end(),
              [&](const auto &a, const auto &b) { return lead(a) < lead(b); });
    merge.notes.push_back(std::to_string(merged.size()) +
                          " timeline families share no events; concatenated by the "
                          "frequency of their first event");
  }
  for (auto &groups : merged) {
    for (LogicalGroup &g : groups) merge.groups.push_back(std::move(g));
  }
  return merge;
}

// ---------------------------------------------------------------------------
// Schema.

void CheckSchemaInvariants(const SchemaGraph &schema) {
  std::set<EventKey> node_keys;
  for (const EventNode &n : schema.nodes) {
    if (!node_keys.insert(n.key).second) {
      throw InvariantViolation("two nodes share key " + n.key.ToString());
    }
  }
  std::set<EventKey> grouped;
  for (const LogicalGroup &g : schema.ordered_groups) {
    const bool single = g.members.size() == 1;
    if (g.members.empty() || single != (g.connective == Connective::kSingle)) {
      throw InvariantViolation("group connective " + std::string(ConnectiveName(g.connective)) +
                               " does not match its " + std::to_string(g.members.size()) +
                               " members");
    }
    for (const EventKey &k : g.members) {
      if (!node_keys.count(k)) throw InvariantViolation("group member " + k.ToString() + " is not a node");
      if (!grouped.insert(k).second) throw InvariantViolation(k.ToString() + " appears in two groups");
    }
  }
  HierarchyForest forest;
  for (const auto &[parent, child] : schema.hierarchy_edges) {
    if (!node_keys.count(parent) || !node_keys.count(child)) {
      throw InvariantViolation("hierarchy edge " + parent.ToString() + " -> " + child.ToString() +
                               " references a missing node");
    }
    if (!forest.Add(parent, child)) {
      throw InvariantViolation("hierarchy edge " + parent.ToString() + " -> " + child.ToString() +
                               " breaks the forest");
    }
  }
  for (const EventKey &k : grouped) {
    for (const EventKey &a : forest.Ancestors(k)) {
      if (grouped.count(a)) {
        throw InvariantViolation(k.ToString() + " shares the backbone with its ancestor " +
                                 a.ToString());
      }
    }
  }
}

SchemaGraph AssembleSchema(const Topic &topic, std::vector<EventNode> nodes,
                           std::vector<LogicalGroup> groups, const HierarchyForest &forest,
                           std::span<const TemporalEdge> temporal, Provenance provenance,
                           std::vector<std::string> *notes) {
  auto note = [&](std::string text) {
    if (notes != nullptr) notes->push_back(std::move(text));
  };
  std::set<EventKey> node_keys;
  for (const EventNode &n : nodes) node_keys.insert(n.key);

  // Pairs that must share a group: EQUAL, and BEFORE in both directions.
  std::set<std::pair<EventKey, EventKey>> before;
  std::set<std::pair<EventKey, EventKey>> fuse;
  for (const TemporalEdge &e : temporal) {
    if (e.label == EdgeLabel::kBefore) before.insert({e.source, e.target});
  }
  for (const TemporalEdge &e : temporal) {
    auto pair = std::minmax(e.source, e.target);
    if (e.label == EdgeLabel::kEqual || before.count({e.target, e.source})) {
      fuse.insert({pair.first, pair.second});
    }
  }

  auto group_of = [&](const EventKey &k) -> int {
    for (size_t i = 0; i < groups.size(); ++i) {
      const auto &m = groups[i].members;
      if (std::binary_search(m.begin(), m.end(), k)) return static_cast<int>(i);
    }
    return -1;
  };
  auto backbone_conflicts = [&](const EventKey &k) {
    for (const LogicalGroup &g : groups) {
      for (const EventKey &m : g.members) {
        if (forest.IsAncestor(m, k) || forest.IsAncestor(k, m)) return true;
      }
    }
    return false;
  };
  auto fusable = [](const LogicalGroup &g) { return g.connective != Connective::kOr; };

  for (const auto &[a, b] : fuse) {
    if (!node_keys.count(a) || !node_keys.count(b)) continue;
    if (forest.IsAncestor(a, b) || forest.IsAncestor(b, a)) continue;
    int ga = group_of(a), gb = group_of(b);
    if (ga >= 0 && ga == gb) continue;
    if (ga >= 0 && gb >= 0) {
      if (!fusable(groups[ga]) || !fusable(groups[gb])) {
        note("kept " + a.ToString() + " / " + b.ToString() + " apart: one sits in an OR group");
        continue;
      }
      int keep = std::min(ga, gb), drop = std::max(ga, gb);
      auto &members = groups[keep].members;
      members.insert(members.end(), groups[drop].members.begin(), groups[drop].members.end());
      std::sort(members.begin(), members.end());
      groups[keep].connective = Connective::kAnd;
      groups.erase(groups.begin() + drop);
    } else if (ga >= 0 || gb >= 0) {
      int g = ga >= 0 ? ga : gb;
      const EventKey &outside = ga >= 0 ? b : a;
      if (!fusable(groups[g]) || backbone_conflicts(outside)) continue;
      auto &members = groups[g].members;
      members.insert(std::upper_bound(members.begin(), members.end(), outside), outside);
      groups[g].connective = Connective::kAnd;
    }
  }

  SchemaGraph schema;
  schema.topic = topic.name();
  schema.ordered_groups = std::move(groups);
  schema.hierarchy_edges = forest.Edges();
  SortNodes(nodes);
  schema.nodes = std::move(nodes);
  std::sort(provenance.document_ids.begin(), provenance.document_ids.end());
  schema.provenance = std::move(provenance);
  CheckSchemaInvariants(schema);
  return schema;
}

}  // namespace schema_forge
