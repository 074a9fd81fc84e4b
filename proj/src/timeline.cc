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

#include "schema_forge/timeline.h"

#include <algorithm>
#include <map>
#include <set>

#include "schema_forge/errors.h"

namespace schema_forge {

namespace {

// Upper bound on search-tree nodes visited before declaring the input
// pathological.
constexpr long long kMaxSearchSteps = 50'000'000;

// Dense BEFORE relation over events indexed in key order, so comparing
// index sequences compares key sequences.
class BeforeGraph {
 public:
  explicit BeforeGraph(std::span<const TemporalEdge> edges) {
    std::set<EventKey> keys;
    for (const TemporalEdge &e : edges) {
      if (e.label != EdgeLabel::kBefore || e.source == e.target) continue;
      keys.insert(e.source);
      keys.insert(e.target);
    }
    keys_.assign(keys.begin(), keys.end());
    for (size_t i = 0; i < keys_.size(); ++i) index_[keys_[i]] = static_cast<int>(i);
    const size_t n = keys_.size();
    before_.assign(n, std::vector<char>(n, 0));
    for (const TemporalEdge &e : edges) {
      if (e.label != EdgeLabel::kBefore || e.source == e.target) continue;
      before_[index_[e.source]][index_[e.target]] = 1;
    }
  }

  int size() const { return static_cast<int>(keys_.size()); }
  bool before(int a, int b) const { return before_[a][b] != 0; }
  bool adjacent(int a, int b) const { return before_[a][b] || before_[b][a]; }
  const EventKey &key(int i) const { return keys_[i]; }

  // Topological order if the relation is acyclic (including 2-cycles).
  std::optional<std::vector<int>> TopologicalOrder() const {
    const int n = size();
    std::vector<int> indegree(n, 0);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) indegree[b] += before(a, b);
    }
    std::vector<int> order;
    std::set<int> ready;
    for (int v = 0; v < n; ++v) {
      if (indegree[v] == 0) ready.insert(v);
    }
    while (!ready.empty()) {
      int v = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(v);
      for (int w = 0; w < n; ++w) {
        if (before(v, w) && --indegree[w] == 0) ready.insert(w);
      }
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;
    return order;
  }

 private:
  std::vector<EventKey> keys_;
  std::map<EventKey, int> index_;
  std::vector<std::vector<char>> before_;
};

class ChainCollector {
 public:
  ChainCollector(int max_timelines) : max_timelines_(max_timelines) {}

  void Add(std::vector<int> chain) {
    if (chains_.insert(std::move(chain)).second &&
        static_cast<int>(chains_.size()) > max_timelines_) {
      throw ResourceLimit("more than " + std::to_string(max_timelines_) +
                          " maximal timelines");
    }
  }

  void Step() {
    if (++steps_ > kMaxSearchSteps) {
      throw ResourceLimit("timeline search exceeded " + std::to_string(kMaxSearchSteps) +
                          " steps");
    }
  }

  const std::set<std::vector<int>> &chains() const { return chains_; }

 private:
  int max_timelines_;
  long long steps_ = 0;
  std::set<std::vector<int>> chains_;
};

// Acyclic case: every clique of the underlying undirected graph has exactly
// one fully supported order (its topological order), so maximal timelines
// are maximal cliques. Bron-Kerbosch with Tomita pivoting.
class AcyclicSearch {
 public:
  AcyclicSearch(const BeforeGraph &graph, std::vector<int> topo, ChainCollector &out)
      : graph_(graph), rank_(graph.size()), out_(out) {
    for (size_t i = 0; i < topo.size(); ++i) rank_[topo[i]] = static_cast<int>(i);
  }

  void Run() {
    std::vector<int> all(graph_.size());
    for (int i = 0; i < graph_.size(); ++i) all[i] = i;
    std::vector<int> clique;
    Expand(clique, all, {});
  }

 private:
  void Expand(std::vector<int> &clique, std::vector<int> candidates, std::vector<int> excluded) {
    out_.Step();
    if (candidates.empty()) {
      if (excluded.empty()) {
        std::vector<int> chain = clique;
        std::sort(chain.begin(), chain.end(), [&](int a, int b) { return rank_[a] < rank_[b]; });
        out_.Add(std::move(chain));
      }
      return;
    }
    // Pivot maximizing neighbours among the candidates.
    int pivot = -1;
    int best = -1;
    for (const std::vector<int> *pool : {&candidates, &excluded}) {
      for (int u : *pool) {
        int count = 0;
        for (int v : candidates) count += graph_.adjacent(u, v);
        if (count > best) {
          best = count;
          pivot = u;
        }
      }
    }
    std::vector<int> branch;
    for (int v : candidates) {
      if (!graph_.adjacent(pivot, v)) branch.push_back(v);
    }
    for (int v : branch) {
      std::vector<int> next_candidates, next_excluded;
      for (int w : candidates) {
        if (graph_.adjacent(v, w)) next_candidates.push_back(w);
      }
      for (int w : excluded) {
        if (graph_.adjacent(v, w)) next_excluded.push_back(w);
      }
      clique.push_back(v);
      Expand(clique, std::move(next_candidates), std::move(next_excluded));
      clique.pop_back();
      candidates.erase(std::find(candidates.begin(), candidates.end(), v));
      excluded.push_back(v);
    }
  }

  const BeforeGraph &graph_;
  std::vector<int> rank_;
  ChainCollector &out_;
};

// General case (the relation has cycles, typically contradictory pairs).
// Bron-Kerbosch over sequences: a vertex extends a chain if it can be
// inserted at some position, and each insertion position is its own branch.
// Distinct positions give distinct relative orders, so branches never
// produce the same chain twice. Excluded vertices block reporting exactly
// as in the set version; pivoting is unsound here and is not used.
class CyclicSearch {
 public:
  CyclicSearch(const BeforeGraph &graph, ChainCollector &out) : graph_(graph), out_(out) {}

  void Run() {
    std::vector<int> all(graph_.size());
    for (int i = 0; i < graph_.size(); ++i) all[i] = i;
    std::vector<int> chain;
    Expand(chain, all, {});
  }

 private:
  // Positions p where chain[0..p) all precede v and chain[p..) all follow it.
  std::pair<int, int> Positions(const std::vector<int> &chain, int v) const {
    const int k = static_cast<int>(chain.size());
    int hi = 0;  // longest prefix preceding v
    while (hi < k && graph_.before(chain[hi], v)) ++hi;
    int lo = k;  // shortest start of a suffix following v
    while (lo > 0 && graph_.before(v, chain[lo - 1])) --lo;
    return {lo, hi};
  }

  bool Insertable(const std::vector<int> &chain, int v) const {
    auto [lo, hi] = Positions(chain, v);
    return lo <= hi;
  }

  void Expand(std::vector<int> &chain, std::vector<int> candidates, std::vector<int> excluded) {
    out_.Step();
    if (candidates.empty()) {
      if (excluded.empty()) out_.Add(chain);
      return;
    }
    while (!candidates.empty()) {
      int v = candidates.front();
      auto [lo, hi] = Positions(chain, v);
      for (int p = lo; p <= hi; ++p) {
        chain.insert(chain.begin() + p, v);
        std::vector<int> next_candidates, next_excluded;
        for (size_t i = 1; i < candidates.size(); ++i) {
          if (Insertable(chain, candidates[i])) next_candidates.push_back(candidates[i]);
        }
        for (int w : excluded) {
          if (Insertable(chain, w)) next_excluded.push_back(w);
        }
        Expand(chain, std::move(next_candidates), std::move(next_excluded));
        chain.erase(chain.begin() + p);
      }
      candidates.erase(candidates.begin());
      excluded.push_back(v);
    }
  }

  const BeforeGraph &graph_;
  ChainCollector &out_;
};

}  // namespace

void SortTimelines(std::vector<Timeline> &timelines) {
  std::sort(timelines.begin(), timelines.end(), [](const Timeline &a, const Timeline &b) {
    if (a.events.size() != b.events.size()) return a.events.size() > b.events.size();
    return a.events < b.events;
  });
}

bool IsFullySupported(std::span<const EventKey> events, std::span<const TemporalEdge> edges) {
  std::set<std::pair<EventKey, EventKey>> before;
  for (const TemporalEdge &e : edges) {
    if (e.label == EdgeLabel::kBefore) before.insert({e.source, e.target});
  }
  for (size_t i = 0; i < events.size(); ++i) {
    for (size_t j = i + 1; j < events.size(); ++j) {
      if (!before.count({events[i], events[j]})) return false;
    }
  }
  return true;
}

void AttachWitness(Timeline &timeline, std::span<const TemporalEdge> edges) {
  std::map<std::pair<EventKey, EventKey>, size_t> index;
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].label == EdgeLabel::kBefore) index.emplace(std::make_pair(edges[i].source, edges[i].target), i);
  }
  timeline.witness.clear();
  const auto &ev = timeline.events;
  for (size_t i = 0; i < ev.size(); ++i) {
    for (size_t j = i + 1; j < ev.size(); ++j) {
      auto it = index.find({ev[i], ev[j]});
      if (it == index.end()) {
        throw InvariantViolation("timeline pair (" + ev[i].ToString() + ", " + ev[j].ToString() +
                                 ") has no BEFORE edge");
      }
      timeline.witness.push_back(it->second);
    }
  }
}

std::vector<Timeline> BuildTimelines(std::span<const TemporalEdge> edges, int max_timelines) {
  BeforeGraph graph(edges);
  ChainCollector collector(max_timelines);
  if (auto topo = graph.TopologicalOrder()) {
    AcyclicSearch(graph, std::move(*topo), collector).Run();
  } else {
    CyclicSearch(graph, collector).Run();
  }

  std::vector<Timeline> timelines;
  for (const std::vector<int> &chain : collector.chains()) {
    if (chain.size() < 2) continue;  // isolated events carry no order
    Timeline t;
    for (int v : chain) t.events.push_back(graph.key(v));
    AttachWitness(t, edges);
    timelines.push_back(std::move(t));
  }
  SortTimelines(timelines);
  return timelines;
}

}  // namespace schema_forge
