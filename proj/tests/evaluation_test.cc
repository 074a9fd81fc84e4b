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


#include <gtest/gtest.h>

#include <random>
#include <set>

#include "schema_forge/bundle_io.h"
#include "schema_forge/errors.h"
#include "schema_forge/evaluation.h"
#include "test_util.h"

namespace schema_forge {
namespace {

using testing::Key;
using testing::Node;

GoldSchema Gold(std::vector<std::string> events, std::vector<GoldRelation> relations = {},
                std::string final_event = "") {
  GoldSchema g;
  g.topic = "t";
  g.events = std::move(events);
  g.relations = std::move(relations);
  g.final_event = final_event.empty() && !g.events.empty() ? g.events.back() : final_event;
  return g;
}

// Schema whose backbone is one group per entry; an entry with several
// lemmas becomes an AND group.
SchemaGraph Backbone(const std::vector<std::vector<std::string>> &groups,
                     const std::vector<std::string> &extra = {},
                     const std::map<std::string, int> &freq = {}) {
  std::vector<EventNode> nodes;
  std::vector<LogicalGroup> out;
  auto add = [&](const std::string &l) {
    auto it = freq.find(l);
    nodes.push_back(Node(l, it == freq.end() ? 2 : it->second));
  };
  for (const auto &g : groups) {
    LogicalGroup group;
    for (const std::string &l : g) {
      add(l);
      group.members.push_back(Key(l));
    }
    std::sort(group.members.begin(), group.members.end());
    group.connective = g.size() == 1 ? Connective::kSingle : Connective::kAnd;
    out.push_back(group);
  }
  for (const std::string &l : extra) add(l);
  return AssembleSchema(Topic("t"), nodes, out, HierarchyForest{}, {}, {});
}

SynonymLexicon Lexicon(const std::vector<std::pair<std::string, std::string>> &pairs) {
  SynonymLexicon lexicon;
  for (const auto &[a, b] : pairs) lexicon.Add(a, b);
  return lexicon;
}

TEST(EventCoverageTest, Examples) {
  EXPECT_DOUBLE_EQ(EventCoverage(Backbone({{"a"}, {"b"}}, {"c"}), Gold({"a", "b"})), 1.0);
  SchemaGraph generated = Backbone({{"acquire"}, {"ship"}});
  GoldSchema gold = Gold({"buy", "sell", "ship"});
  SynonymLexicon lexicon = Lexicon({{"buy", "acquire"}});
  EXPECT_NEAR(EventCoverage(generated, gold), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(EventCoverage(generated, gold, &lexicon), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(EventCoverage(generated, gold), 0.3333, 1e-4);
  EXPECT_NEAR(EventCoverage(generated, gold, &lexicon), 0.6667, 1e-4);
  EXPECT_DOUBLE_EQ(EventCoverage(Backbone({{"x"}}), Gold({"y"}), &lexicon), 0.0);
  EXPECT_THROW(EventCoverage(generated, Gold({})), EmptyGold);
}

TEST(SynonymLexiconTest, SymmetricReflexiveNotTransitive) {
  SynonymLexicon lexicon = Lexicon({{"a", "b"}, {"b", "c"}});
  EXPECT_TRUE(lexicon.Matches("a", "a"));
  EXPECT_TRUE(lexicon.Matches("b", "a"));
  EXPECT_TRUE(lexicon.Matches("a", "b"));
  EXPECT_FALSE(lexicon.Matches("a", "c"));
  EXPECT_EQ(lexicon.Synonyms("zzz"), std::set<std::string>{"zzz"});
}

TEST(SynonymLexiconTest, Fixture) {
  auto lexicon = SynonymLexicon::Parse(ReadFile(testing::FixtureDir() / "eval" / "synonyms.json"));
  EXPECT_TRUE(lexicon.Matches("condemn", "denounce"));
  EXPECT_TRUE(lexicon.Matches("purchase", "buy"));
  EXPECT_THROW(SynonymLexicon::Parse("[1, 2]"), ParseError);
  EXPECT_THROW(SynonymLexicon::Parse("{\"a\": 3}"), ParseError);
}

TEST(GoldSchemaTest, Parsing) {
  auto gold = ParseGoldSchema(ReadFile(testing::FixtureDir() / "eval" / "civil_unrest_gold.json"));
  EXPECT_EQ(gold.events.size(), 5u);
  EXPECT_EQ(gold.final_event, "condemn");
  ASSERT_EQ(gold.relations.size(), 3u);
  EXPECT_EQ(gold.relations[1].family, RelationFamily::kLogical);
  EXPECT_THROW(ParseGoldSchema(R"({"topic":"t","events":["Buy"],"relations":[],"finalEvent":"Buy"})"),
               ParseError);
  EXPECT_THROW(ParseGoldSchema(R"({"topic":"t","events":["buy"],"relations":[],"finalEvent":"sell"})"),
               ParseError);
  EXPECT_THROW(ParseGoldSchema(
                   R"({"topic":"t","events":["a"],"relations":[{"source":"a","target":"a","family":"causal"}],"finalEvent":"a"})"),
               ParseError);
  EXPECT_THROW(ParseGoldSchema("nope"), ParseError);
  EXPECT_NO_THROW(ParseGoldSchema(R"({"topic":"t","events":[],"relations":[]})"));
}

TEST(RelationCoverageTest, Temporal) {
  GoldRelation plan_attack{"plan", "attack", RelationFamily::kTemporal};
  EXPECT_EQ(RelationCoverage(Backbone({{"plan"}, {"attack"}}), Gold({"plan", "attack"}, {plan_attack}),
                             RelationFamily::kTemporal),
            1.0);
  EXPECT_EQ(RelationCoverage(Backbone({{"attack"}, {"plan"}}), Gold({"plan", "attack"}, {plan_attack}),
                             RelationFamily::kTemporal),
            0.0);
  // Same group is not strict precedence.
  EXPECT_EQ(RelationCoverage(Backbone({{"attack", "plan"}}), Gold({"plan", "attack"}, {plan_attack}),
                             RelationFamily::kTemporal),
            0.0);
}

TEST(RelationCoverageTest, UnmatchedEndpointExcluded) {
  GoldSchema gold = Gold({"plan", "attack", "flee"},
                         {{"plan", "attack", RelationFamily::kTemporal},
                          {"plan", "flee", RelationFamily::kTemporal}});
  EXPECT_EQ(RelationCoverage(Backbone({{"plan"}, {"attack"}}), gold, RelationFamily::kTemporal), 1.0);
  EXPECT_EQ(RelationCoverage(Backbone({{"plan"}}), gold, RelationFamily::kTemporal), std::nullopt);
  EXPECT_EQ(RelationCoverage(Backbone({{"plan"}, {"attack"}}), gold, RelationFamily::kLogical),
            std::nullopt);
}

TEST(RelationCoverageTest, LogicalAndHierarchical) {
  GoldSchema gold = Gold({"a", "b", "c"}, {{"a", "b", RelationFamily::kLogical},
                                           {"a", "c", RelationFamily::kLogical},
                                           {"a", "c", RelationFamily::kHierarchical}});
  EXPECT_EQ(RelationCoverage(Backbone({{"a", "b"}, {"c"}}), gold, RelationFamily::kLogical), 0.5);
  std::vector<EventNode> nodes = {Node("a", 2), Node("b", 2), Node("c", 2)};
  HierarchyForest forest;
  forest.Add(Key("a"), Key("b"));
  forest.Add(Key("b"), Key("c"));
  auto schema = AssembleSchema(Topic("t"), nodes, {{{Key("a")}, Connective::kSingle}}, forest, {}, {});
  EXPECT_EQ(RelationCoverage(schema, gold, RelationFamily::kHierarchical), 1.0);
}

TEST(RelationCoverageTest, SynonymEndpoints) {
  GoldSchema gold = Gold({"denounce", "begin"}, {{"begin", "denounce", RelationFamily::kTemporal}});
  SynonymLexicon lexicon = Lexicon({{"denounce", "condemn"}});
  SchemaGraph schema = Backbone({{"begin"}, {"condemn"}});
  EXPECT_EQ(RelationCoverage(schema, gold, RelationFamily::kTemporal), std::nullopt);
  EXPECT_EQ(RelationCoverage(schema, gold, RelationFamily::kTemporal, &lexicon), 1.0);
}

TEST(LastEventTest, Examples) {
  EXPECT_EQ(LastEventPrediction(Backbone({{"riot"}, {"condemn"}}), Gold({"riot", "condemn"})), 1);
  SchemaGraph caught = Backbone({{"chase"}, {"catch", "escape"}}, {}, {{"catch", 5}, {"escape", 3}});
  EXPECT_EQ(LastEventPrediction(caught, Gold({"chase", "escape"})), 0);
  EXPECT_EQ(LastEventPrediction(caught, Gold({"chase", "catch"})), 1);
  SynonymLexicon lexicon = Lexicon({{"apprehend", "catch"}});
  SchemaGraph apprehend = Backbone({{"chase"}, {"apprehend"}});
  EXPECT_EQ(LastEventPrediction(apprehend, Gold({"chase", "catch"}), &lexicon), 1);
  EXPECT_EQ(LastEventPrediction(apprehend, Gold({"chase", "catch"})), 0);
  EXPECT_THROW(LastEventPrediction(Backbone({}, {"x"}), Gold({"x"})), EmptyBackbone);
}

TEST(LastEventTest, TieBrokenByKey) {
  SchemaGraph tied = Backbone({{"b", "a"}}, {}, {{"a", 4}, {"b", 4}});
  EXPECT_EQ(LastEventPrediction(tied, Gold({"a"})), 1);
  EXPECT_EQ(LastEventPrediction(tied, Gold({"b"})), 0);
}

TEST(AdditionalEventsTest, Counts) {
  SynonymLexicon lexicon = Lexicon({{"denounce", "condemn"}});
  SchemaGraph schema = Backbone({{"begin"}, {"condemn"}}, {"loot", "burn"});
  EXPECT_EQ(AdditionalEvents(schema, Gold({"begin", "denounce"})), 3);
  EXPECT_EQ(AdditionalEvents(schema, Gold({"begin", "denounce"}), &lexicon), 2);
}

TEST(EvaluateTest, ReportJson) {
  auto gold = ParseGoldSchema(ReadFile(testing::FixtureDir() / "eval" / "civil_unrest_gold.json"));
  SchemaGraph schema = Backbone({{"begin"}, {"call", "clash"}, {"disperse"}, {"condemn"}}, {"urge"});
  EvaluationReport report = Evaluate(schema, gold);
  EXPECT_DOUBLE_EQ(report.event_coverage, 1.0);
  EXPECT_FALSE(report.synonym_coverage.has_value());
  EXPECT_EQ(report.relation_coverage.at(RelationFamily::kTemporal), 1.0);
  EXPECT_EQ(report.relation_coverage.at(RelationFamily::kLogical), 1.0);
  EXPECT_EQ(report.relation_coverage.at(RelationFamily::kHierarchical), std::nullopt);
  EXPECT_EQ(report.last_event_hit, 1);
  EXPECT_EQ(report.additional_events, 1);
  Json j = EvaluationReportToJson(report);
  EXPECT_TRUE(j["synonymCoverage"].is_null());
  EXPECT_TRUE(j["relationCoverage"]["hierarchical"].is_null());
  EXPECT_EQ(j["lastEventHit"], 1);
  SynonymLexicon lexicon;
  EXPECT_EQ(Evaluate(schema, gold, &lexicon).synonym_coverage, 1.0);
  EXPECT_EQ(Evaluate(Backbone({}, {"begin"}), gold).last_event_hit, std::nullopt);
}

// --- Relevance statistics.

TEST(OntologyTest, Parsing) {
  Ontology o = ParseOntology("# comment\ntrigger: Attack\nrole: ARGM-LOC\nARG0\nbomb  # inline\n\n");
  EXPECT_EQ(o.triggers, (std::set<std::string>{"attack", "bomb"}));
  EXPECT_EQ(o.roles, (std::set<std::string>{"ARG0", "ARGM-LOC"}));
  EXPECT_THROW(ParseOntology("# nothing\n\n"), ConfigError);
}

TEST(RelevanceStatsTest, Fixture) {
  auto bundles = LoadBundleDirectory(testing::FixtureDir() / "stats" / "bundles");
  Ontology o = ParseOntology(ReadFile(testing::FixtureDir() / "stats" / "ontology.txt"));
  RelevanceStats s = CorpusRelevanceStats(bundles, o);
  EXPECT_EQ(s.tokens, 100);
  EXPECT_EQ(s.relevant_events, 12);
  EXPECT_EQ(s.relevant_arguments, 5);
  EXPECT_DOUBLE_EQ(s.event_ratio, 12.0);
  EXPECT_DOUBLE_EQ(s.argument_ratio, 5.0);
}

TEST(RelevanceStatsTest, DisjointAndErrors) {
  auto bundles = LoadBundleDirectory(testing::FixtureDir() / "stats" / "bundles");
  Ontology disjoint = ParseOntology("trigger: sing\nrole: ARG5\n");
  RelevanceStats s = CorpusRelevanceStats(bundles, disjoint);
  EXPECT_DOUBLE_EQ(s.event_ratio, 0.0);
  EXPECT_DOUBLE_EQ(s.argument_ratio, 0.0);
  EXPECT_THROW(CorpusRelevanceStats({}, disjoint), EmptyCorpus);
  EXPECT_THROW(CorpusRelevanceStats(bundles, Ontology{}), ConfigError);
}

// --- Properties against a set-based oracle.

double OracleCoverage(const std::set<std::string> &generated, const std::vector<std::string> &gold,
                      const std::vector<std::pair<std::string, std::string>> &pairs, bool expand) {
  int hit = 0;
  for (const std::string &g : gold) {
    std::set<std::string> match = {g};
    if (expand) {
      for (const auto &[a, b] : pairs) {
        if (a == g) match.insert(b);
        if (b == g) match.insert(a);
      }
    }
    bool found = false;
    for (const std::string &m : match) found = found || generated.count(m);
    hit += found;
  }
  return static_cast<double>(hit) / static_cast<double>(gold.size());
}

TEST(EvaluationPropertyTest, RandomCases) {
  std::mt19937 rng(99);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int trial = 0; trial < 600; ++trial) {
    std::set<std::string> generated;
    for (const std::string &v : vocab) {
      if (rng() % 2) generated.insert(v);
    }
    std::vector<std::string> gold_events;
    for (const std::string &v : vocab) {
      if (rng() % 3 == 0) gold_events.push_back(v);
    }
    if (gold_events.empty()) gold_events.push_back("a");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i < 3; ++i) pairs.push_back({vocab[rng() % vocab.size()], vocab[rng() % vocab.size()]});
    SynonymLexicon lexicon = Lexicon(pairs);
    std::vector<std::vector<std::string>> groups;
    for (const std::string &g : generated) groups.push_back({g});
    SchemaGraph schema = Backbone(groups);
    GoldSchema gold = Gold(gold_events);
    double exact = groups.empty() ? 0.0 : EventCoverage(schema, gold);
    double synonym = groups.empty() ? 0.0 : EventCoverage(schema, gold, &lexicon);
    if (!groups.empty()) {
      EXPECT_NEAR(exact, OracleCoverage(generated, gold_events, pairs, false), 1e-12);
      EXPECT_NEAR(synonym, OracleCoverage(generated, gold_events, pairs, true), 1e-12);
    }
    EXPECT_GE(synonym, exact);
    EXPECT_GE(exact, 0.0);
    EXPECT_LE(synonym, 1.0);
    // Adding an event never lowers coverage.
    std::string added = vocab[rng() % vocab.size()];
    if (!generated.count(added)) {
      auto grown = groups;
      grown.push_back({added});
      EXPECT_GE(EventCoverage(Backbone(grown), gold), exact);
      EXPECT_GE(EventCoverage(Backbone(grown), gold, &lexicon), synonym);
    }
    // Relation denominators only count co-present pairs.
    GoldRelation rel{vocab[rng() % vocab.size()], vocab[rng() % vocab.size()], RelationFamily::kTemporal};
    gold.relations = {rel};
    auto rc = RelationCoverage(schema, gold, RelationFamily::kTemporal);
    bool present = generated.count(rel.source) && generated.count(rel.target);
    EXPECT_EQ(rc.has_value(), present);
    if (rc) {
      EXPECT_GE(*rc, 0.0);
      EXPECT_LE(*rc, 1.0);
    }
  }
}

}  // namespace
}  // namespace schema_forge
