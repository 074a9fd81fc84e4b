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

#include "schema_forge/assembly.h"
#include "schema_forge/bundle_io.h"
#include "schema_forge/errors.h"
#include "schema_forge/schema_io.h"
#include "test_util.h"

namespace schema_forge {
namespace {

using testing::Key;
using testing::Node;

LogicalGroup Single(const std::string &lemma) { return {{Key(lemma)}, Connective::kSingle}; }

// Kidnapping schema shaped like the classic example: the kidnapping step has
// two subevents kept off the backbone.
SchemaGraph KidnappingSchema() {
  std::vector<EventNode> nodes = {Node("plan", 5), Node("kidnapping", 6), Node("hide victim", 3),
                                  Node("ask ransom", 3), Node("release", 4), Node("arrest", 4)};
  nodes[1].argument_profile["ARG0"][{"PER", "kidnapper"}] = 4;
  nodes[1].key.signature = {{"ARG0", "PER"}};
  nodes[1].member_keys = {nodes[1].key};
  nodes[1].display_label = DisplayLabel("kidnapping", nodes[1].argument_profile);
  nodes[2].key.lemma = "hide victim";
  HierarchyForest forest;
  forest.Add(nodes[1].key, Key("hide victim"));
  forest.Add(nodes[1].key, Key("ask ransom"));
  std::vector<LogicalGroup> groups = {Single("plan"), {{nodes[1].key}, Connective::kSingle},
                                      {{Key("arrest"), Key("release")}, Connective::kOr}};
  Provenance provenance;
  provenance.document_ids = {"news-001", "news-000"};
  return AssembleSchema(Topic("kidnapping"), nodes, groups, forest, {}, provenance);
}

std::string IdOf(const SchemaGraph &schema, const std::string &lemma) {
  for (size_t i = 0; i < schema.nodes.size(); ++i) {
    if (schema.nodes[i].key.lemma == lemma) return "n" + std::to_string(i);
  }
  return "";
}

TEST(SchemaJsonTest, RoundTrip) {
  SchemaGraph schema = KidnappingSchema();
  std::string text = ExportSchema(schema, "json");
  EXPECT_EQ(ParseSchema(text), schema);
  EXPECT_EQ(ExportSchema(ParseSchema(text), "json"), text);
  Json j = Json::parse(text);
  EXPECT_EQ(j["orderedGroups"][2]["connective"], "OR");
  EXPECT_EQ(j["provenance"]["documentIds"], Json({"news-000", "news-001"}));
}

TEST(SchemaJsonTest, RandomRoundTrips) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    std::vector<EventNode> nodes;
    for (int i = 0; i < n; ++i) {
      EventNode node = Node("ev" + std::to_string(i), 1 + static_cast<int>(rng() % 9));
      if (rng() % 2) node.key.signature = {{"ARG0", rng() % 2 ? "PER" : "*"}};
      node.member_keys = {node.key};
      node.argument_profile["ARG1"][{rng() % 2 ? "ABSENT" : "LOC", "h\"" + std::to_string(i)}] = 2;
      node.display_label = "label é " + std::to_string(i);
      nodes.push_back(node);
    }
    std::vector<LogicalGroup> groups;
    size_t i = 0;
    while (i < nodes.size()) {
      size_t take = 1 + rng() % 3;
      LogicalGroup g;
      for (size_t k = 0; k < take && i < nodes.size(); ++k, ++i) g.members.push_back(nodes[i].key);
      std::sort(g.members.begin(), g.members.end());
      g.connective = g.members.size() == 1 ? Connective::kSingle
                                           : (rng() % 2 ? Connective::kAnd : Connective::kOr);
      if (rng() % 4 == 0) continue;  // leave some nodes off the backbone
      groups.push_back(g);
    }
    InductionConfig config;
    config.min_event_docs = 1 + static_cast<int>(rng() % 3);
    auto schema = AssembleSchema(Topic("random"), nodes, groups, HierarchyForest{}, {}, {config, {"d"}});
    EXPECT_EQ(ParseSchema(ExportSchema(schema, "json")), schema);
  }
}

TEST(SchemaJsonTest, RejectsBadInput) {
  EXPECT_THROW(ParseSchema("not json"), ParseError);
  EXPECT_THROW(ParseSchema("{}"), ParseError);
  Json j = Json::parse(ExportSchema(KidnappingSchema(), "json"));
  Json bad_id = j;
  bad_id["orderedGroups"][0]["members"][0] = "n99";
  EXPECT_THROW(SchemaFromJson(bad_id), ParseError);
  Json bad_connective = j;
  bad_connective["orderedGroups"][0]["connective"] = "XOR";
  EXPECT_THROW(SchemaFromJson(bad_connective), ParseError);
  Json broken = j;
  broken["orderedGroups"][0]["connective"] = "AND";
  EXPECT_THROW(SchemaFromJson(broken), InvariantViolation);
}

TEST(SchemaDotTest, DashedEdgeIntoSubeventCluster) {
  SchemaGraph schema = KidnappingSchema();
  std::string dot = ExportSchema(schema, "dot");
  const std::string k = IdOf(schema, "kidnapping");
  EXPECT_NE(dot.find("subgraph cluster_sub_" + k + " {"), std::string::npos);
  EXPECT_NE(dot.find("style=dashed, lhead=cluster_sub_" + k + "]"), std::string::npos);
  EXPECT_NE(dot.find("  " + k + " -> "), std::string::npos);
  EXPECT_NE(dot.find("label=\"OR\";"), std::string::npos);
  EXPECT_NE(dot.find("lhead=cluster_g2"), std::string::npos);
  EXPECT_NE(dot.find("kidnapper kidnapping"), std::string::npos);
  // Temporal arrows carry no style attribute, so they render solid.
  const std::string temporal = "  " + IdOf(schema, "plan") + " -> " + k + ";\n";
  EXPECT_NE(dot.find(temporal), std::string::npos);
  EXPECT_EQ(dot.rfind("digraph schema {\n", 0), 0u);
  EXPECT_EQ(dot.back(), '\n');
}

TEST(SchemaDotTest, BackboneChildGetsPlainDashedEdge) {
  std::vector<EventNode> nodes = {Node("a", 2), Node("b", 2), Node("c", 2)};
  HierarchyForest forest;
  forest.Add(Key("a"), Key("c"));
  auto schema = AssembleSchema(Topic("t"), nodes, {Single("c"), Single("b")}, forest, {}, {});
  std::string dot = SchemaToDot(schema);
  EXPECT_NE(dot.find(IdOf(schema, "a") + " -> " + IdOf(schema, "c") + " [style=dashed];"),
            std::string::npos);
  EXPECT_EQ(dot.find("cluster_sub"), std::string::npos);
}

TEST(SchemaDotTest, ByteStable) {
  EXPECT_EQ(ExportSchema(KidnappingSchema(), "dot"), ExportSchema(KidnappingSchema(), "dot"));
  EXPECT_EQ(ExportSchema(KidnappingSchema(), "json"), ExportSchema(KidnappingSchema(), "json"));
}

TEST(SchemaDotTest, EmptySchema) {
  SchemaGraph empty;
  empty.topic = "nothing";
  std::string dot = SchemaToDot(empty);
  EXPECT_EQ(dot,
            "digraph schema {\n  compound=true;\n  rankdir=LR;\n  label=\"nothing\";\n"
            "  node [shape=box];\n}\n");
}

TEST(SchemaExportTest, UnknownFormat) {
  EXPECT_THROW(ExportSchema(KidnappingSchema(), "svg"), UnknownFormat);
}

TEST(AggregationDebugTest, Shape) {
  std::vector<EventNode> nodes = {Node("a", 2)};
  std::vector<TemporalEdge> temporal = {testing::Before("a", "b")};
  std::vector<HierEdge> hier = {{Key("a"), Key("b"), {"d0"}}};
  Json j = AggregationDebugJson(nodes, temporal, hier);
  EXPECT_EQ(j["nodes"].size(), 1u);
  EXPECT_EQ(j["temporalEdges"][0]["label"], "BEFORE");
  EXPECT_EQ(j["hierarchyEdges"][0]["child"], "b");
}

}  // namespace
}  // namespace schema_forge
