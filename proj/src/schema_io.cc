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

#include "schema_forge/schema_io.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "schema_forge/errors.h"

namespace schema_forge {

namespace {

const Json &Field(const Json &json, const char *name) {
  if (!json.is_object()) throw ParseError(std::string("expected object holding '") + name + "'");
  auto it = json.find(name);
  if (it == json.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

std::string NodeId(size_t index) { return "n" + std::to_string(index); }

std::string EdgeLabelName(EdgeLabel label) {
  return label == EdgeLabel::kBefore ? "BEFORE" : "EQUAL";
}

Json DocSetToJson(const DocSet &docs) { return Json(std::vector<std::string>(docs.begin(), docs.end())); }

// DOT string literal.
std::string Quote(const std::string &text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json EventKeyToJson(const EventKey &key) {
  Json signature = Json::array();
  for (const RoleType &rt : key.signature) {
    signature.push_back(Json{{"role", rt.role}, {"nerType", rt.ner_type}});
  }
  return Json{{"lemma", key.lemma}, {"signature", std::move(signature)}};
}

EventKey EventKeyFromJson(const Json &json) {
  EventKey key;
  key.lemma = Field(json, "lemma").get<std::string>();
  for (const Json &rt : Field(json, "signature")) {
    key.signature.push_back(
        {Field(rt, "role").get<std::string>(), Field(rt, "nerType").get<std::string>()});
  }
  return key;
}

Json EventNodeToJson(const EventNode &node) {
  Json j;
  j["key"] = EventKeyToJson(node.key);
  j["displayLabel"] = node.display_label;
  j["frequency"] = node.frequency;
  j["supportDocs"] = DocSetToJson(node.support_docs);
  Json profile = Json::object();
  for (const auto &[role, fillers] : node.argument_profile) {
    Json list = Json::array();
    for (const auto &[filler, count] : fillers) {
      list.push_back(Json{{"nerType", filler.ner_type}, {"headText", filler.head_text}, {"count", count}});
    }
    profile[role] = std::move(list);
  }
  j["argumentProfile"] = std::move(profile);
  Json members = Json::array();
  for (const EventKey &k : node.member_keys) members.push_back(EventKeyToJson(k));
  j["memberKeys"] = std::move(members);
  return j;
}

EventNode EventNodeFromJson(const Json &json) {
  EventNode node;
  node.key = EventKeyFromJson(Field(json, "key"));
  node.display_label = Field(json, "displayLabel").get<std::string>();
  node.frequency = Field(json, "frequency").get<int>();
  for (const Json &d : Field(json, "supportDocs")) node.support_docs.insert(d.get<std::string>());
  for (const auto &[role, list] : Field(json, "argumentProfile").items()) {
    auto &fillers = node.argument_profile[role];
    for (const Json &f : list) {
      fillers[{Field(f, "nerType").get<std::string>(), Field(f, "headText").get<std::string>()}] =
          Field(f, "count").get<int>();
    }
  }
  for (const Json &k : Field(json, "memberKeys")) node.member_keys.push_back(EventKeyFromJson(k));
  return node;
}

Json SchemaToJson(const SchemaGraph &schema) {
  std::map<EventKey, std::string> ids;
  for (size_t i = 0; i < schema.nodes.size(); ++i) ids[schema.nodes[i].key] = NodeId(i);
  auto id_of = [&](const EventKey &k) {
    auto it = ids.find(k);
    if (it == ids.end()) throw InvariantViolation(k.ToString() + " is not a schema node");
    return it->second;
  };

  Json j;
  j["topic"] = schema.topic;
  Json nodes = Json::array();
  for (size_t i = 0; i < schema.nodes.size(); ++i) {
    Json node = Json{{"id", NodeId(i)}};
    node.update(EventNodeToJson(schema.nodes[i]));
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  Json groups = Json::array();
  for (const LogicalGroup &g : schema.ordered_groups) {
    Json members = Json::array();
    for (const EventKey &k : g.members) members.push_back(id_of(k));
    groups.push_back(Json{{"connective", std::string(ConnectiveName(g.connective))},
                          {"members", std::move(members)}});
  }
  j["orderedGroups"] = std::move(groups);
  Json hier = Json::array();
  for (const auto &[parent, child] : schema.hierarchy_edges) {
    hier.push_back(Json{{"parent", id_of(parent)}, {"child", id_of(child)}});
  }
  j["hierarchyEdges"] = std::move(hier);
  j["provenance"] = Json{{"config", ConfigToJson(schema.provenance.config)},
                         {"documentIds", schema.provenance.document_ids}};
  return j;
}

SchemaGraph SchemaFromJson(const Json &json) {
  SchemaGraph schema;
  try {
    schema.topic = Field(json, "topic").get<std::string>();
    std::map<std::string, EventKey> keys;
    for (const Json &n : Field(json, "nodes")) {
      EventNode node = EventNodeFromJson(n);
      std::string id = Field(n, "id").get<std::string>();
      if (!keys.emplace(id, node.key).second) throw ParseError("duplicate node id '" + id + "'");
      schema.nodes.push_back(std::move(node));
    }
    auto key_of = [&](const Json &id) {
      auto it = keys.find(id.get<std::string>());
      if (it == keys.end()) throw ParseError("unknown node id '" + id.get<std::string>() + "'");
      return it->second;
    };
    for (const Json &g : Field(json, "orderedGroups")) {
      LogicalGroup group;
      group.connective = ParseConnective(Field(g, "connective").get<std::string>());
      for (const Json &id : Field(g, "members")) group.members.push_back(key_of(id));
      std::sort(group.members.begin(), group.members.end());
      schema.ordered_groups.push_back(std::move(group));
    }
    for (const Json &e : Field(json, "hierarchyEdges")) {
      schema.hierarchy_edges.emplace_back(key_of(Field(e, "parent")), key_of(Field(e, "child")));
    }
    const Json &prov = Field(json, "provenance");
    schema.provenance.config = ConfigFromJson(Field(prov, "config"));
    schema.provenance.document_ids = Field(prov, "documentIds").get<std::vector<std::string>>();
  } catch (const Json::exception &e) {
    throw ParseError(std::string("malformed schema: ") + e.what());
  }
  CheckSchemaInvariants(schema);
  return schema;
}

SchemaGraph ParseSchema(const std::string &text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::exception &e) {
    throw ParseError(std::string("schema is not JSON: ") + e.what());
  }
  return SchemaFromJson(json);
}

std::string SchemaToDot(const SchemaGraph &schema) {
  std::map<EventKey, std::string> ids;
  for (size_t i = 0; i < schema.nodes.size(); ++i) ids[schema.nodes[i].key] = NodeId(i);
  std::map<EventKey, std::string> labels;
  for (const EventNode &n : schema.nodes) {
    labels[n.key] = n.display_label.empty() ? n.key.lemma : n.display_label;
  }
  auto node_line = [&](const EventKey &k, const std::string &indent) {
    return indent + ids.at(k) + " [label=" + Quote(labels.at(k)) + "];\n";
  };

  std::set<EventKey> backbone;
  for (const LogicalGroup &g : schema.ordered_groups) backbone.insert(g.members.begin(), g.members.end());
  // parent -> children, in edge order.
  std::map<EventKey, std::vector<EventKey>> children;
  for (const auto &[parent, child] : schema.hierarchy_edges) children[parent].push_back(child);

  std::ostringstream out;
  out << "digraph schema {\n";
  out << "  compound=true;\n";
  out << "  rankdir=LR;\n";
  if (!schema.topic.empty()) out << "  label=" << Quote(schema.topic) << ";\n";
  out << "  node [shape=box];\n";

  std::set<EventKey> placed;
  for (size_t g = 0; g < schema.ordered_groups.size(); ++g) {
    const LogicalGroup &group = schema.ordered_groups[g];
    if (group.connective == Connective::kSingle) {
      out << node_line(group.members.front(), "  ");
    } else {
      out << "  subgraph cluster_g" << g << " {\n";
      out << "    label=\"" << ConnectiveName(group.connective) << "\";\n";
      for (const EventKey &k : group.members) out << node_line(k, "    ");
      out << "  }\n";
    }
    placed.insert(group.members.begin(), group.members.end());
  }
  for (const auto &[parent, kids] : children) {
    std::vector<EventKey> off;
    for (const EventKey &c : kids) {
      if (!backbone.count(c)) off.push_back(c);
    }
    if (off.empty()) continue;
    out << "  subgraph cluster_sub_" << ids.at(parent) << " {\n";
    out << "    style=dashed;\n";
    out << "    label=\"\";\n";
    for (const EventKey &c : off) {
      out << node_line(c, "    ");
      placed.insert(c);
    }
    out << "  }\n";
  }
  for (const EventNode &n : schema.nodes) {
    if (!placed.count(n.key)) out << node_line(n.key, "  ");
  }

  for (size_t g = 0; g + 1 < schema.ordered_groups.size(); ++g) {
    const LogicalGroup &from = schema.ordered_groups[g];
    const LogicalGroup &to = schema.ordered_groups[g + 1];
    out << "  " << ids.at(from.members.front()) << " -> " << ids.at(to.members.front());
    std::vector<std::string> attrs;
    if (from.connective != Connective::kSingle) attrs.push_back("ltail=cluster_g" + std::to_string(g));
    if (to.connective != Connective::kSingle) attrs.push_back("lhead=cluster_g" + std::to_string(g + 1));
    if (!attrs.empty()) {
      out << " [";
      for (size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  for (const auto &[parent, kids] : children) {
    bool cluster_edge = false;
    for (const EventKey &c : kids) {
      if (backbone.count(c)) {
        out << "  " << ids.at(parent) << " -> " << ids.at(c) << " [style=dashed];\n";
      } else if (!cluster_edge) {
        out << "  " << ids.at(parent) << " -> " << ids.at(c)
            << " [style=dashed, lhead=cluster_sub_" << ids.at(parent) << "];\n";
        cluster_edge = true;
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string ExportSchema(const SchemaGraph &schema, std::string_view format) {
  if (format == "json") return DumpJson(SchemaToJson(schema));
  if (format == "dot") return SchemaToDot(schema);
  throw UnknownFormat("unknown export format '" + std::string(format) + "' (expected json or dot)");
}

Json AggregationDebugJson(std::span<const EventNode> nodes, std::span<const TemporalEdge> temporal,
                          std::span<const HierEdge> hier) {
  Json j;
  Json node_list = Json::array();
  for (const EventNode &n : nodes) node_list.push_back(EventNodeToJson(n));
  j["nodes"] = std::move(node_list);
  Json temporal_list = Json::array();
  for (const TemporalEdge &e : temporal) {
    temporal_list.push_back(Json{{"source", e.source.ToString()},
                                 {"target", e.target.ToString()},
                                 {"label", EdgeLabelName(e.label)},
                                 {"supportDocs", DocSetToJson(e.support_docs)}});
  }
  j["temporalEdges"] = std::move(temporal_list);
  Json hier_list = Json::array();
  for (const HierEdge &e : hier) {
    hier_list.push_back(Json{{"parent", e.parent.ToString()},
                             {"child", e.child.ToString()},
                             {"supportDocs", DocSetToJson(e.support_docs)}});
  }
  j["hierarchyEdges"] = std::move(hier_list);
  return j;
}

}  // namespace schema_forge
