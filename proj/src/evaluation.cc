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

#include "schema_forge/evaluation.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "schema_forge/errors.h"

namespace schema_forge {

namespace {

std::string Lower(std::string text) {
  for (char &c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return text;
}

std::string Trim(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::string LowercaseLemma(const Json &value, const char *what) {
  if (!value.is_string()) throw ParseError(std::string(what) + " must be a string");
  std::string lemma = value.get<std::string>();
  if (lemma.empty()) throw ParseError(std::string(what) + " must not be empty");
  if (lemma != Lower(lemma)) throw ParseError(std::string(what) + " '" + lemma + "' is not lowercase");
  return lemma;
}

const Json &Field(const Json &json, const char *name) {
  if (!json.is_object()) throw ParseError(std::string("expected object holding '") + name + "'");
  auto it = json.find(name);
  if (it == json.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

bool Matches(const SynonymLexicon *lexicon, const std::string &gold, const std::string &generated) {
  return lexicon ? lexicon->Matches(gold, generated) : gold == generated;
}

std::vector<const EventNode *> MatchingNodes(const SchemaGraph &schema, const std::string &gold,
                                             const SynonymLexicon *lexicon) {
  std::vector<const EventNode *> out;
  for (const EventNode &n : schema.nodes) {
    if (Matches(lexicon, gold, n.key.lemma)) out.push_back(&n);
  }
  return out;
}

}  // namespace

std::string_view RelationFamilyName(RelationFamily family) {
  switch (family) {
    case RelationFamily::kTemporal: return "temporal";
    case RelationFamily::kHierarchical: return "hierarchical";
    case RelationFamily::kLogical: return "logical";
  }
  return "temporal";
}

RelationFamily ParseRelationFamily(std::string_view name) {
  if (name == "temporal") return RelationFamily::kTemporal;
  if (name == "hierarchical") return RelationFamily::kHierarchical;
  if (name == "logical") return RelationFamily::kLogical;
  throw ParseError("unknown relation family '" + std::string(name) + "'");
}

GoldSchema GoldSchemaFromJson(const Json &json) {
  GoldSchema gold;
  const Json &topic = Field(json, "topic");
  if (!topic.is_string()) throw ParseError("gold topic must be a string");
  gold.topic = topic.get<std::string>();
  const Json &events = Field(json, "events");
  if (!events.is_array()) throw ParseError("gold events must be an array");
  for (const Json &e : events) gold.events.push_back(LowercaseLemma(e, "gold event"));
  if (json.contains("relations")) {
    for (const Json &r : Field(json, "relations")) {
      GoldRelation rel;
      rel.source = LowercaseLemma(Field(r, "source"), "relation source");
      rel.target = LowercaseLemma(Field(r, "target"), "relation target");
      const Json &family = Field(r, "family");
      if (!family.is_string()) throw ParseError("relation family must be a string");
      rel.family = ParseRelationFamily(family.get<std::string>());
      gold.relations.push_back(std::move(rel));
    }
  }
  if (json.contains("finalEvent") && !json["finalEvent"].is_null()) {
    gold.final_event = LowercaseLemma(json["finalEvent"], "finalEvent");
    if (std::find(gold.events.begin(), gold.events.end(), gold.final_event) == gold.events.end()) {
      throw ParseError("finalEvent '" + gold.final_event + "' is not a gold event");
    }
  } else if (!gold.events.empty()) {
    throw ParseError("missing field 'finalEvent'");
  }
  return gold;
}

GoldSchema ParseGoldSchema(const std::string &text) {
  try {
    return GoldSchemaFromJson(Json::parse(text));
  } catch (const Json::exception &e) {
    throw ParseError(std::string("malformed gold schema: ") + e.what());
  }
}

void SynonymLexicon::Add(const std::string &a, const std::string &b) {
  std::string la = Lower(a), lb = Lower(b);
  if (la == lb) return;
  synonyms_[la].insert(lb);
  synonyms_[lb].insert(la);
}

std::set<std::string> SynonymLexicon::Synonyms(const std::string &lemma) const {
  std::set<std::string> out{lemma};
  auto it = synonyms_.find(lemma);
  if (it != synonyms_.end()) out.insert(it->second.begin(), it->second.end());
  return out;
}

bool SynonymLexicon::Matches(const std::string &gold, const std::string &generated) const {
  if (gold == generated) return true;
  auto it = synonyms_.find(gold);
  return it != synonyms_.end() && it->second.count(generated) > 0;
}

SynonymLexicon SynonymLexicon::FromJson(const Json &json) {
  if (!json.is_object()) throw ParseError("synonym lexicon must be a JSON object");
  SynonymLexicon lexicon;
  for (const auto &[lemma, list] : json.items()) {
    if (!list.is_array()) throw ParseError("synonyms of '" + lemma + "' must be an array");
    for (const Json &s : list) {
      if (!s.is_string()) throw ParseError("synonyms of '" + lemma + "' must be strings");
      lexicon.Add(lemma, s.get<std::string>());
    }
  }
  return lexicon;
}

SynonymLexicon SynonymLexicon::Parse(const std::string &text) {
  try {
    return FromJson(Json::parse(text));
  } catch (const Json::exception &e) {
    throw ParseError(std::string("malformed synonym lexicon: ") + e.what());
  }
}

double EventCoverage(const SchemaGraph &schema, const GoldSchema &gold,
                     const SynonymLexicon *lexicon) {
  if (gold.events.empty()) throw EmptyGold("gold schema '" + gold.topic + "' has no events");
  int matched = 0;
  for (const std::string &g : gold.events) {
    if (!MatchingNodes(schema, g, lexicon).empty()) ++matched;
  }
  return static_cast<double>(matched) / static_cast<double>(gold.events.size());
}

std::optional<double> RelationCoverage(const SchemaGraph &schema, const GoldSchema &gold,
                                       RelationFamily family, const SynonymLexicon *lexicon) {
  std::map<EventKey, int> group_index;
  for (size_t i = 0; i < schema.ordered_groups.size(); ++i) {
    for (const EventKey &k : schema.ordered_groups[i].members) group_index[k] = static_cast<int>(i);
  }
  HierarchyForest forest;
  for (const auto &[parent, child] : schema.hierarchy_edges) forest.Add(parent, child);

  auto entailed = [&](const EventKey &a, const EventKey &b) {
    auto ia = group_index.find(a), ib = group_index.find(b);
    switch (family) {
      case RelationFamily::kTemporal:
        return ia != group_index.end() && ib != group_index.end() && ia->second < ib->second;
      case RelationFamily::kHierarchical:
        return forest.IsAncestor(a, b);
      case RelationFamily::kLogical:
        return ia != group_index.end() && ib != group_index.end() && ia->second == ib->second &&
               schema.ordered_groups[ia->second].connective != Connective::kSingle;
    }
    return false;
  };

  int considered = 0, hits = 0;
  for (const GoldRelation &r : gold.relations) {
    if (r.family != family) continue;
    auto sources = MatchingNodes(schema, r.source, lexicon);
    auto targets = MatchingNodes(schema, r.target, lexicon);
    if (sources.empty() || targets.empty()) continue;
    ++considered;
    bool hit = false;
    for (const EventNode *s : sources) {
      for (const EventNode *t : targets) {
        if (s != t && entailed(s->key, t->key)) hit = true;
      }
    }
    hits += hit;
  }
  if (considered == 0) return std::nullopt;
  return static_cast<double>(hits) / considered;
}

int LastEventPrediction(const SchemaGraph &schema, const GoldSchema &gold,
                        const SynonymLexicon *lexicon) {
  if (schema.ordered_groups.empty()) throw EmptyBackbone("schema '" + schema.topic + "' has no backbone");
  std::map<EventKey, int> freq;
  for (const EventNode &n : schema.nodes) freq[n.key] = n.frequency;
  const LogicalGroup &last = schema.ordered_groups.back();
  const EventKey *best = nullptr;
  for (const EventKey &k : last.members) {
    if (best == nullptr || freq[k] > freq[*best] || (freq[k] == freq[*best] && k < *best)) best = &k;
  }
  return Matches(lexicon, gold.final_event, best->lemma) ? 1 : 0;
}

int AdditionalEvents(const SchemaGraph &schema, const GoldSchema &gold,
                     const SynonymLexicon *lexicon) {
  int count = 0;
  for (const EventNode &n : schema.nodes) {
    bool matched = std::any_of(gold.events.begin(), gold.events.end(),
                               [&](const std::string &g) { return Matches(lexicon, g, n.key.lemma); });
    count += !matched;
  }
  return count;
}

Ontology ParseOntology(const std::string &text, const std::vector<std::string> &role_vocabulary) {
  Ontology ontology;
  std::set<std::string> roles(role_vocabulary.begin(), role_vocabulary.end());
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string entry = Trim(std::string_view(line).substr(0, line.find('#')));
    if (entry.empty()) continue;
    if (entry.rfind("trigger:", 0) == 0) {
      ontology.triggers.insert(Lower(Trim(entry.substr(8))));
    } else if (entry.rfind("role:", 0) == 0) {
      ontology.roles.insert(Trim(entry.substr(5)));
    } else if (roles.count(entry)) {
      ontology.roles.insert(entry);
    } else {
      ontology.triggers.insert(Lower(entry));
    }
  }
  ontology.triggers.erase("");
  ontology.roles.erase("");
  if (ontology.triggers.empty() && ontology.roles.empty()) throw ConfigError("ontology has no entries");
  return ontology;
}

RelevanceStats CorpusRelevanceStats(std::span<const ExtractionBundle> bundles,
                                    const Ontology &ontology) {
  if (ontology.triggers.empty() && ontology.roles.empty()) throw ConfigError("ontology is empty");
  RelevanceStats stats;
  for (const ExtractionBundle &b : bundles) {
    stats.tokens += static_cast<long long>(b.document.tokens.size());
    for (const EventMention &e : b.events) {
      if (ontology.triggers.count(Lower(e.trigger_lemma))) ++stats.relevant_events;
      for (const ArgumentMention &a : e.arguments) {
        if (ontology.roles.count(a.role)) ++stats.relevant_arguments;
      }
    }
  }
  if (stats.tokens == 0) throw EmptyCorpus("corpus has no tokens");
  // Multiply first so that e.g. 12 of 100 is exactly 12.0.
  stats.event_ratio = 100.0 * static_cast<double>(stats.relevant_events) / static_cast<double>(stats.tokens);
  stats.argument_ratio =
      100.0 * static_cast<double>(stats.relevant_arguments) / static_cast<double>(stats.tokens);
  return stats;
}

EvaluationReport Evaluate(const SchemaGraph &schema, const GoldSchema &gold,
                          const SynonymLexicon *lexicon) {
  EvaluationReport report;
  report.event_coverage = EventCoverage(schema, gold, nullptr);
  if (lexicon != nullptr) report.synonym_coverage = EventCoverage(schema, gold, lexicon);
  for (RelationFamily f :
       {RelationFamily::kTemporal, RelationFamily::kHierarchical, RelationFamily::kLogical}) {
    report.relation_coverage[f] = RelationCoverage(schema, gold, f, lexicon);
  }
  if (!schema.ordered_groups.empty() && !gold.final_event.empty()) {
    report.last_event_hit = LastEventPrediction(schema, gold, lexicon);
  }
  report.additional_events = AdditionalEvents(schema, gold, lexicon);
  return report;
}

Json EvaluationReportToJson(const EvaluationReport &report) {
  auto opt = [](const auto &value) { return value ? Json(*value) : Json(nullptr); };
  Json j;
  j["eventCoverage"] = report.event_coverage;
  j["synonymCoverage"] = opt(report.synonym_coverage);
  Json relations = Json::object();
  for (const auto &[family, value] : report.relation_coverage) {
    relations[std::string(RelationFamilyName(family))] = opt(value);
  }
  j["relationCoverage"] = std::move(relations);
  j["lastEventHit"] = opt(report.last_event_hit);
  j["additionalEvents"] = report.additional_events;
  return j;
}

}  // namespace schema_forge
