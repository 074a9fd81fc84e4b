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

// Schema evaluation against gold schemas: event coverage, relation
// coverage, last-event prediction, and corpus relevance statistics.

#ifndef SCHEMA_FORGE_EVALUATION_H_
#define SCHEMA_FORGE_EVALUATION_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schema_forge/assembly.h"
#include "schema_forge/bundle_io.h"
#include "schema_forge/core.h"

namespace schema_forge {

enum class RelationFamily { kTemporal, kHierarchical, kLogical };

std::string_view RelationFamilyName(RelationFamily family);
RelationFamily ParseRelationFamily(std::string_view name);

struct GoldRelation {
  std::string source;
  std::string target;
  RelationFamily family = RelationFamily::kTemporal;
};

struct GoldSchema {
  std::string topic;
  std::vector<std::string> events;  // lowercase lemmas
  std::vector<GoldRelation> relations;
  std::string final_event;  // empty when the gold has no events
};

// {"topic", "events", "relations": [{"source","target","family"}],
// "finalEvent"}. Throws ParseError when malformed, when a lemma is not
// lowercase, or when finalEvent is not one of the events.
GoldSchema GoldSchemaFromJson(const Json &json);
GoldSchema ParseGoldSchema(const std::string &text);

// Lemma -> synonyms. Lookups are reflexive; Add() is symmetric. Not
// transitive: a~b and b~c does not make a~c.
class SynonymLexicon {
 public:
  void Add(const std::string &a, const std::string &b);
  // The lemma itself plus its listed synonyms.
  std::set<std::string> Synonyms(const std::string &lemma) const;
  bool Matches(const std::string &gold, const std::string &generated) const;

  // JSON object mapping lemma -> list of lemmas. Throws ParseError.
  static SynonymLexicon FromJson(const Json &json);
  static SynonymLexicon Parse(const std::string &text);

 private:
  std::map<std::string, std::set<std::string>> synonyms_;
};

// Fraction of gold events matched by some node lemma. With a lexicon each
// gold lemma matches any of its synonyms. Throws EmptyGold.
double EventCoverage(const SchemaGraph &schema, const GoldSchema &gold,
                     const SynonymLexicon *lexicon = nullptr);

// Among gold relations of the family whose two endpoints both match schema
// nodes, the fraction entailed by the schema. nullopt when no such relation
// exists.
std::optional<double> RelationCoverage(const SchemaGraph &schema, const GoldSchema &gold,
                                       RelationFamily family,
                                       const SynonymLexicon *lexicon = nullptr);

// 1 if the most frequent member of the last backbone group (ties: smallest
// key) matches the gold final event, else 0. Throws EmptyBackbone.
int LastEventPrediction(const SchemaGraph &schema, const GoldSchema &gold,
                        const SynonymLexicon *lexicon = nullptr);

// Number of schema nodes whose lemma matches no gold event.
int AdditionalEvents(const SchemaGraph &schema, const GoldSchema &gold,
                     const SynonymLexicon *lexicon = nullptr);

struct Ontology {
  std::set<std::string> triggers;  // lowercase lemmas
  std::set<std::string> roles;
};

// One entry per line. "trigger: X" and "role: Y" are explicit; a bare entry
// is a role if it belongs to role_vocabulary and a trigger otherwise. '#'
// starts a comment. Throws ConfigError if no entry is found.
Ontology ParseOntology(const std::string &text,
                       const std::vector<std::string> &role_vocabulary = DefaultRoleVocabulary());

struct RelevanceStats {
  long long tokens = 0;
  long long relevant_events = 0;
  long long relevant_arguments = 0;
  double event_ratio = 0;     // percent of tokens
  double argument_ratio = 0;  // percent of tokens
};

// Counts event mentions whose lemma is an ontology trigger and arguments
// whose role is an ontology role, relative to the total token count.
// Throws EmptyCorpus when there are no tokens and ConfigError when the
// ontology is empty.
RelevanceStats CorpusRelevanceStats(std::span<const ExtractionBundle> bundles,
                                    const Ontology &ontology);

struct EvaluationReport {
  double event_coverage = 0;
  std::optional<double> synonym_coverage;
  std::map<RelationFamily, std::optional<double>> relation_coverage;
  std::optional<int> last_event_hit;  // nullopt for an empty backbone
  int additional_events = 0;
};

EvaluationReport Evaluate(const SchemaGraph &schema, const GoldSchema &gold,
                          const SynonymLexicon *lexicon = nullptr);
Json EvaluationReportToJson(const EvaluationReport &report);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_EVALUATION_H_
