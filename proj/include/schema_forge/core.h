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

// Shared domain types: documents, per-document extraction output, and the
// induction configuration. Everything here is a plain value type.

#ifndef SCHEMA_FORGE_CORE_H_
#define SCHEMA_FORGE_CORE_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace schema_forge {

// Name of the complex event a schema is induced for, e.g. "kidnapping".
class Topic {
 public:
  // Throws ConfigError if the name is blank.
  explicit Topic(std::string_view name, std::string slug = "");

  const std::string &name() const { return name_; }
  const std::string &slug() const { return slug_; }

  bool operator==(const Topic &other) const = default;

 private:
  std::string name_;
  std::string slug_;
};

// Lowercase ASCII slug ("Civil Unrest!" -> "civil-unrest").
std::string Slugify(std::string_view text);

enum class Genre { kNews, kHowTo, kSteps };

std::string_view GenreName(Genre genre);
Genre ParseGenre(std::string_view name);

// Half-open [start, end) character span of one token in the document text.
struct Token {
  std::string text;
  int start = 0;
  int end = 0;

  bool operator==(const Token &other) const = default;
};

struct Document {
  std::string id;
  Genre genre = Genre::kNews;
  std::string text;
  std::vector<Token> tokens;

  bool operator==(const Document &other) const = default;
};

// Half-open range of token indices.
struct TokenRange {
  int start = 0;
  int end = 0;

  bool operator==(const TokenRange &other) const = default;
};

struct ArgumentMention {
  std::string role;
  std::string head_text;
  std::optional<std::string> ner_type;  // nullopt means ABSENT

  bool operator==(const ArgumentMention &other) const = default;
};

struct EventMention {
  std::string id;
  std::string document_id;
  TokenRange trigger;
  std::string trigger_lemma;
  std::vector<ArgumentMention> arguments;

  bool operator==(const EventMention &other) const = default;
};

enum class CorefKind { kEvent, kEntity };

struct CorefCluster {
  std::string document_id;
  std::vector<std::string> member_mention_ids;
  CorefKind kind = CorefKind::kEvent;

  bool operator==(const CorefCluster &other) const = default;
};

enum class TemporalLabel { kBefore, kAfter, kEqual, kVague };
enum class HierLabel { kParentChild, kChildParent, kCoref, kNoRel };

std::string_view TemporalLabelName(TemporalLabel label);
TemporalLabel ParseTemporalLabel(std::string_view name);
std::string_view HierLabelName(HierLabel label);
HierLabel ParseHierLabel(std::string_view name);

struct TemporalRelationPred {
  std::string document_id;
  std::string source_mention_id;
  std::string target_mention_id;
  TemporalLabel label = TemporalLabel::kVague;
  double confidence = 1.0;

  bool operator==(const TemporalRelationPred &other) const = default;
};

struct HierRelationPred {
  std::string document_id;
  std::string source_mention_id;
  std::string target_mention_id;
  HierLabel label = HierLabel::kNoRel;
  double confidence = 1.0;

  bool operator==(const HierRelationPred &other) const = default;
};

// Everything the extraction stage produced for one document.
struct ExtractionBundle {
  Document document;
  std::vector<EventMention> events;
  std::vector<CorefCluster> coref_clusters;
  std::vector<TemporalRelationPred> temporal_preds;
  std::vector<HierRelationPred> hier_preds;

  bool operator==(const ExtractionBundle &other) const = default;
};

// PropBank-style roles accepted by default.
std::vector<std::string> DefaultRoleVocabulary();

struct InductionConfig {
  int min_event_docs = 2;
  int min_temporal_docs = 2;
  int min_coref_hier_docs = 3;
  int docs_per_genre = 30;
  int ranked_selection = 30;
  double min_confidence = 0.0;
  // Cap on the number of maximal timelines before giving up.
  int max_timelines = 10000;
  // Empty vocabulary disables role checking.
  std::vector<std::string> role_vocabulary = DefaultRoleVocabulary();

  // Throws ConfigError on the first invalid field.
  void Validate() const;

  bool operator==(const InductionConfig &other) const = default;
};

// Number of Unicode code points in a UTF-8 string.
int CodePointLength(std::string_view utf8);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_CORE_H_
