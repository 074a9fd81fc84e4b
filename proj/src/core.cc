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

#include "schema_forge/core.h"

#include <cctype>

#include "schema_forge/errors.h"

namespace schema_forge {

namespace {

std::string_view Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return text.substr(begin, end - begin);
}

}  // namespace

Topic::Topic(std::string_view name, std::string slug) {
  std::string_view trimmed = Trim(name);
  if (trimmed.empty()) throw ConfigError("topic name is empty");
  name_ = std::string(trimmed);
  slug_ = slug.empty() ? Slugify(name_) : std::move(slug);
  if (slug_.empty()) slug_ = "topic";
}

std::string Slugify(std::string_view text) {
  std::string slug;
  bool pending_dash = false;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) && u < 128) {
      if (pending_dash && !slug.empty()) slug.push_back('-');
      pending_dash = false;
      slug.push_back(static_cast<char>(std::tolower(u)));
    } else {
      pending_dash = true;
    }
  }
  return slug;
}

std::string_view GenreName(Genre genre) {
  switch (genre) {
    case Genre::kNews: return "news";
    case Genre::kHowTo: return "howto";
    case Genre::kSteps: return "steps";
  }
  return "news";
}

Genre ParseGenre(std::string_view name) {
  if (name == "news") return Genre::kNews;
  if (name == "howto") return Genre::kHowTo;
  if (name == "steps") return Genre::kSteps;
  throw ParseError("unknown genre '" + std::string(name) + "'");
}

std::string_view TemporalLabelName(TemporalLabel label) {
  switch (label) {
    case TemporalLabel::kBefore: return "BEFORE";
    case TemporalLabel::kAfter: return "AFTER";
    case TemporalLabel::kEqual: return "EQUAL";
    case TemporalLabel::kVague: return "VAGUE";
  }
  return "VAGUE";
}

TemporalLabel ParseTemporalLabel(std::string_view name) {
  if (name == "BEFORE") return TemporalLabel::kBefore;
  if (name == "AFTER") return TemporalLabel::kAfter;
  if (name == "EQUAL") return TemporalLabel::kEqual;
  if (name == "VAGUE") return TemporalLabel::kVague;
  throw ParseError("unknown temporal label '" + std::string(name) + "'");
}

std::string_view HierLabelName(HierLabel label) {
  switch (label) {
    case HierLabel::kParentChild: return "PARENT-CHILD";
    case HierLabel::kChildParent: return "CHILD-PARENT";
    case HierLabel::kCoref: return "COREF";
    case HierLabel::kNoRel: return "NOREL";
  }
  return "NOREL";
}

HierLabel ParseHierLabel(std::string_view name) {
  if (name == "PARENT-CHILD") return HierLabel::kParentChild;
  if (name == "CHILD-PARENT") return HierLabel::kChildParent;
  if (name == "COREF") return HierLabel::kCoref;
  if (name == "NOREL") return HierLabel::kNoRel;
  throw ParseError("unknown hierarchical label '" + std::string(name) + "'");
}

std::vector<std::string> DefaultRoleVocabulary() {
  return {"ARG0",     "ARG1",     "ARG2",     "ARG3",     "ARG4",
          "ARG5",     "ARG-LOC",  "ARGM-LOC", "ARGM-TMP", "ARGM-MNR",
          "ARGM-CAU", "ARGM-PRP", "ARGM-DIR", "ARGM-EXT", "ARGM-ADV",
          "ARGM-DIS", "ARGM-NEG", "ARGM-MOD", "ARGM-PRD", "ARGM-GOL",
          "ARGM-COM", "ARGM-REC", "ARGM-PNC"};
}

void InductionConfig::Validate() const {
  auto require_positive = [](int value, const char *name) {
    if (value < 1) {
      throw ConfigError(std::string(name) + " must be >= 1, got " +
                        std::to_string(value));
    }
  };
  require_positive(min_event_docs, "minEventDocs");
  require_positive(min_temporal_docs, "minTemporalDocs");
  require_positive(min_coref_hier_docs, "minCorefHierDocs");
  require_positive(docs_per_genre, "docsPerGenre");
  require_positive(ranked_selection, "rankedSelection");
  require_positive(max_timelines, "maxTimelines");
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
    throw ConfigError("minConfidence must lie in [0, 1]");
  }
}

int CodePointLength(std::string_view utf8) {
  int count = 0;
  for (char c : utf8) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  }
  return count;
}

}  // namespace schema_forge
