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

#include "schema_forge/validation.h"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

namespace schema_forge {

std::string_view IssueCodeName(IssueCode code) {
  switch (code) {
    case IssueCode::kEmptyDocumentId: return "EMPTY_DOCUMENT_ID";
    case IssueCode::kTokenOutOfBounds: return "TOKEN_OUT_OF_BOUNDS";
    case IssueCode::kOverlappingTokenSpan: return "OVERLAPPING_TOKEN_SPAN";
    case IssueCode::kDuplicateId: return "DUPLICATE_ID";
    case IssueCode::kDocumentMismatch: return "DOCUMENT_MISMATCH";
    case IssueCode::kBadTriggerRange: return "BAD_TRIGGER_RANGE";
    case IssueCode::kEmptyLemma: return "EMPTY_LEMMA";
    case IssueCode::kUnknownRole: return "UNKNOWN_ROLE";
    case IssueCode::kClusterTooSmall: return "CLUSTER_TOO_SMALL";
    case IssueCode::kDanglingMention: return "DANGLING_MENTION";
    case IssueCode::kSelfRelation: return "SELF_RELATION";
    case IssueCode::kDuplicatePred: return "DUPLICATE_PRED";
    case IssueCode::kConfidenceOutOfRange: return "CONFIDENCE_OUT_OF_RANGE";
  }
  return "UNKNOWN";
}

bool ValidationReport::Has(IssueCode code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [code](const ValidationIssue &i) { return i.code == code; });
}

namespace {

class Validator {
 public:
  Validator(const ExtractionBundle &bundle, const InductionConfig &config)
      : bundle_(bundle),
        roles_(config.role_vocabulary.begin(), config.role_vocabulary.end()) {}

  ValidationReport Run() {
    CheckDocument();
    CheckEvents();
    CheckClusters();
    CheckTemporal();
    CheckHier();
    return std::move(report_);
  }

 private:
  void Add(IssueCode code, std::string message) {
    report_.issues.push_back({code, std::move(message)});
  }

  const std::string &doc_id() const { return bundle_.document.id; }

  void CheckDocument() {
    const Document &doc = bundle_.document;
    if (doc.id.empty()) Add(IssueCode::kEmptyDocumentId, "document id is empty");
    const int length = CodePointLength(doc.text);
    int previous_end = 0;
    for (size_t i = 0; i < doc.tokens.size(); ++i) {
      const Token &t = doc.tokens[i];
      std::string where = "token " + std::to_string(i);
      if (t.start < 0 || t.end < t.start || t.end > length) {
        Add(IssueCode::kTokenOutOfBounds,
            where + " span [" + std::to_string(t.start) + ", " +
                std::to_string(t.end) + ") outside text of length " +
                std::to_string(length));
      }
      if (t.start < previous_end) {
        Add(IssueCode::kOverlappingTokenSpan,
            where + " starts before the previous token ends");
      }
      previous_end = std::max(previous_end, t.end);
    }
  }

  void CheckEvents() {
    const int token_count = static_cast<int>(bundle_.document.tokens.size());
    for (const EventMention &e : bundle_.events) {
      if (!event_ids_.insert(e.id).second) {
        Add(IssueCode::kDuplicateId, "duplicate event mention id '" + e.id + "'");
      }
      if (e.document_id != doc_id()) {
        Add(IssueCode::kDocumentMismatch,
            "event '" + e.id + "' belongs to document '" + e.document_id + "'");
      }
      if (e.trigger.start < 0 || e.trigger.end <= e.trigger.start ||
          e.trigger.end > token_count) {
        Add(IssueCode::kBadTriggerRange,
            "event '" + e.id + "' trigger range is not a valid token range");
      }
      if (e.trigger_lemma.empty()) {
        Add(IssueCode::kEmptyLemma, "event '" + e.id + "' has an empty lemma");
      }
      for (const ArgumentMention &arg : e.arguments) {
        if (!roles_.empty() && !roles_.count(arg.role)) {
          Add(IssueCode::kUnknownRole,
              "event '" + e.id + "' uses role '" + arg.role +
                  "' outside the role vocabulary");
        }
      }
    }
  }

  void CheckClusters() {
    for (size_t i = 0; i < bundle_.coref_clusters.size(); ++i) {
      const CorefCluster &c = bundle_.coref_clusters[i];
      std::string where = "coref cluster " + std::to_string(i);
      if (c.document_id != doc_id()) {
        Add(IssueCode::kDocumentMismatch,
            where + " belongs to document '" + c.document_id + "'");
      }
      std::set<std::string> unique(c.member_mention_ids.begin(),
                                   c.member_mention_ids.end());
      if (unique.size() < 2) {
        Add(IssueCode::kClusterTooSmall, where + " has fewer than two members");
      }
      // Entity mentions are not listed in the bundle, so only event clusters
      // can be resolved.
      if (c.kind != CorefKind::kEvent) continue;
      for (const std::string &id : c.member_mention_ids) {
        if (!event_ids_.count(id)) {
          Add(IssueCode::kDanglingMention,
              where + " references unknown mention '" + id + "'");
        }
      }
    }
  }

  template <typename Pred>
  void CheckPair(const Pred &p, const std::string &family,
                 std::set<std::pair<std::string, std::string>> &seen) {
    std::string where = family + " prediction (" + p.source_mention_id + ", " +
                        p.target_mention_id + ")";
    if (p.document_id != doc_id()) {
      Add(IssueCode::kDocumentMismatch,
          where + " belongs to document '" + p.document_id + "'");
    }
    for (const std::string *id : {&p.source_mention_id, &p.target_mention_id}) {
      if (!event_ids_.count(*id)) {
        Add(IssueCode::kDanglingMention,
            where + " references unknown mention '" + *id + "'");
      }
    }
    if (p.source_mention_id == p.target_mention_id) {
      Add(IssueCode::kSelfRelation, where + " relates a mention to itself");
    }
    if (!(p.confidence >= 0.0 && p.confidence <= 1.0)) {
      Add(IssueCode::kConfidenceOutOfRange, where + " confidence outside [0, 1]");
    }
    if (!seen.insert({p.source_mention_id, p.target_mention_id}).second) {
      Add(IssueCode::kDuplicatePred, where + " is predicted more than once");
    }
  }

  void CheckTemporal() {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto &p : bundle_.temporal_preds) CheckPair(p, "temporal", seen);
  }

  void CheckHier() {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto &p : bundle_.hier_preds) CheckPair(p, "hierarchical", seen);
  }

  const ExtractionBundle &bundle_;
  std::unordered_set<std::string> roles_;
  std::unordered_set<std::string> event_ids_;
  ValidationReport report_;
};

}  // namespace

ValidationReport ValidateBundle(const ExtractionBundle &bundle,
                                const InductionConfig &config) {
  return Validator(bundle, config).Run();
}

}  // namespace schema_forge
