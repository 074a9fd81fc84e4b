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

#ifndef SCHEMA_FORGE_VALIDATION_H_
#define SCHEMA_FORGE_VALIDATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "schema_forge/core.h"

namespace schema_forge {

enum class IssueCode {
  kEmptyDocumentId,
  kTokenOutOfBounds,
  kOverlappingTokenSpan,
  kDuplicateId,
  kDocumentMismatch,
  kBadTriggerRange,
  kEmptyLemma,
  kUnknownRole,
  kClusterTooSmall,
  kDanglingMention,
  kSelfRelation,
  kDuplicatePred,
  kConfidenceOutOfRange,
};

// Machine-readable code, e.g. "DANGLING_MENTION".
std::string_view IssueCodeName(IssueCode code);

struct ValidationIssue {
  IssueCode code;
  std::string message;

  bool operator==(const ValidationIssue &other) const = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool Has(IssueCode code) const;

  bool operator==(const ValidationReport &other) const = default;
};

// Lists every invariant violation in the bundle, in a deterministic order.
// The role vocabulary is taken from the config; an empty vocabulary accepts
// any role.
ValidationReport ValidateBundle(const ExtractionBundle &bundle,
                                const InductionConfig &config = {});

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_VALIDATION_H_
