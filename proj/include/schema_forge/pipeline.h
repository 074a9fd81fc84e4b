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

// End-to-end induction and the on-disk run directory used by the CLI.
//
// Run directory layout:
//   meta/run.json              run id, topic, stage timestamps
//   config.json                induction config snapshot
//   generations/jobs/*.json    per-job outputs, reused by --resume
//   generations/records.json   one record per job
//   documents/<id>.json        generated documents
//   ranked/selection.json      selected documents with similarity
//   ranked/texts/<id>.txt      selected texts, input for extraction
//   bundles/<id>.json          extraction bundles
//   schema/schema.json         induced schema
//   schema/aggregation.json    aggregated nodes and edges
//   schema/induction.json      timelines and merge notes
//   export/schema.{json,dot}   exported schema
//   metrics/eval.json, metrics/stats.json
// Only meta/ holds wall-clock data.

#ifndef SCHEMA_FORGE_PIPELINE_H_
#define SCHEMA_FORGE_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schema_forge/aggregation.h"
#include "schema_forge/assembly.h"
#include "schema_forge/bundle_io.h"
#include "schema_forge/core.h"
#include "schema_forge/generation.h"
#include "schema_forge/ranking.h"
#include "schema_forge/timeline.h"

namespace schema_forge {

struct InductionResult {
  SchemaGraph schema;
  AggregatedRelations aggregated;  // temporal edges include direct steps
  std::vector<Timeline> timelines;  // before repair
  std::vector<Timeline> repaired;
  HierarchyForest forest;
  std::vector<std::string> notes;
};

// Step lists of the steps-genre documents. Documents without enumerated
// steps are skipped.
std::vector<StepList> StepListsFromBundles(std::span<const ExtractionBundle> bundles);

// Runs aggregation, timeline construction, repair, logical merging and
// assembly. Throws InvalidBundle if a bundle fails validation.
InductionResult InduceSchema(const Topic &topic, std::span<const ExtractionBundle> bundles,
                             const InductionConfig &config);

class RunDirectory {
 public:
  explicit RunDirectory(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path &root() const { return root_; }
  std::filesystem::path Path(const std::string &relative) const { return root_ / relative; }
  bool Exists(const std::string &relative) const;

  // Creates or updates meta/run.json. The topic must match an existing run.
  void Initialize(const Topic &topic, const std::string &run_id);
  bool initialized() const;
  std::string run_id() const;
  Topic topic() const;
  // Records the stage completion time in meta/run.json.
  void MarkStage(const std::string &stage);

  InductionConfig LoadConfig() const;  // defaults if absent
  void SaveConfig(const InductionConfig &config) const;

 private:
  Json LoadMeta() const;

  std::filesystem::path root_;
};

// Job cache stored as generations/jobs/<genre>-<stage>-<rep>.json.
class DiskJobCache : public JobCache {
 public:
  explicit DiskJobCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

  std::optional<std::string> Lookup(const PromptJob &job) override;
  void Store(const PromptJob &job, const std::string &output) override;

 private:
  std::filesystem::path FileFor(const PromptJob &job) const;

  std::filesystem::path directory_;
};

// Each stage returns its one-line summary.
std::string RunGenerateStage(RunDirectory &run, TextGenerator &provider,
                             const InductionConfig &config, GenerationOptions options,
                             bool resume);
std::string RunRankStage(RunDirectory &run, EmbeddingProvider &embedder);
std::string RunInduceStage(RunDirectory &run, const std::filesystem::path &bundle_dir);
std::string RunExportStage(RunDirectory &run, const std::string &format,
                           const std::optional<std::filesystem::path> &out);
std::string RunEvalStage(RunDirectory &run, const std::filesystem::path &gold,
                         const std::optional<std::filesystem::path> &synonyms);
std::string RunStatsStage(RunDirectory &run, const std::filesystem::path &ontology,
                          const std::filesystem::path &bundle_dir);

}  // namespace schema_forge

#endif  // SCHEMA_FORGE_PIPELINE_H_
