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

#include "schema_forge/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <ctime>

#include "schema_forge/errors.h"
#include "schema_forge/evaluation.h"
#include "schema_forge/schema_io.h"
#include "schema_forge/validation.h"

namespace schema_forge {

namespace fs = std::filesystem;

namespace {

std::string Timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::string Fixed3(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", value);
  return buffer;
}

std::string Fixed3(const std::optional<double> &value) {
  return value ? Fixed3(*value) : "undefined";
}

Json TimelineJson(const Timeline &t) {
  Json events = Json::array();
  for (const EventKey &k : t.events) events.push_back(k.ToString());
  return events;
}

// Loads every *.json under dir, sorted by name. Missing directory -> empty.
std::vector<fs::path> JsonFiles(const fs::path &dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) return files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

Json ParseJsonFile(const fs::path &path) {
  try {
    return Json::parse(ReadFile(path));
  } catch (const Json::exception &e) {
    throw ParseError(path.filename().string() + ": " + e.what());
  }
}

}  // namespace

std::vector<StepList> StepListsFromBundles(std::span<const ExtractionBundle> bundles) {
  std::vector<StepList> lists;
  for (const ExtractionBundle &b : bundles) {
    if (b.document.genre != Genre::kSteps) continue;
    try {
      lists.push_back({b.document.id, ParseEnumeratedSteps(b.document)});
    } catch (const EmptySteps &) {
      // Treated as prose; its mentions still count as ordinary events.
    }
  }
  return lists;
}

InductionResult InduceSchema(const Topic &topic, std::span<const ExtractionBundle> bundles,
                             const InductionConfig &config) {
  config.Validate();
  for (const ExtractionBundle &b : bundles) {
    ValidationReport report = ValidateBundle(b, config);
    if (!report.ok()) {
      const ValidationIssue &first = report.issues.front();
      throw InvalidBundle("bundle '" + b.document.id + "': " +
                          std::string(IssueCodeName(first.code)) + ": " + first.message + " (" +
                          std::to_string(report.issues.size()) + " issue(s))");
    }
  }

  InductionResult result;
  std::vector<EventNode> nodes = MergeEvents(bundles, config);
  result.aggregated = AggregateRelations(bundles, nodes, config);
  AggregatedRelations &agg = result.aggregated;
  std::vector<StepList> steps = StepListsFromBundles(bundles);
  agg.temporal = ApplyDirectSteps(steps, agg.nodes, std::move(agg.temporal));

  result.timelines = BuildTimelines(agg.temporal, config.max_timelines);
  result.forest = BuildHierarchyForest(agg.hier);
  for (const HierEdge &e : result.forest.dropped) {
    result.notes.push_back("dropped hierarchy edge " + e.parent.ToString() + " -> " +
                           e.child.ToString());
  }
  result.repaired = RepairAcrossTimelines(RepairTimelines(result.timelines, result.forest),
                                          result.forest);
  LogicalMerge merge = InduceLogicalGroups(result.repaired, agg.nodes);
  result.notes.insert(result.notes.end(), merge.notes.begin(), merge.notes.end());

  Provenance provenance;
  provenance.config = config;
  for (const ExtractionBundle &b : bundles) provenance.document_ids.push_back(b.document.id);
  result.schema = AssembleSchema(topic, agg.nodes, std::move(merge.groups), result.forest,
                                 agg.temporal, std::move(provenance), &result.notes);
  return result;
}

// ---------------------------------------------------------------------------
// Run directory.

bool RunDirectory::Exists(const std::string &relative) const { return fs::exists(Path(relative)); }

bool RunDirectory::initialized() const { return Exists("meta/run.json"); }

Json RunDirectory::LoadMeta() const {
  if (!initialized()) {
    throw ConfigError("run directory " + root_.string() + " is not initialized (pass --topic)");
  }
  return ParseJsonFile(Path("meta/run.json"));
}

void RunDirectory::Initialize(const Topic &topic, const std::string &run_id) {
  Json meta;
  if (initialized()) {
    meta = LoadMeta();
    if (meta.value("topic", "") != topic.name()) {
      throw ConfigError("run directory belongs to topic '" + meta.value("topic", "") + "'");
    }
    return;
  }
  meta["runId"] = run_id.empty() ? topic.slug() : run_id;
  meta["topic"] = topic.name();
  meta["slug"] = topic.slug();
  meta["createdAt"] = Timestamp();
  meta["stages"] = Json::object();
  WriteFile(Path("meta/run.json"), DumpJson(meta));
}

std::string RunDirectory::run_id() const { return LoadMeta().at("runId").get<std::string>(); }

Topic RunDirectory::topic() const {
  Json meta = LoadMeta();
  return Topic(meta.at("topic").get<std::string>(), meta.value("slug", ""));
}

void RunDirectory::MarkStage(const std::string &stage) {
  Json meta = LoadMeta();
  meta["stages"][stage] = Timestamp();
  WriteFile(Path("meta/run.json"), DumpJson(meta));
}

InductionConfig RunDirectory::LoadConfig() const {
  if (!Exists("config.json")) return InductionConfig{};
  InductionConfig config = ConfigFromJson(ParseJsonFile(Path("config.json")));
  config.Validate();
  return config;
}

void RunDirectory::SaveConfig(const InductionConfig &config) const {
  WriteFile(Path("config.json"), DumpJson(ConfigToJson(config)));
}

fs::path DiskJobCache::FileFor(const PromptJob &job) const {
  return directory_ / (std::string(GenreName(job.genre)) + "-" +
                       std::string(PromptStageName(job.stage)) + "-" +
                       std::to_string(job.repetition) + ".json");
}

std::optional<std::string> DiskJobCache::Lookup(const PromptJob &job) {
  fs::path file = FileFor(job);
  if (!fs::exists(file)) return std::nullopt;
  Json j = ParseJsonFile(file);
  // A cached output only counts for the identical prompt.
  if (j.value("prompt", "") != job.prompt || !j.contains("output")) return std::nullopt;
  return j["output"].get<std::string>();
}

void DiskJobCache::Store(const PromptJob &job, const std::string &output) {
  WriteFile(FileFor(job), DumpJson(Json{{"prompt", job.prompt}, {"output", output}}));
}

// ---------------------------------------------------------------------------
// Stages.

std::string RunGenerateStage(RunDirectory &run, TextGenerator &provider,
                             const InductionConfig &config, GenerationOptions options,
                             bool resume) {
  const Topic topic = run.topic();
  const std::string run_id = run.run_id();
  run.SaveConfig(config);
  if (!resume) fs::remove_all(run.Path("generations/jobs"));
  DiskJobCache cache(run.Path("generations/jobs"));
  options.cache = &cache;

  CorpusResult corpus = GenerateCorpus(topic, provider, config, options);

  Json records = Json::array();
  Json times = Json::object();
  for (const GenerationRecord &r : corpus.records) {
    Json j;
    j["genre"] = std::string(GenreName(r.job.genre));
    j["stage"] = std::string(PromptStageName(r.job.stage));
    j["repetition"] = r.job.repetition;
    j["prompt"] = r.job.prompt;
    j["provider"] = r.provider_name;
    j["attempts"] = r.attempts;
    if (r.raw_output) j["rawOutput"] = *r.raw_output;
    if (r.error) j["error"] = *r.error;
    records.push_back(std::move(j));
    times[std::string(GenreName(r.job.genre)) + "-" + std::string(PromptStageName(r.job.stage)) +
          "-" + std::to_string(r.job.repetition)] = r.timestamp;
  }
  WriteFile(run.Path("generations/records.json"),
            DumpJson(Json{{"runId", run_id}, {"records", std::move(records)}}));
  WriteFile(run.Path("meta/generation_times.json"), DumpJson(times));

  fs::remove_all(run.Path("documents"));
  for (const Document &d : corpus.documents) {
    WriteFile(run.Path("documents/" + d.id + ".json"), DumpJson(DocumentToJson(d)));
  }
  run.MarkStage("generate");
  if (corpus.documents.empty()) {
    throw ProviderError("no document was generated (" + std::to_string(corpus.error_count()) +
                        " failed jobs)");
  }
  return "stage=generate run=" + run_id + " documents=" + std::to_string(corpus.documents.size()) +
         " jobs=" + std::to_string(corpus.records.size()) +
         " errors=" + std::to_string(corpus.error_count());
}

std::string RunRankStage(RunDirectory &run, EmbeddingProvider &embedder) {
  const Topic topic = run.topic();
  const std::string run_id = run.run_id();
  const InductionConfig config = run.LoadConfig();
  std::vector<Document> documents;
  for (const fs::path &f : JsonFiles(run.Path("documents"))) {
    try {
      documents.push_back(DocumentFromJson(ParseJsonFile(f)));
    } catch (const Json::exception &e) {
      throw ParseError(f.filename().string() + ": " + e.what());
    }
  }
  if (documents.empty()) throw ConfigError("no documents to rank (run generate first)");

  std::vector<RankedDocument> ranked = RankDocuments(documents, topic, embedder, config);
  fs::remove_all(run.Path("ranked"));
  Json selection = Json::array();
  int bypassed = 0;
  for (const RankedDocument &r : ranked) {
    selection.push_back(Json{{"id", r.document.id},
                             {"genre", std::string(GenreName(r.document.genre))},
                             {"similarity", r.similarity},
                             {"bypassedRanking", r.bypassed_ranking}});
    bypassed += r.bypassed_ranking;
    WriteFile(run.Path("ranked/texts/" + r.document.id + ".txt"), r.document.text);
  }
  WriteFile(run.Path("ranked/selection.json"),
            DumpJson(Json{{"runId", run_id}, {"embedder", embedder.name()}, {"selection", selection}}));
  run.MarkStage("rank");
  return "stage=rank run=" + run_id + " documents=" + std::to_string(documents.size()) +
         " selected=" + std::to_string(ranked.size() - bypassed) +
         " steps=" + std::to_string(bypassed);
}

std::string RunInduceStage(RunDirectory &run, const fs::path &bundle_dir) {
  const Topic topic = run.topic();
  const std::string run_id = run.run_id();
  const InductionConfig config = run.LoadConfig();
  std::vector<ExtractionBundle> bundles = LoadBundleDirectory(bundle_dir);
  if (bundles.empty()) throw InvalidBundle("no bundles found in " + bundle_dir.string());

  InductionResult result = InduceSchema(topic, bundles, config);
  const AggregatedRelations &agg = result.aggregated;
  WriteFile(run.Path("schema/schema.json"), DumpJson(SchemaToJson(result.schema)));
  Json debug = AggregationDebugJson(agg.nodes, agg.temporal, agg.hier);
  debug["runId"] = run_id;
  WriteFile(run.Path("schema/aggregation.json"), DumpJson(debug));
  Json induction;
  induction["runId"] = run_id;
  induction["timelines"] = Json::array();
  for (const Timeline &t : result.timelines) induction["timelines"].push_back(TimelineJson(t));
  induction["repairedTimelines"] = Json::array();
  for (const Timeline &t : result.repaired) induction["repairedTimelines"].push_back(TimelineJson(t));
  induction["notes"] = result.notes;
  WriteFile(run.Path("schema/induction.json"), DumpJson(induction));
  run.MarkStage("induce");

  int and_groups = 0, or_groups = 0;
  for (const LogicalGroup &g : result.schema.ordered_groups) {
    and_groups += g.connective == Connective::kAnd;
    or_groups += g.connective == Connective::kOr;
  }
  return "stage=induce run=" + run_id + " bundles=" + std::to_string(bundles.size()) +
         " nodes=" + std::to_string(result.schema.nodes.size()) +
         " timelines=" + std::to_string(result.repaired.size()) +
         " groups=" + std::to_string(result.schema.ordered_groups.size()) +
         " and=" + std::to_string(and_groups) + " or=" + std::to_string(or_groups) +
         " hierarchy=" + std::to_string(result.schema.hierarchy_edges.size());
}

namespace {

SchemaGraph LoadRunSchema(const RunDirectory &run) {
  if (!run.Exists("schema/schema.json")) throw ConfigError("no schema in run (run induce first)");
  return ParseSchema(ReadFile(run.Path("schema/schema.json")));
}

}  // namespace

std::string RunExportStage(RunDirectory &run, const std::string &format,
                           const std::optional<fs::path> &out) {
  const std::string run_id = run.run_id();
  SchemaGraph schema = LoadRunSchema(run);
  std::string text = ExportSchema(schema, format);
  fs::path target = out ? *out : run.Path("export/schema." + format);
  WriteFile(target, text);
  run.MarkStage("export");
  return "stage=export run=" + run_id + " format=" + format +
         " bytes=" + std::to_string(text.size()) + " path=" + target.string();
}

std::string RunEvalStage(RunDirectory &run, const fs::path &gold_path,
                         const std::optional<fs::path> &synonyms) {
  const std::string run_id = run.run_id();
  SchemaGraph schema = LoadRunSchema(run);
  GoldSchema gold = ParseGoldSchema(ReadFile(gold_path));
  std::optional<SynonymLexicon> lexicon;
  if (synonyms) lexicon = SynonymLexicon::Parse(ReadFile(*synonyms));
  EvaluationReport report = Evaluate(schema, gold, lexicon ? &*lexicon : nullptr);

  Json j;
  j["runId"] = run_id;
  j["gold"] = gold_path.filename().string();
  j["synonyms"] = synonyms ? Json(synonyms->filename().string()) : Json(nullptr);
  j.update(EvaluationReportToJson(report));
  WriteFile(run.Path("metrics/eval.json"), DumpJson(j));
  run.MarkStage("eval");

  std::string line = "stage=eval run=" + run_id + " coverage=" + Fixed3(report.event_coverage);
  line += " synonym_coverage=" + Fixed3(report.synonym_coverage);
  for (const auto &[family, value] : report.relation_coverage) {
    line += " " + std::string(RelationFamilyName(family)) + "=" + Fixed3(value);
  }
  line += " last_event=" +
          (report.last_event_hit ? std::to_string(*report.last_event_hit) : std::string("undefined"));
  line += " additional=" + std::to_string(report.additional_events);
  return line;
}

std::string RunStatsStage(RunDirectory &run, const fs::path &ontology_path,
                          const fs::path &bundle_dir) {
  const std::string run_id = run.run_id();
  const InductionConfig config = run.LoadConfig();
  Ontology ontology = ParseOntology(ReadFile(ontology_path), config.role_vocabulary);
  std::vector<ExtractionBundle> bundles = LoadBundleDirectory(bundle_dir);
  RelevanceStats stats = CorpusRelevanceStats(bundles, ontology);

  Json j;
  j["runId"] = run_id;
  j["ontology"] = ontology_path.filename().string();
  j["tokens"] = stats.tokens;
  j["relevantEvents"] = stats.relevant_events;
  j["relevantArguments"] = stats.relevant_arguments;
  j["eventRatio"] = stats.event_ratio;
  j["argumentRatio"] = stats.argument_ratio;
  WriteFile(run.Path("metrics/stats.json"), DumpJson(j));
  run.MarkStage("stats");
  return "stage=stats run=" + run_id + " tokens=" + std::to_string(stats.tokens) +
         " event_ratio=" + Fixed3(stats.event_ratio) + " arg_ratio=" + Fixed3(stats.argument_ratio);
}

}  // namespace schema_forge
