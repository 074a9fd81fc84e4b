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

#include <atomic>
#include <map>
#include <random>

#include "schema_forge/errors.h"
#include "schema_forge/pipeline.h"
#include "schema_forge/schema_io.h"
#include "test_util.h"

namespace schema_forge {
namespace {

namespace fs = std::filesystem;
using testing::BundleBuilder;
using testing::Key;

class FailingGenerator : public TextGenerator {
 public:
  std::string name() const override { return "failing"; }
  GenerationResponse Generate(const GenerationRequest &) override {
    ++calls;
    return GenerationResponse::Fail("down");
  }
  std::atomic<int> calls{0};
};

GenerationOptions Quiet() {
  GenerationOptions options;
  options.sleep = [](std::chrono::milliseconds) {};
  return options;
}

std::vector<std::string> Lemmas(const LogicalGroup &g) {
  std::vector<std::string> out;
  for (const EventKey &k : g.members) out.push_back(k.lemma);
  return out;
}

TEST(InduceSchemaTest, CivilUnrest) {
  auto bundles = LoadBundleDirectory(testing::FixtureDir() / "civil_unrest");
  auto result = InduceSchema(Topic("civil unrest"), bundles, InductionConfig{});
  const auto &groups = result.schema.ordered_groups;
  ASSERT_EQ(groups.size(), 4u);
  EXPECT_EQ(Lemmas(groups[0]), std::vector<std::string>{"begin"});
  EXPECT_EQ(groups[1].connective, Connective::kAnd);
  EXPECT_EQ(Lemmas(groups[1]), (std::vector<std::string>{"call", "clash"}));
  EXPECT_EQ(groups[2].connective, Connective::kOr);
  EXPECT_EQ(Lemmas(groups[2]), (std::vector<std::string>{"disperse", "urge"}));
  EXPECT_EQ(Lemmas(groups[3]), std::vector<std::string>{"condemn"});
  EXPECT_EQ(result.schema.provenance.document_ids.size(), 4u);
}

TEST(InduceSchemaTest, SportsGames) {
  auto bundles = LoadBundleDirectory(testing::FixtureDir() / "sports_games");
  auto result = InduceSchema(Topic("sports games"), bundles, InductionConfig{});
  std::vector<std::string> backbone;
  for (const LogicalGroup &g : result.schema.ordered_groups) {
    ASSERT_EQ(g.connective, Connective::kSingle);
    backbone.push_back(g.members[0].lemma);
  }
  EXPECT_EQ(backbone, (std::vector<std::string>{"warm up", "play", "cool down"}));
  ASSERT_EQ(result.schema.hierarchy_edges.size(), 1u);
  EXPECT_EQ(result.schema.hierarchy_edges[0].first.lemma, "warm up");
  EXPECT_EQ(result.schema.hierarchy_edges[0].second.lemma, "stretch");
  EXPECT_EQ(result.schema.nodes.size(), 4u);
}

TEST(InduceSchemaTest, PandemicThresholds) {
  auto bundles = LoadBundleDirectory(testing::FixtureDir() / "pandemic");
  auto result = InduceSchema(Topic("pandemic outbreak"), bundles, InductionConfig{});
  std::map<std::string, int> freq;
  for (const EventNode &n : result.schema.nodes) freq[n.key.lemma] = n.frequency;
  EXPECT_EQ(freq, (std::map<std::string, int>{{"infect", 3}, {"spread", 5}, {"take precautions", 5}}));
  EXPECT_TRUE(result.schema.hierarchy_edges.empty());
}

TEST(InduceSchemaTest, InvalidBundleRejected) {
  BundleBuilder b("bad");
  auto e = b.Event("riot");
  b.Temporal(e, "bad-e99", TemporalLabel::kBefore);
  std::vector<ExtractionBundle> bundles = {b.bundle()};
  try {
    InduceSchema(Topic("t"), bundles, InductionConfig{});
    FAIL() << "expected InvalidBundle";
  } catch (const InvalidBundle &error) {
    EXPECT_NE(std::string(error.what()).find("DANGLING_MENTION"), std::string::npos);
  }
  InductionConfig broken;
  broken.min_event_docs = 0;
  EXPECT_THROW(InduceSchema(Topic("t"), {}, broken), ConfigError);
}

TEST(InduceSchemaTest, StepsDocumentAddsOrder) {
  // Two news documents mention plan and attack without order; the steps
  // document supplies BEFORE(plan, attack) from one document, so a lowered
  // temporal threshold lets it through.
  std::vector<ExtractionBundle> bundles;
  for (int i = 0; i < 2; ++i) {
    BundleBuilder b("news-" + std::to_string(i));
    b.Event("plan");
    b.Event("attack");
    bundles.push_back(b.bundle());
  }
  ExtractionBundle steps;
  steps.document = {"steps-000", Genre::kSteps, "1. Plan the raid.\n2. Attack the bank.", {}};
  steps.document.tokens = {{"1.", 0, 2}, {"Plan", 3, 7}};
  bundles.push_back(steps);
  InductionConfig config;
  config.min_temporal_docs = 1;
  auto result = InduceSchema(Topic("heist"), bundles, config);
  ASSERT_EQ(result.schema.ordered_groups.size(), 2u);
  EXPECT_EQ(result.schema.ordered_groups[0].members[0].lemma, "plan");
  auto lists = StepListsFromBundles(bundles);
  ASSERT_EQ(lists.size(), 1u);
  EXPECT_EQ(lists[0].steps.size(), 2u);
}

TEST(InduceSchemaTest, InputOrderIndependent) {
  std::mt19937 rng(31);
  const std::vector<std::string> lemmas = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ExtractionBundle> bundles;
    int docs = 2 + static_cast<int>(rng() % 5);
    for (int d = 0; d < docs; ++d) {
      BundleBuilder b("d" + std::to_string(d));
      std::vector<std::string> pool = lemmas;
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(2 + rng() % 3);
      if (rng() % 3) std::sort(pool.begin(), pool.end());
      std::vector<std::string> ids;
      for (const std::string &l : pool) ids.push_back(b.Event(l));
      b.Chain(ids);
      if (rng() % 4 == 0) b.Hier(ids[0], ids[1], HierLabel::kParentChild);
      bundles.push_back(b.bundle());
    }
    InductionConfig config;
    config.min_coref_hier_docs = 1 + static_cast<int>(rng() % 2);
    std::string first = ExportSchema(InduceSchema(Topic("t"), bundles, config).schema, "json");
    std::shuffle(bundles.begin(), bundles.end(), rng);
    EXPECT_EQ(ExportSchema(InduceSchema(Topic("t"), bundles, config).schema, "json"), first);
  }
}

// --- Run directory and stages.

std::map<std::string, std::string> Snapshot(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string rel = fs::relative(entry.path(), root).generic_string();
    if (rel.rfind("meta/", 0) == 0) continue;
    files[rel] = ReadFile(entry.path());
  }
  return files;
}

void FullRun(const fs::path &dir) {
  RunDirectory run(dir);
  run.Initialize(Topic("civil unrest", Slugify("civil unrest")), "");
  MockTextGenerator mock(testing::FixtureDir() / "mock_generation");
  EXPECT_EQ(RunGenerateStage(run, mock, run.LoadConfig(), Quiet(), false),
            "stage=generate run=civil-unrest documents=61 jobs=91 errors=0");
  HashingEmbedder embedder;
  EXPECT_EQ(RunRankStage(run, embedder), "stage=rank run=civil-unrest documents=61 selected=30 steps=1");
  fs::create_directories(dir / "bundles");
  for (const auto &entry : fs::directory_iterator(testing::FixtureDir() / "civil_unrest")) {
    fs::copy_file(entry.path(), dir / "bundles" / entry.path().filename());
  }
  std::string induce = RunInduceStage(run, dir / "bundles");
  EXPECT_NE(induce.find("and=1 or=1"), std::string::npos) << induce;
  RunExportStage(run, "json", std::nullopt);
  RunExportStage(run, "dot", std::nullopt);
  std::string eval = RunEvalStage(run, testing::FixtureDir() / "eval" / "civil_unrest_gold.json",
                                  testing::FixtureDir() / "eval" / "synonyms.json");
  EXPECT_NE(eval.find("coverage=1.000"), std::string::npos) << eval;
}

TEST(RunStagesTest, EndToEndIsByteStable) {
  fs::path a = testing::TempDir("run_a"), b = testing::TempDir("run_b");
  FullRun(a);
  FullRun(b);
  auto sa = Snapshot(a), sb = Snapshot(b);
  EXPECT_EQ(sa, sb);
  for (const char *required :
       {"config.json", "generations/records.json", "ranked/selection.json", "schema/schema.json",
        "schema/aggregation.json", "schema/induction.json", "export/schema.json",
        "export/schema.dot", "metrics/eval.json", "documents/steps-000.json"}) {
    EXPECT_TRUE(sa.count(required)) << required;
  }
  EXPECT_EQ(ParseSchema(sa["export/schema.json"]), ParseSchema(sa["schema/schema.json"]));
  RunDirectory run(a);
  EXPECT_EQ(run.run_id(), "civil-unrest");
  EXPECT_EQ(run.topic().name(), "civil unrest");
}

TEST(RunStagesTest, ResumeSkipsProvider) {
  fs::path dir = testing::TempDir("resume");
  RunDirectory run(dir);
  run.Initialize(Topic("civil unrest"), "r1");
  InductionConfig config;
  config.docs_per_genre = 3;
  MockTextGenerator mock(testing::FixtureDir() / "mock_generation");
  RunGenerateStage(run, mock, config, Quiet(), false);
  auto before = Snapshot(dir);
  FailingGenerator failing;
  EXPECT_EQ(RunGenerateStage(run, failing, config, Quiet(), true),
            "stage=generate run=r1 documents=7 jobs=10 errors=0");
  EXPECT_EQ(failing.calls.load(), 0);
  auto after = Snapshot(dir);
  EXPECT_EQ(before["documents/news-000.json"], after["documents/news-000.json"]);
  // Without resume the cache is cleared and every job fails.
  EXPECT_THROW(RunGenerateStage(run, failing, config, Quiet(), false), ProviderError);
}

TEST(RunStagesTest, TopicMismatchAndMissingInputs) {
  fs::path dir = testing::TempDir("mismatch");
  RunDirectory run(dir);
  run.Initialize(Topic("civil unrest"), "");
  EXPECT_THROW(run.Initialize(Topic("kidnapping"), ""), ConfigError);
  EXPECT_THROW(RunExportStage(run, "json", std::nullopt), Error);
  HashingEmbedder embedder;
  EXPECT_THROW(RunRankStage(run, embedder), Error);
  fs::create_directories(dir / "bundles");
  EXPECT_THROW(RunInduceStage(run, dir / "bundles"), InvalidBundle);
  RunDirectory fresh(testing::TempDir("fresh"));
  EXPECT_FALSE(fresh.initialized());
}

TEST(RunStagesTest, StatsStage) {
  fs::path dir = testing::TempDir("stats");
  RunDirectory run(dir);
  run.Initialize(Topic("terrorism"), "");
  std::string summary = RunStatsStage(run, testing::FixtureDir() / "stats" / "ontology.txt",
                                      testing::FixtureDir() / "stats" / "bundles");
  EXPECT_EQ(summary, "stage=stats run=terrorism tokens=100 event_ratio=12.000 arg_ratio=5.000");
  EXPECT_TRUE(run.Exists("metrics/stats.json"));
}

TEST(DiskJobCacheTest, PromptMustMatch) {
  fs::path dir = testing::TempDir("cache");
  DiskJobCache cache(dir);
  PromptJob job{Genre::kNews, PromptStage::kHeadline, "Write a news headline about x.", 2};
  EXPECT_FALSE(cache.Lookup(job).has_value());
  cache.Store(job, "Headline");
  EXPECT_EQ(cache.Lookup(job), "Headline");
  PromptJob other = job;
  other.prompt = "Write a news headline about y.";
  EXPECT_FALSE(cache.Lookup(other).has_value());
}

}  // namespace
}  // namespace schema_forge
