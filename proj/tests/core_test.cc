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

#include <random>

#include "schema_forge/bundle_io.h"
#include "schema_forge/core.h"
#include "schema_forge/errors.h"
#include "schema_forge/event_key.h"
#include "schema_forge/validation.h"
#include "test_util.h"

namespace schema_forge {
namespace {

using testing::Arg;
using testing::BundleBuilder;

TEST(TopicTest, TrimsAndRejectsBlank) {
  Topic t("  kidnapping ");
  EXPECT_EQ(t.name(), "kidnapping");
  EXPECT_EQ(t.slug(), "kidnapping");
  EXPECT_THROW(Topic("   "), ConfigError);
  EXPECT_THROW(Topic(""), ConfigError);
}

TEST(TopicTest, Slug) {
  EXPECT_EQ(Slugify("Civil Unrest!"), "civil-unrest");
  EXPECT_EQ(Slugify("3D print an object"), "3d-print-an-object");
  EXPECT_EQ(Topic("filing a patent", "patents").slug(), "patents");
}

TEST(GenreTest, NamesRoundTrip) {
  for (Genre g : {Genre::kNews, Genre::kHowTo, Genre::kSteps}) {
    EXPECT_EQ(ParseGenre(GenreName(g)), g);
  }
  EXPECT_THROW(ParseGenre("poetry"), ParseError);
}

TEST(ConfigTest, DefaultsAndValidation) {
  InductionConfig config;
  EXPECT_EQ(config.min_event_docs, 2);
  EXPECT_EQ(config.min_temporal_docs, 2);
  EXPECT_EQ(config.min_coref_hier_docs, 3);
  EXPECT_EQ(config.docs_per_genre, 30);
  EXPECT_EQ(config.ranked_selection, 30);
  EXPECT_EQ(config.min_confidence, 0.0);
  EXPECT_NO_THROW(config.Validate());
  config.min_event_docs = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = {};
  config.min_confidence = 1.5;
  EXPECT_THROW(config.Validate(), ConfigError);
}

// --- Event keys.

EventMention Mention(const std::string &id, const std::string &lemma,
                     std::vector<ArgumentMention> args = {}) {
  return {id, "d1", {0, 1}, lemma, std::move(args)};
}

TEST(EventKeyTest, SignatureSkipsAbsentAndSorts) {
  EventMention m = Mention("m1", "Take Precautions",
                           {Arg("ARG1", "masks"), Arg("ARG0", "residents", "PER"),
                            Arg("ARG-LOC", "city", "LOC")});
  EventKey key = CanonicalEventKey(m, {}, {});
  EXPECT_EQ(key.lemma, "take precautions");
  EXPECT_EQ(key.ToString(), "take precautions[ARG-LOC:LOC,ARG0:PER]");
}

TEST(EventKeyTest, DifferentSubjectsSameType) {
  std::vector<EventKey> keys;
  for (const char *subject : {"residents", "residents", "people", "people", "public"}) {
    keys.push_back(CanonicalEventKey(Mention("m", "take precautions", {Arg("ARG0", subject, "PER")}), {}, {}));
  }
  for (const EventKey &k : keys) EXPECT_EQ(k, keys.front());
}

TEST(EventKeyTest, DifferentNerTypesDistinct) {
  EventKey per = CanonicalEventKey(Mention("a", "flee", {Arg("ARG0", "man", "PER")}), {}, {});
  EventKey org = CanonicalEventKey(Mention("b", "flee", {Arg("ARG0", "gang", "ORG")}), {}, {});
  EXPECT_NE(per, org);
  EXPECT_FALSE(KeysCompatible(per, org));
}

TEST(EventKeyTest, ClusterRepresentativeIsSmallestLemma) {
  std::vector<EventMention> events = {Mention("m1", "flee"), Mention("m2", "escape")};
  std::vector<CorefCluster> clusters = {{"d1", {"m1", "m2"}, CorefKind::kEvent}};
  EXPECT_EQ(CanonicalEventKey(events[0], events, clusters).lemma, "escape");
  EXPECT_EQ(CanonicalEventKey(events[1], events, clusters).lemma, "escape");
  // Entity clusters and other documents do not count.
  std::vector<CorefCluster> entity = {{"d1", {"m1", "m2"}, CorefKind::kEntity}};
  EXPECT_EQ(CanonicalEventKey(events[0], events, entity).lemma, "flee");
  std::vector<CorefCluster> other_doc = {{"d2", {"m1", "m2"}, CorefKind::kEvent}};
  EXPECT_EQ(CanonicalEventKey(events[0], events, other_doc).lemma, "flee");
}

TEST(EventKeyTest, WildcardCompatibility) {
  EventKey bare = MakeEventKey("flee", {});
  EventKey per = MakeEventKey("flee", {{"ARG0", "PER"}});
  EventKey org = MakeEventKey("flee", {{"ARG0", "ORG"}});
  EventKey loc = MakeEventKey("flee", {{"ARG-LOC", "LOC"}});
  EXPECT_TRUE(KeysCompatible(bare, per));
  EXPECT_TRUE(KeysCompatible(per, loc));
  EXPECT_FALSE(KeysCompatible(per, org));
  EXPECT_FALSE(KeysCompatible(per, MakeEventKey("run", {{"ARG0", "PER"}})));
  // Not transitive.
  EXPECT_TRUE(KeysCompatible(org, bare));
  EXPECT_EQ(UnionKey(per, loc).ToString(), "flee[ARG-LOC:LOC,ARG0:PER]");
}

TEST(EventKeyTest, CompatibilityReflexiveSymmetric) {
  std::mt19937 rng(7);
  const std::vector<std::string> roles = {"ARG0", "ARG1", "ARG-LOC"};
  const std::vector<std::string> types = {"PER", "ORG", "LOC"};
  auto random_key = [&] {
    std::vector<RoleType> sig;
    for (const std::string &r : roles) {
      int pick = static_cast<int>(rng() % 4);
      if (pick < 3) sig.push_back({r, types[pick]});
    }
    return MakeEventKey(rng() % 2 ? "flee" : "run", sig);
  };
  for (int i = 0; i < 500; ++i) {
    EventKey a = random_key(), b = random_key();
    EXPECT_TRUE(KeysCompatible(a, a));
    EXPECT_EQ(KeysCompatible(a, b), KeysCompatible(b, a));
  }
}

// --- Validation.

ExtractionBundle ValidBundle() {
  BundleBuilder b("doc-1");
  auto e1 = b.Event("arrest", {Arg("ARG0", "police", "ORG")});
  auto e2 = b.Event("charge", {Arg("ARG1", "suspect", "PER")});
  b.Temporal(e1, e2, TemporalLabel::kBefore);
  b.Hier(e1, e2, HierLabel::kNoRel);
  b.Cluster({e1, e2});
  return b.bundle();
}

TEST(ValidationTest, ValidBundleHasEmptyReport) {
  EXPECT_TRUE(ValidateBundle(ValidBundle()).ok());
}

TEST(ValidationTest, DanglingMention) {
  ExtractionBundle b = ValidBundle();
  b.temporal_preds.push_back({"doc-1", "doc-1-e1", "missing", TemporalLabel::kBefore, 1.0});
  ValidationReport r = ValidateBundle(b);
  EXPECT_TRUE(r.Has(IssueCode::kDanglingMention));
  EXPECT_EQ(IssueCodeName(IssueCode::kDanglingMention), "DANGLING_MENTION");
}

TEST(ValidationTest, DuplicatePrediction) {
  ExtractionBundle b = ValidBundle();
  b.temporal_preds.push_back(b.temporal_preds.front());
  ValidationReport r = ValidateBundle(b);
  EXPECT_TRUE(r.Has(IssueCode::kDuplicatePred));
  EXPECT_EQ(IssueCodeName(IssueCode::kDuplicatePred), "DUPLICATE_PRED");
  // The same pair in the other family is not a duplicate.
  ExtractionBundle c = ValidBundle();
  c.hier_preds.front().label = HierLabel::kParentChild;
  EXPECT_TRUE(ValidateBundle(c).ok());
}

TEST(ValidationTest, TokenProblems) {
  ExtractionBundle b = ValidBundle();
  b.document.tokens.push_back({"x", 2, 4});
  EXPECT_TRUE(ValidateBundle(b).Has(IssueCode::kOverlappingTokenSpan));
  ExtractionBundle c = ValidBundle();
  c.document.tokens.push_back({"x", 500, 501});
  EXPECT_TRUE(ValidateBundle(c).Has(IssueCode::kTokenOutOfBounds));
}

TEST(ValidationTest, TokenOffsetsCountCodePoints) {
  BundleBuilder b("doc-u");
  b.Word("caf\xC3\xA9");  // 4 code points, 5 bytes
  b.Word("ok");
  ExtractionBundle bundle = b.bundle();
  EXPECT_EQ(bundle.document.tokens[1].start, 5);
  EXPECT_TRUE(ValidateBundle(bundle).ok());
}

TEST(ValidationTest, EventProblems) {
  ExtractionBundle b = ValidBundle();
  b.events.push_back(b.events.front());
  b.events.back().trigger = {5, 99};
  b.events.back().trigger_lemma = "";
  b.events.back().document_id = "doc-2";
  b.events.back().arguments.push_back(Arg("AGENT", "x"));
  ValidationReport r = ValidateBundle(b);
  EXPECT_TRUE(r.Has(IssueCode::kDuplicateId));
  EXPECT_TRUE(r.Has(IssueCode::kBadTriggerRange));
  EXPECT_TRUE(r.Has(IssueCode::kEmptyLemma));
  EXPECT_TRUE(r.Has(IssueCode::kDocumentMismatch));
  EXPECT_TRUE(r.Has(IssueCode::kUnknownRole));
  // An empty vocabulary accepts any role.
  InductionConfig open;
  open.role_vocabulary.clear();
  EXPECT_FALSE(ValidateBundle(b, open).Has(IssueCode::kUnknownRole));
}

TEST(ValidationTest, RelationProblems) {
  ExtractionBundle b = ValidBundle();
  b.temporal_preds.push_back({"doc-1", "doc-1-e1", "doc-1-e1", TemporalLabel::kEqual, 1.0});
  b.hier_preds.push_back({"doc-1", "doc-1-e2", "doc-1-e1", HierLabel::kCoref, 1.5});
  b.coref_clusters.push_back({"doc-1", {"doc-1-e1"}, CorefKind::kEvent});
  ValidationReport r = ValidateBundle(b);
  EXPECT_TRUE(r.Has(IssueCode::kSelfRelation));
  EXPECT_TRUE(r.Has(IssueCode::kConfidenceOutOfRange));
  EXPECT_TRUE(r.Has(IssueCode::kClusterTooSmall));
}

TEST(ValidationTest, Idempotent) {
  ExtractionBundle b = ValidBundle();
  b.temporal_preds.push_back(b.temporal_preds.front());
  EXPECT_EQ(ValidateBundle(b), ValidateBundle(b));
}

// --- Serialization.

TEST(BundleIoTest, RoundTrip) {
  ExtractionBundle b = ValidBundle();
  EXPECT_EQ(ParseBundle(SerializeBundle(b)), b);
}

TEST(BundleIoTest, AbsentNerIsNull) {
  ExtractionBundle b = ValidBundle();
  b.events[0].arguments.push_back(Arg("ARG1", "it"));
  Json j = BundleToJson(b);
  EXPECT_TRUE(j["events"][0]["arguments"][1]["nerType"].is_null());
  j["events"][0]["arguments"][1]["nerType"] = "ABSENT";
  EXPECT_EQ(BundleFromJson(j), b);
}

TEST(BundleIoTest, ParseErrors) {
  EXPECT_THROW(ParseBundle("{"), ParseError);
  EXPECT_THROW(ParseBundle("{}"), ParseError);
  Json j = BundleToJson(ValidBundle());
  j["events"][0]["trigger"]["start"] = "zero";
  EXPECT_THROW(ParseBundle(j.dump()), ParseError);
  j = BundleToJson(ValidBundle());
  j["temporalPreds"][0]["label"] = "SOMETIMES";
  EXPECT_THROW(ParseBundle(j.dump()), ParseError);
}

TEST(BundleIoTest, ConfigRoundTrip) {
  InductionConfig config;
  config.min_event_docs = 3;
  config.min_confidence = 0.25;
  config.role_vocabulary = {"ARG0"};
  InductionConfig back = ConfigFromJson(ConfigToJson(config));
  EXPECT_EQ(back.min_event_docs, 3);
  EXPECT_EQ(back.min_confidence, 0.25);
  EXPECT_EQ(back.role_vocabulary, std::vector<std::string>{"ARG0"});
  EXPECT_EQ(ConfigFromJson(Json::object()).min_coref_hier_docs, 3);
}

// Random bundles survive serialization field for field.
TEST(BundleIoTest, RandomRoundTrip) {
  std::mt19937 rng(11);
  const std::vector<std::string> words = {"police", "caf\xC3\xA9", "\"quoted\"", "back\\slash",
                                          "line\nbreak", "arrest", "x"};
  for (int iter = 0; iter < 200; ++iter) {
    BundleBuilder b("doc-" + std::to_string(iter), static_cast<Genre>(rng() % 3));
    std::vector<std::string> ids;
    int events = static_cast<int>(rng() % 5);
    for (int e = 0; e < events; ++e) {
      std::vector<ArgumentMention> args;
      for (int a = 0; a < static_cast<int>(rng() % 3); ++a) {
        std::optional<std::string> ner;
        if (rng() % 2) ner = "PER";
        args.push_back(Arg(a == 0 ? "ARG0" : "ARG1", words[rng() % words.size()], ner));
      }
      ids.push_back(b.Event(words[rng() % words.size()], args));
    }
    for (size_t i = 0; i + 1 < ids.size(); ++i) {
      b.Temporal(ids[i], ids[i + 1], static_cast<TemporalLabel>(rng() % 4),
                 static_cast<double>(rng() % 101) / 100.0);
      b.Hier(ids[i + 1], ids[i], static_cast<HierLabel>(rng() % 4));
    }
    if (ids.size() >= 2) b.Cluster({ids[0], ids[1]});
    ExtractionBundle bundle = b.bundle();
    ASSERT_EQ(ParseBundle(SerializeBundle(bundle)), bundle);
  }
}

TEST(BundleIoTest, FixturesLoadAndValidate) {
  for (const char *dir : {"sports_games", "civil_unrest", "pandemic", "stats/bundles"}) {
    auto bundles = LoadBundleDirectory(testing::FixtureDir() / dir);
    ASSERT_FALSE(bundles.empty()) << dir;
    for (const ExtractionBundle &b : bundles) {
      ValidationReport r = ValidateBundle(b);
      EXPECT_TRUE(r.ok()) << b.document.id << ": " << (r.ok() ? "" : r.issues[0].message);
      EXPECT_EQ(ParseBundle(SerializeBundle(b)), b);
    }
  }
}

TEST(BundleIoTest, MissingFileIsIoError) {
  EXPECT_THROW(ReadFile("/nonexistent/bundle.json"), IoError);
}

}  // namespace
}  // namespace schema_forge
