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

#include "schema_forge/bundle_io.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <system_error>

#include "schema_forge/errors.h"

namespace schema_forge {

namespace fs = std::filesystem;

namespace {

const Json &Field(const Json &json, const char *name) {
  if (!json.is_object()) throw ParseError(std::string("expected object holding '") + name + "'");
  auto it = json.find(name);
  if (it == json.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

std::string StringField(const Json &json, const char *name) {
  const Json &value = Field(json, name);
  if (!value.is_string()) throw ParseError(std::string("field '") + name + "' must be a string");
  return value.get<std::string>();
}

int IntField(const Json &json, const char *name) {
  const Json &value = Field(json, name);
  if (!value.is_number_integer()) throw ParseError(std::string("field '") + name + "' must be an integer");
  return value.get<int>();
}

double NumberField(const Json &json, const char *name) {
  const Json &value = Field(json, name);
  if (!value.is_number()) throw ParseError(std::string("field '") + name + "' must be a number");
  return value.get<double>();
}

const Json &ArrayField(const Json &json, const char *name) {
  const Json &value = Field(json, name);
  if (!value.is_array()) throw ParseError(std::string("field '") + name + "' must be an array");
  return value;
}

Json ArgumentToJson(const ArgumentMention &arg) {
  Json j;
  j["role"] = arg.role;
  j["headText"] = arg.head_text;
  j["nerType"] = arg.ner_type ? Json(*arg.ner_type) : Json(nullptr);
  return j;
}

ArgumentMention ArgumentFromJson(const Json &j) {
  ArgumentMention arg;
  arg.role = StringField(j, "role");
  arg.head_text = StringField(j, "headText");
  auto it = j.find("nerType");
  if (it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("field 'nerType' must be a string or null");
    std::string ner = it->get<std::string>();
    if (ner != "ABSENT") arg.ner_type = std::move(ner);
  }
  return arg;
}

template <typename Pred, typename LabelName>
Json PredToJson(const Pred &p, LabelName label_name) {
  Json j;
  j["documentId"] = p.document_id;
  j["sourceMentionId"] = p.source_mention_id;
  j["targetMentionId"] = p.target_mention_id;
  j["label"] = std::string(label_name(p.label));
  j["confidence"] = p.confidence;
  return j;
}

template <typename Pred, typename LabelParser>
Pred PredFromJson(const Json &j, LabelParser parse_label) {
  Pred p;
  p.document_id = StringField(j, "documentId");
  p.source_mention_id = StringField(j, "sourceMentionId");
  p.target_mention_id = StringField(j, "targetMentionId");
  p.label = parse_label(StringField(j, "label"));
  p.confidence = j.contains("confidence") ? NumberField(j, "confidence") : 1.0;
  return p;
}

}  // namespace

Json DocumentToJson(const Document &document) {
  Json j;
  j["id"] = document.id;
  j["genre"] = std::string(GenreName(document.genre));
  j["text"] = document.text;
  Json tokens = Json::array();
  for (const Token &t : document.tokens) {
    tokens.push_back(Json{{"text", t.text}, {"start", t.start}, {"end", t.end}});
  }
  j["tokens"] = std::move(tokens);
  return j;
}

Document DocumentFromJson(const Json &j) {
  Document doc;
  doc.id = StringField(j, "id");
  doc.genre = ParseGenre(StringField(j, "genre"));
  doc.text = StringField(j, "text");
  if (j.contains("tokens")) {
    for (const Json &t : ArrayField(j, "tokens")) {
      doc.tokens.push_back(
          {StringField(t, "text"), IntField(t, "start"), IntField(t, "end")});
    }
  }
  return doc;
}

Json BundleToJson(const ExtractionBundle &bundle) {
  Json j;
  j["document"] = DocumentToJson(bundle.document);
  Json events = Json::array();
  for (const EventMention &e : bundle.events) {
    Json ej;
    ej["id"] = e.id;
    ej["documentId"] = e.document_id;
    ej["trigger"] = Json{{"start", e.trigger.start}, {"end", e.trigger.end}};
    ej["triggerLemma"] = e.trigger_lemma;
    Json args = Json::array();
    for (const ArgumentMention &a : e.arguments) args.push_back(ArgumentToJson(a));
    ej["arguments"] = std::move(args);
    events.push_back(std::move(ej));
  }
  j["events"] = std::move(events);
  Json clusters = Json::array();
  for (const CorefCluster &c : bundle.coref_clusters) {
    clusters.push_back(Json{{"documentId", c.document_id},
                            {"memberMentionIds", c.member_mention_ids},
                            {"kind", c.kind == CorefKind::kEvent ? "event" : "entity"}});
  }
  j["corefClusters"] = std::move(clusters);
  Json temporal = Json::array();
  for (const auto &p : bundle.temporal_preds) temporal.push_back(PredToJson(p, TemporalLabelName));
  j["temporalPreds"] = std::move(temporal);
  Json hier = Json::array();
  for (const auto &p : bundle.hier_preds) hier.push_back(PredToJson(p, HierLabelName));
  j["hierPreds"] = std::move(hier);
  return j;
}

ExtractionBundle BundleFromJson(const Json &j) {
  ExtractionBundle bundle;
  bundle.document = DocumentFromJson(Field(j, "document"));
  for (const Json &ej : ArrayField(j, "events")) {
    EventMention e;
    e.id = StringField(ej, "id");
    e.document_id = StringField(ej, "documentId");
    const Json &trigger = Field(ej, "trigger");
    e.trigger = {IntField(trigger, "start"), IntField(trigger, "end")};
    e.trigger_lemma = StringField(ej, "triggerLemma");
    if (ej.contains("arguments")) {
      for (const Json &a : ArrayField(ej, "arguments")) e.arguments.push_back(ArgumentFromJson(a));
    }
    bundle.events.push_back(std::move(e));
  }
  if (j.contains("corefClusters")) {
    for (const Json &cj : ArrayField(j, "corefClusters")) {
      CorefCluster c;
      c.document_id = StringField(cj, "documentId");
      for (const Json &m : ArrayField(cj, "memberMentionIds")) {
        if (!m.is_string()) throw ParseError("memberMentionIds entries must be strings");
        c.member_mention_ids.push_back(m.get<std::string>());
      }
      std::string kind = StringField(cj, "kind");
      if (kind == "event") {
        c.kind = CorefKind::kEvent;
      } else if (kind == "entity") {
        c.kind = CorefKind::kEntity;
      } else {
        throw ParseError("unknown coref kind '" + kind + "'");
      }
      bundle.coref_clusters.push_back(std::move(c));
    }
  }
  if (j.contains("temporalPreds")) {
    for (const Json &pj : ArrayField(j, "temporalPreds")) {
      bundle.temporal_preds.push_back(PredFromJson<TemporalRelationPred>(
          pj, [](const std::string &s) { return ParseTemporalLabel(s); }));
    }
  }
  if (j.contains("hierPreds")) {
    for (const Json &pj : ArrayField(j, "hierPreds")) {
      bundle.hier_preds.push_back(PredFromJson<HierRelationPred>(
          pj, [](const std::string &s) { return ParseHierLabel(s); }));
    }
  }
  return bundle;
}

Json ConfigToJson(const InductionConfig &config) {
  Json j;
  j["minEventDocs"] = config.min_event_docs;
  j["minTemporalDocs"] = config.min_temporal_docs;
  j["minCorefHierDocs"] = config.min_coref_hier_docs;
  j["docsPerGenre"] = config.docs_per_genre;
  j["rankedSelection"] = config.ranked_selection;
  j["minConfidence"] = config.min_confidence;
  j["maxTimelines"] = config.max_timelines;
  j["roleVocabulary"] = config.role_vocabulary;
  return j;
}

InductionConfig ConfigFromJson(const Json &j) {
  InductionConfig config;
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  if (j.contains("minEventDocs")) config.min_event_docs = IntField(j, "minEventDocs");
  if (j.contains("minTemporalDocs")) config.min_temporal_docs = IntField(j, "minTemporalDocs");
  if (j.contains("minCorefHierDocs")) config.min_coref_hier_docs = IntField(j, "minCorefHierDocs");
  if (j.contains("docsPerGenre")) config.docs_per_genre = IntField(j, "docsPerGenre");
  if (j.contains("rankedSelection")) config.ranked_selection = IntField(j, "rankedSelection");
  if (j.contains("minConfidence")) config.min_confidence = NumberField(j, "minConfidence");
  if (j.contains("maxTimelines")) config.max_timelines = IntField(j, "maxTimelines");
  if (j.contains("roleVocabulary")) {
    config.role_vocabulary.clear();
    for (const Json &r : ArrayField(j, "roleVocabulary")) {
      if (!r.is_string()) throw ParseError("roleVocabulary entries must be strings");
      config.role_vocabulary.push_back(r.get<std::string>());
    }
  }
  return config;
}

std::string DumpJson(const Json &json) { return json.dump(2) + "\n"; }

std::string SerializeBundle(const ExtractionBundle &bundle) {
  return DumpJson(BundleToJson(bundle));
}

ExtractionBundle ParseBundle(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ParseError(std::string("malformed bundle JSON: ") + e.what());
  }
  try {
    return BundleFromJson(j);
  } catch (const Json::exception &e) {
    throw ParseError(std::string("bad bundle field: ") + e.what());
  }
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteFile(const fs::path &path, const std::string &content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  // Write then rename so concurrent readers never see a partial file.
  static std::atomic<unsigned long> counter{0};
  fs::path temp = path;
  temp += ".tmp" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    out.close();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw IoError("short write to " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw IoError("cannot replace " + path.string());
  }
}

ExtractionBundle LoadBundle(const fs::path &path) {
  try {
    return ParseBundle(ReadFile(path));
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<ExtractionBundle> LoadBundleDirectory(const fs::path &directory) {
  if (!fs::is_directory(directory)) throw IoError("not a directory: " + directory.string());
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ExtractionBundle> bundles;
  for (const fs::path &file : files) bundles.push_back(LoadBundle(file));
  return bundles;
}

}  // namespace schema_forge
