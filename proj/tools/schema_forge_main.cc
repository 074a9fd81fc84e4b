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

// schema_forge command line: generate -> rank -> induce -> export -> eval.
// Exit status: 0 ok, 1 stage failure, 2 usage error.

#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "schema_forge/bundle_io.h"
#include "schema_forge/errors.h"
#include "schema_forge/pipeline.h"
#include "schema_forge/ranking.h"
#include "schema_forge/text_generator.h"

namespace sf = schema_forge;
namespace fs = std::filesystem;

namespace {

struct ConfigFlags {
  std::string config_file;
  std::optional<int> min_event_docs;
  std::optional<int> min_temporal_docs;
  std::optional<int> min_coref_hier_docs;
  std::optional<int> docs_per_genre;
  std::optional<int> ranked_selection;
  std::optional<double> min_confidence;
  std::optional<int> max_timelines;

  void Register(CLI::App *app) {
    app->add_option("--config", config_file, "Induction config JSON");
    app->add_option("--min-event-docs", min_event_docs);
    app->add_option("--min-temporal-docs", min_temporal_docs);
    app->add_option("--min-coref-hier-docs", min_coref_hier_docs);
    app->add_option("--docs-per-genre", docs_per_genre);
    app->add_option("--ranked-selection", ranked_selection);
    app->add_option("--min-confidence", min_confidence);
    app->add_option("--max-timelines", max_timelines);
  }

  bool any() const {
    return !config_file.empty() || min_event_docs || min_temporal_docs || min_coref_hier_docs ||
           docs_per_genre || ranked_selection || min_confidence || max_timelines;
  }

  sf::InductionConfig Apply(sf::InductionConfig config) const {
    if (!config_file.empty()) config = sf::ConfigFromJson(sf::Json::parse(sf::ReadFile(config_file)));
    if (min_event_docs) config.min_event_docs = *min_event_docs;
    if (min_temporal_docs) config.min_temporal_docs = *min_temporal_docs;
    if (min_coref_hier_docs) config.min_coref_hier_docs = *min_coref_hier_docs;
    if (docs_per_genre) config.docs_per_genre = *docs_per_genre;
    if (ranked_selection) config.ranked_selection = *ranked_selection;
    if (min_confidence) config.min_confidence = *min_confidence;
    if (max_timelines) config.max_timelines = *max_timelines;
    config.Validate();
    return config;
  }
};

struct HttpFlags {
  std::string base_url;
  std::string model;
  std::string path;
  int timeout = 60;

  void Register(CLI::App *app) {
    app->add_option("--base-url", base_url, "Provider base URL");
    app->add_option("--model", model, "Provider model name");
    app->add_option("--path", path, "Request path");
    app->add_option("--timeout", timeout, "Request timeout in seconds");
  }

  sf::HttpEndpoint Endpoint(const std::string &default_path) const {
    if (base_url.empty()) throw sf::ConfigError("--base-url is required for http providers");
    sf::HttpEndpoint endpoint;
    endpoint.base_url = base_url;
    endpoint.model = model;
    endpoint.path = path.empty() ? default_path : path;
    endpoint.timeout_seconds = timeout;
    return endpoint;
  }
};

// Opens the run, initializing it when a topic is given.
sf::RunDirectory OpenRun(const std::string &dir, const std::string &topic, const std::string &run_id) {
  sf::RunDirectory run(dir);
  if (!topic.empty()) run.Initialize(sf::Topic(topic, sf::Slugify(topic)), run_id);
  return run;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Event schema induction from generated text"};
  app.require_subcommand(1);

  std::string run_dir, topic, run_id;
  auto add_run = [&](CLI::App *cmd, bool with_topic) {
    cmd->add_option("--run", run_dir, "Run directory")->required();
    if (with_topic) {
      cmd->add_option("--topic", topic, "Topic name (initializes the run)");
      cmd->add_option("--run-id", run_id, "Run id (default: topic slug)");
    }
  };

  // generate
  CLI::App *generate = app.add_subcommand("generate", "Generate the document corpus");
  add_run(generate, true);
  std::string provider_name = "mock", fixtures;
  int parallel = 4, max_tokens = 512;
  bool resume = false;
  ConfigFlags generate_config;
  HttpFlags generate_http;
  generate->add_option("--provider", provider_name, "mock or http")
      ->check(CLI::IsMember({"mock", "http"}));
  generate->add_option("--fixtures", fixtures, "Mock fixture directory");
  generate->add_option("--parallel", parallel, "Provider calls in flight")->check(CLI::PositiveNumber);
  generate->add_option("--max-tokens", max_tokens)->check(CLI::PositiveNumber);
  generate->add_flag("--resume", resume, "Reuse cached job outputs");
  generate_config.Register(generate);
  generate_http.Register(generate);

  // rank
  CLI::App *rank = app.add_subcommand("rank", "Rank documents by topic similarity");
  add_run(rank, false);
  std::string embedder_name = "hash";
  int dimension = 512;
  HttpFlags rank_http;
  rank->add_option("--embedder", embedder_name, "hash or http")->check(CLI::IsMember({"hash", "http"}));
  rank->add_option("--dimension", dimension, "Hashing embedder dimension")->check(CLI::PositiveNumber);
  rank_http.Register(rank);

  // induce
  CLI::App *induce = app.add_subcommand("induce", "Induce the schema from extraction bundles");
  add_run(induce, true);
  std::string bundles;
  ConfigFlags induce_config;
  induce->add_option("--bundles", bundles, "Bundle directory (default: <run>/bundles)");
  induce_config.Register(induce);

  // export
  CLI::App *export_cmd = app.add_subcommand("export", "Export the schema");
  add_run(export_cmd, false);
  std::string format, out;
  export_cmd->add_option("--format", format, "json or dot")->required();
  export_cmd->add_option("--out", out, "Output file (default: <run>/export/schema.<format>)");

  // eval
  CLI::App *eval = app.add_subcommand("eval", "Evaluate the schema against a gold schema");
  add_run(eval, false);
  std::string gold, synonyms;
  eval->add_option("--gold", gold, "Gold schema JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--synonyms", synonyms, "Synonym lexicon JSON")->check(CLI::ExistingFile);

  // stats
  CLI::App *stats = app.add_subcommand("stats", "Corpus relevance statistics");
  add_run(stats, true);
  std::string ontology, stats_bundles;
  stats->add_option("--ontology", ontology, "Ontology file")->required()->check(CLI::ExistingFile);
  stats->add_option("--bundles", stats_bundles, "Bundle directory (default: <run>/bundles)");

  // hash
  CLI::App *hash = app.add_subcommand("hash", "Print the mock fixture name of a prompt");
  std::string prompt;
  hash->add_option("prompt", prompt, "Prompt text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App *cmd = app.get_subcommands().front();
  const std::string stage = cmd->get_name();
  try {
    std::string summary;
    if (cmd == hash) {
      summary = sf::PromptHash(prompt);
    } else if (cmd == generate) {
      sf::RunDirectory run = OpenRun(run_dir, topic, run_id);
      sf::InductionConfig config = generate_config.Apply(run.LoadConfig());
      std::unique_ptr<sf::TextGenerator> provider;
      if (provider_name == "mock") {
        if (fixtures.empty()) throw sf::ConfigError("--fixtures is required for the mock provider");
        provider = std::make_unique<sf::MockTextGenerator>(fs::path(fixtures));
      } else {
        provider = std::make_unique<sf::HttpTextGenerator>(generate_http.Endpoint("/v1/completions"));
      }
      sf::GenerationOptions options;
      options.max_in_flight = parallel;
      options.max_tokens = max_tokens;
      summary = sf::RunGenerateStage(run, *provider, config, options, resume);
    } else if (cmd == rank) {
      sf::RunDirectory run(run_dir);
      std::unique_ptr<sf::EmbeddingProvider> embedder;
      if (embedder_name == "hash") {
        embedder = std::make_unique<sf::HashingEmbedder>(dimension);
      } else {
        embedder = std::make_unique<sf::HttpEmbedder>(rank_http.Endpoint("/v1/embeddings"));
      }
      summary = sf::RunRankStage(run, *embedder);
    } else if (cmd == induce) {
      sf::RunDirectory run = OpenRun(run_dir, topic, run_id);
      if (induce_config.any()) run.SaveConfig(induce_config.Apply(run.LoadConfig()));
      summary = sf::RunInduceStage(run, bundles.empty() ? run.Path("bundles") : fs::path(bundles));
    } else if (cmd == export_cmd) {
      sf::RunDirectory run(run_dir);
      std::optional<fs::path> target;
      if (!out.empty()) target = out;
      summary = sf::RunExportStage(run, format, target);
    } else if (cmd == eval) {
      sf::RunDirectory run(run_dir);
      std::optional<fs::path> lexicon;
      if (!synonyms.empty()) lexicon = synonyms;
      summary = sf::RunEvalStage(run, gold, lexicon);
    } else if (cmd == stats) {
      sf::RunDirectory run = OpenRun(run_dir, topic, run_id);
      summary = sf::RunStatsStage(run, ontology,
                                  stats_bundles.empty() ? run.Path("bundles") : fs::path(stats_bundles));
    }
    std::cout << summary << "\n";
    return 0;
  } catch (const sf::Error &e) {
    std::cerr << "error: stage " << stage << ": " << e.kind() << ": " << e.what() << "\n";
  } catch (const std::exception &e) {
    std::cerr << "error: stage " << stage << ": " << e.what() << "\n";
  }
  return 1;
}
