// ghm: command line front end for the surveillance pipeline.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ghm/bundle.hpp"
#include "ghm/classifier.hpp"
#include "ghm/detector.hpp"
#include "ghm/error.hpp"
#include "ghm/eval.hpp"
#include "ghm/event_store.hpp"
#include "ghm/monitor.hpp"
#include "ghm/server.hpp"
#include "ghm/story_store.hpp"
#include "ghm/text.hpp"
#include "ghm/transport.hpp"

namespace fs = std::filesystem;
using namespace ghm;

namespace {

#ifndef GHM_DEFAULT_DATA_DIR
#define GHM_DEFAULT_DATA_DIR "data"
#endif

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ArgumentError(fmt::format("cannot open {}", p.string()));
  return in;
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw ArgumentError(fmt::format("cannot write {}", p.string()));
  return out;
}

Timestamp parse_now(const std::string& text) {
  if (text.empty()) return system_now();
  return require_timestamp(text, "--now");
}

std::vector<LabeledDoc> load_corpus(const fs::path& p) {
  auto in = open_in(p);
  return read_labeled_corpus(in);
}

ClassifierModel load_model(const std::string& model_path, const fs::path& corpus_path, const EntityTagger& tagger) {
  if (!model_path.empty()) {
    auto in = open_in(model_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return ClassifierModel::from_json(buf.str());
  }
  auto corpus = load_corpus(corpus_path);
  return train(corpus, tagger);
}

std::vector<FeedSource> load_sources(const fs::path& p, const Ontology& ontology) {
  auto in = open_in(p);
  return read_source_list(in, &ontology);
}

Threshold make_threshold(const std::string& mode, std::size_t value) {
  auto m = parse_threshold_mode(mode);
  if (!m) throw ArgumentError(fmt::format("unknown threshold mode '{}'", mode));
  return {*m, value};
}

std::atomic<bool> g_interrupted{false};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global health monitor: news ingestion, outbreak detection and the events API"};
  app.require_subcommand(1);

  std::string data_dir = process_env("GHM_DATA_DIR").value_or(GHM_DEFAULT_DATA_DIR);
  bool verbose = false;
  app.add_option("--data-dir", data_dir, "Bundled data directory")->capture_default_str();
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  // ontology
  auto* onto = app.add_subcommand("ontology", "Inspect the bundled ontology");
  onto->require_subcommand(1);
  auto* onto_stats = onto->add_subcommand("stats", "Record counts");
  auto* onto_lookup = onto->add_subcommand("lookup", "Resolve a disease or place name");
  std::string lookup_term;
  onto_lookup->add_option("term", lookup_term)->required();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Poll the sources once and append new stories");
  std::string sources_path, store_path, now_text;
  ingest->add_option("--sources", sources_path, "Source list")->required();
  ingest->add_option("--store", store_path, "Story log")->required();
  ingest->add_option("--now", now_text, "Fetch time (ISO 8601); default: current time");

  // train / cv
  auto* train_cmd = app.add_subcommand("train", "Train the topic classifier");
  std::string corpus_path;  // default: <data-dir>/corpus/synthetic_training.tsv
  std::string model_out;
  train_cmd->add_option("--corpus", corpus_path, "Labelled corpus");
  train_cmd->add_option("--out", model_out, "Model JSON output")->required();

  auto* cv_cmd = app.add_subcommand("cv", "Cross-validate the classifier");
  std::size_t folds = 5;
  cv_cmd->add_option("--corpus", corpus_path, "Labelled corpus");
  cv_cmd->add_option("--folds", folds)->capture_default_str();

  // tag
  auto* tag_cmd = app.add_subcommand("tag", "Annotation dump for stored stories");
  tag_cmd->add_option("--store", store_path, "Story log")->required();

  // detect
  auto* detect = app.add_subcommand("detect", "Run one detection cycle over a story log");
  std::string model_path, dump_path, diag_path, events_path, threshold_mode = "rank";
  std::size_t threshold_value = 40;
  detect->add_option("--store", store_path, "Story log")->required();
  detect->add_option("--model", model_path, "Model JSON (default: train on --corpus)");
  detect->add_option("--corpus", corpus_path, "Labelled corpus when no model is given");
  detect->add_option("--sources", sources_path, "Source list, for country hints");
  detect->add_option("--now", now_text, "Cycle time (ISO 8601)");
  detect->add_option("--threshold-mode", threshold_mode, "rank or min-frequency")->capture_default_str();
  detect->add_option("--threshold", threshold_value, "Top-k or minimum frequency")->capture_default_str();
  detect->add_option("--dump", dump_path, "Event dump output (default: stdout)");
  detect->add_option("--diagnostics", diag_path, "Dropped pairs and fallback records");
  detect->add_option("--events", events_path, "Event log to publish to");

  // replay
  auto* replay = app.add_subcommand("replay", "Replay fixture feeds cycle by cycle");
  std::string from_text, to_text;
  int step_minutes = 60;
  replay->add_option("--sources", sources_path, "Source list; feed paths are relative to it")->required();
  replay->add_option("--from", from_text, "First cycle (ISO 8601)")->required();
  replay->add_option("--to", to_text, "Last cycle (ISO 8601)")->required();
  replay->add_option("--step-minutes", step_minutes)->capture_default_str();
  replay->add_option("--model", model_path, "Model JSON (default: train on --corpus)");
  replay->add_option("--corpus", corpus_path, "Labelled corpus when no model is given");
  replay->add_option("--threshold-mode", threshold_mode)->capture_default_str();
  replay->add_option("--threshold", threshold_value)->capture_default_str();
  replay->add_option("--dump", dump_path, "Event dump output (default: stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);
  bool as_json = false;
  std::string gold_path, predicted_path, window_id;
  auto* eval_pairs = eval->add_subcommand("pairs", "Pair precision/recall of an event dump against gold pairs");
  eval_pairs->add_option("--gold", gold_path, "Gold pair file")->required();
  eval_pairs->add_option("--dump", predicted_path, "Event dump")->required();
  eval_pairs->add_option("--window", window_id, "Gold window id")->required();
  auto* eval_ner = eval->add_subcommand("ner", "Entity F-score of an annotation dump against gold");
  eval_ner->add_option("--gold", gold_path, "Gold annotation dump")->required();
  eval_ner->add_option("--predicted", predicted_path, "Predicted annotation dump")->required();
  auto* eval_acc = eval->add_subcommand("accuracy", "Cross-validated classification accuracy");
  eval_acc->add_option("--corpus", corpus_path, "Labelled corpus");
  eval_acc->add_option("--folds", folds)->capture_default_str();
  for (auto* sub : {eval_pairs, eval_ner, eval_acc}) sub->add_flag("--json", as_json, "Structured output");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the monitor and the HTTP API");
  std::string config_path;
  bool no_monitor = false;
  serve->add_option("--config", config_path, "Service config JSON");
  serve->add_flag("--no-monitor", no_monitor, "Serve stored events only; no polling");

  CLI11_PARSE(app, argc, argv);
  if (corpus_path.empty()) corpus_path = (fs::path(data_dir) / "corpus" / "synthetic_training.tsv").string();
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);
  spdlog::set_default_logger(spdlog::default_logger()->clone("ghm"));
  // Logs go to stderr so dumps on stdout stay clean.
  spdlog::default_logger()->sinks().clear();
  spdlog::default_logger()->sinks().push_back(std::make_shared<spdlog::sinks::stderr_color_sink_mt>());

  try {
    if (*onto) {
      auto bundle = load_bundle(data_dir);
      const auto& o = *bundle.ontology;
      if (*onto_stats) {
        fmt::print("diseases\t{}\ncountries\t{}\nsub_countries\t{}\nsynonyms\t{}\nlocation_names\t{}\n",
                   o.disease_count(), o.country_count(), o.sub_country_count(), o.disease_synonym_index().size(),
                   o.location_name_index().size());
        for (auto c : kEntityPrecedence) {
          fmt::print("gazetteer_{}\t{}\n", to_lower_ascii(to_string(c)), bundle.gazetteer->entry_count(c));
        }
      } else {
        if (const auto* d = o.lookup_disease(lookup_term)) fmt::print("disease\t{}\t{}\n", d->id, d->root_name);
        for (const auto* loc : o.lookup_location_candidates(lookup_term)) {
          fmt::print("location\t{}\t{}\t{}\t{}\t{}\n", loc->id, loc->name, to_string(loc->kind), loc->latitude,
                     loc->longitude);
        }
      }
      return 0;
    }

    if (*ingest) {
      auto bundle = load_bundle(data_dir);
      auto sources = load_sources(sources_path, *bundle.ontology);
      auto transport = default_transport(fs::path(sources_path).parent_path());
      StoryStore store{fs::path(store_path)};
      auto now = parse_now(now_text);
      std::size_t added = 0;
      for (const auto& s : sources) {
        if (!s.poll_enabled) continue;
        try {
          auto outcome = fetch_and_parse(s, transport, now);
          for (const auto& d : outcome.skipped) spdlog::warn("{} item {}: {}", s.id, d.item_index, d.reason);
          added += store.append(std::move(outcome.stories));
        } catch (const FeedError& e) {
          spdlog::error("{}: {}", s.id, e.what());
        }
      }
      fmt::print("{} new stories, {} stored\n", added, store.size());
      return 0;
    }

    if (*train_cmd || *cv_cmd || *eval_acc) {
      auto bundle = load_bundle(data_dir);
      GazetteerTagger tagger(bundle.gazetteer);
      auto corpus = load_corpus(corpus_path);
      if (*train_cmd) {
        auto model = train(corpus, tagger);
        open_out(model_out) << model.to_json() << '\n';
        fmt::print("trained on {} documents, vocabulary {}\n", corpus.size(), model.vocabulary().size());
        return 0;
      }
      auto report = cross_validate(corpus, tagger, folds);
      std::vector<Relevance> gold;
      for (const auto& d : corpus) gold.push_back(d.label);
      auto acc = classification_accuracy(report.predictions, gold);
      ReportRow row{"accuracy", report.total, report.total, report.correct, acc, acc, acc,
                    fmt::format("{}-fold cross-validation", report.folds)};
      std::vector<ReportRow> rows{row};
      fmt::print("{}\n", as_json ? report_to_json("classification", rows) : report_to_table("classification", rows));
      return 0;
    }

    if (*tag_cmd) {
      auto bundle = load_bundle(data_dir);
      StoryStore store{fs::path(store_path)};
      for (const auto& s : store.snapshot()->stories) {
        auto entities = tag_entities(*s, *bundle.gazetteer);
        write_annotation_dump(std::cout, s->id, entities);
      }
      return 0;
    }

    if (*detect || *replay) {
      auto bundle = load_bundle(data_dir);
      GazetteerTagger tagger(bundle.gazetteer);
      auto model = load_model(model_path, corpus_path, tagger);
      DetectorConfig config;
      config.threshold = make_threshold(threshold_mode, threshold_value);
      std::vector<FeedSource> sources;
      if (!sources_path.empty()) sources = load_sources(sources_path, *bundle.ontology);
      config.source_country_hints = source_country_hints(sources);

      std::ofstream file_out;
      if (!dump_path.empty()) file_out = open_out(dump_path);
      std::ostream& out = dump_path.empty() ? std::cout : file_out;

      if (*detect) {
        StoryStore store{fs::path(store_path)};
        auto now = parse_now(now_text);
        auto result = run_cycle(store, *bundle.ontology, model, tagger, now, config);
        write_event_dump(out, result.events, *bundle.ontology);
        if (!diag_path.empty()) {
          auto diag = open_out(diag_path);
          write_dropped_pairs(diag, result.diagnostics.dropped);
          write_fallback_records(diag, result.diagnostics.fallbacks);
        }
        if (!events_path.empty()) EventStore(fs::path(events_path)).publish(result);
        spdlog::info("{} stories in window, {} relevant, {} events", result.diagnostics.window_stories,
                     result.diagnostics.relevant_stories, result.events.size());
        return 0;
      }

      auto from = require_timestamp(from_text, "--from");
      auto to = require_timestamp(to_text, "--to");
      auto transport = file_transport(fs::path(sources_path).parent_path());
      auto stream = load_stream(sources, transport, to);
      auto report = replay_stream(std::move(stream), *bundle.ontology, tagger, model, config, from, to,
                                  std::chrono::minutes(step_minutes), out);
      spdlog::info("{} cycles, {} with events, {} events, {} stories", report.cycles, report.cycles_with_events,
                   report.events, report.stories);
      return 0;
    }

    if (*eval_pairs) {
      auto gold_in = open_in(gold_path);
      auto gold = read_gold_pairs(gold_in);
      auto it = gold.find(window_id);
      if (it == gold.end()) throw ArgumentError(fmt::format("window '{}' not in {}", window_id, gold_path));
      auto dump_in = open_in(predicted_path);
      std::vector<EvalPair> retrieved;
      for (const auto& rec : read_event_dump(dump_in)) retrieved.push_back({rec.disease, rec.location_id});
      std::vector<EvalPair> relevant(it->second.begin(), it->second.end());
      auto m = pair_precision_recall(retrieved, relevant);
      std::vector<ReportRow> rows{pair_report_row(window_id, m)};
      fmt::print("{}\n", as_json ? report_to_json("pairs", rows) : report_to_table("pairs", rows));
      return 0;
    }

    if (*eval_ner) {
      auto gold_in = open_in(gold_path);
      auto pred_in = open_in(predicted_path);
      auto gold = read_annotation_dump(gold_in);
      auto predicted = read_annotation_dump(pred_in);
      auto rows = ner_report_rows(ner_f_score(predicted, gold));
      fmt::print("{}\n", as_json ? report_to_json("entities", rows) : report_to_table("entities", rows));
      return 0;
    }

    if (*serve) {
      auto cfg = load_service_config(config_path.empty() ? std::nullopt : std::optional<fs::path>(config_path));
      auto bundle = load_bundle(cfg.data_dir);
      GazetteerTagger tagger(bundle.gazetteer);
      StoryStore stories{cfg.state_dir / "stories.jsonl"};
      EventStore events{cfg.state_dir / "events.jsonl"};
      ApiService api(*bundle.ontology, stories, events, system_now);
      HttpServer server(api, cfg.static_dir);
      int port = server.bind(cfg.host, cfg.port);
      spdlog::info("listening on {}:{}", cfg.host, port);

      std::unique_ptr<ClassifierModel> model;
      std::unique_ptr<Monitor> monitor;
      if (!no_monitor) {
        if (!cfg.sources) throw ArgumentError("config has no 'sources'; use --no-monitor to serve stored events");
        model = std::make_unique<ClassifierModel>(load_model(cfg.model ? cfg.model->string() : std::string(),
                                                             cfg.data_dir / "corpus" / "synthetic_training.tsv",
                                                             tagger));
        DetectorConfig dc;
        dc.threshold = cfg.threshold;
        monitor = std::make_unique<Monitor>(*bundle.ontology, tagger, *model, stories, events,
                                            load_sources(*cfg.sources, *bundle.ontology),
                                            default_transport(cfg.sources->parent_path()), dc);
        monitor->start(cfg.cycle_interval, system_now);
      }

      std::signal(SIGINT, [](int) { g_interrupted = true; });
      std::signal(SIGTERM, [](int) { g_interrupted = true; });
      std::thread listener([&] { server.listen(); });
      while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(200));
      spdlog::info("shutting down");
      if (monitor) monitor->stop();
      server.stop();
      listener.join();
      return 0;
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
