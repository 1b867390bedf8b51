#pragma once

#include <chrono>
#include <condition_variable>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ghm/classifier.hpp"
#include "ghm/detector.hpp"
#include "ghm/event_store.hpp"
#include "ghm/feed.hpp"
#include "ghm/ontology.hpp"
#include "ghm/story_store.hpp"
#include "ghm/tagger.hpp"

namespace ghm {

struct SourceFailure {
  std::string source_id;
  std::string message;
  std::optional<std::chrono::seconds> retry_after;
};

struct IngestReport {
  std::size_t polled = 0;
  std::size_t parsed = 0;
  std::size_t added = 0;
  std::vector<std::pair<std::string, ItemDiagnostic>> skipped;
  std::vector<SourceFailure> failures;
};

/// Source-country hints keyed by source id, for DetectorConfig.
std::map<std::string, std::string> source_country_hints(std::span<const FeedSource> sources);

/// Ingestion plus hourly detection. Sources are polled concurrently; a failing
/// source is logged and backed off without affecting the others. Cycles never
/// overlap, and a cycle that throws publishes nothing.
class Monitor {
 public:
  Monitor(const Ontology& ontology, const EntityTagger& tagger, const ClassifierModel& classifier,
          StoryStore& stories, EventStore& events, std::vector<FeedSource> sources, Transport transport,
          DetectorConfig config = {});
  ~Monitor();

  Monitor(const Monitor&) = delete;
  Monitor& operator=(const Monitor&) = delete;

  IngestReport ingest(Timestamp now);
  /// Runs one cycle and publishes its events.
  CycleResult cycle(Timestamp now);
  /// ingest, cycle, then compaction of the story store.
  CycleResult tick(Timestamp now);

  /// Runs tick() every `interval` on a background thread until stop().
  void start(std::chrono::seconds interval, std::function<Timestamp()> clock);
  void stop();

 private:
  const Ontology& ontology_;
  const EntityTagger& tagger_;
  const ClassifierModel& classifier_;
  StoryStore& stories_;
  EventStore& events_;
  std::vector<FeedSource> sources_;
  Transport transport_;
  DetectorConfig config_;

  std::mutex cycle_mu_;
  std::mutex backoff_mu_;
  std::map<std::string, Timestamp> next_poll_;

  std::mutex run_mu_;
  std::condition_variable run_cv_;
  bool stopping_ = false;
  std::thread worker_;
};

struct ReplayReport {
  std::size_t cycles = 0;
  std::size_t cycles_with_events = 0;
  std::size_t events = 0;
  std::size_t stories = 0;
};

/// Replays a story stream against fresh in-memory stores: at every step from
/// `from` to `to` inclusive, stories published since the previous step are
/// ingested and a cycle runs. Each cycle's events go to `dump` in event-dump
/// format.
ReplayReport replay_stream(std::vector<NewsStory> stream, const Ontology& ontology, const EntityTagger& tagger,
                           const ClassifierModel& classifier, const DetectorConfig& config, Timestamp from,
                           Timestamp to, std::chrono::seconds step, std::ostream& dump);

/// Fetches and parses every enabled source; failures throw FeedError.
std::vector<NewsStory> load_stream(std::span<const FeedSource> sources, const Transport& transport, Timestamp now);

}  // namespace ghm
