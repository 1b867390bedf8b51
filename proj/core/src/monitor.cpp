#include "ghm/monitor.hpp"

#include <algorithm>
#include <future>
#include <ostream>

#include <spdlog/spdlog.h>

#include "ghm/error.hpp"

namespace ghm {

std::map<std::string, std::string> source_country_hints(std::span<const FeedSource> sources) {
  std::map<std::string, std::string> out;
  for (const auto& s : sources) {
    if (s.country_hint) out.emplace(s.id, *s.country_hint);
  }
  return out;
}

Monitor::Monitor(const Ontology& ontology, const EntityTagger& tagger, const ClassifierModel& classifier,
                 StoryStore& stories, EventStore& events, std::vector<FeedSource> sources, Transport transport,
                 DetectorConfig config)
    : ontology_(ontology),
      tagger_(tagger),
      classifier_(classifier),
      stories_(stories),
      events_(events),
      sources_(std::move(sources)),
      transport_(std::move(transport)),
      config_(std::move(config)) {
  for (const auto& [id, hint] : source_country_hints(sources_)) config_.source_country_hints.emplace(id, hint);
}

Monitor::~Monitor() { stop(); }

IngestReport Monitor::ingest(Timestamp now) {
  IngestReport report;
  std::vector<std::pair<const FeedSource*, std::future<FetchOutcome>>> pending;
  {
    std::lock_guard lock(backoff_mu_);
    for (const auto& source : sources_) {
      if (!source.poll_enabled) continue;
      auto next = next_poll_.find(source.id);
      if (next != next_poll_.end() && now < next->second) continue;
      pending.emplace_back(&source, std::async(std::launch::async, [this, &source, now] {
                             return fetch_and_parse(source, transport_, now);
                           }));
    }
  }

  std::vector<NewsStory> batch;
  for (auto& [source, future] : pending) {
    ++report.polled;
    try {
      auto outcome = future.get();
      report.parsed += outcome.stories.size();
      for (auto& d : outcome.skipped) report.skipped.emplace_back(source->id, std::move(d));
      std::move(outcome.stories.begin(), outcome.stories.end(), std::back_inserter(batch));
      std::lock_guard lock(backoff_mu_);
      next_poll_.erase(source->id);
    } catch (const FeedError& e) {
      spdlog::warn("source {}: {}", source->id, e.what());
      report.failures.push_back({source->id, e.what(), e.retry_after()});
      if (e.retry_after()) {
        std::lock_guard lock(backoff_mu_);
        next_poll_[source->id] = now + *e.retry_after();
      }
    }
  }
  report.added = stories_.append(std::move(batch));
  spdlog::info("ingest: {} sources polled, {} stories parsed, {} new, {} failures", report.polled, report.parsed,
               report.added, report.failures.size());
  return report;
}

CycleResult Monitor::cycle(Timestamp now) {
  std::lock_guard lock(cycle_mu_);
  auto result = run_cycle(stories_, ontology_, classifier_, tagger_, now, config_);
  events_.publish(result);
  const auto& d = result.diagnostics;
  spdlog::info("cycle {}: {} stories, {} relevant, {} pairs, {} selected, {} events, {} dropped, {} fallbacks",
               format_timestamp(now), d.window_stories, d.relevant_stories, d.distinct_pairs, d.selected_pairs,
               result.events.size(), d.dropped.size(), d.fallbacks.size());
  return result;
}

CycleResult Monitor::tick(Timestamp now) {
  ingest(now);
  auto result = cycle(now);
  stories_.compact(now);
  return result;
}

void Monitor::start(std::chrono::seconds interval, std::function<Timestamp()> clock) {
  if (interval.count() <= 0) throw ArgumentError("cycle interval must be positive");
  if (worker_.joinable()) throw ArgumentError("monitor already running");
  {
    std::lock_guard lock(run_mu_);
    stopping_ = false;
  }
  worker_ = std::thread([this, interval, clock = std::move(clock)] {
    std::unique_lock lock(run_mu_);
    while (!stopping_) {
      lock.unlock();
      try {
        tick(clock());
      } catch (const std::exception& e) {
        spdlog::error("cycle aborted, previous events stay published: {}", e.what());
      }
      lock.lock();
      run_cv_.wait_for(lock, interval, [this] { return stopping_; });
    }
  });
}

void Monitor::stop() {
  {
    std::lock_guard lock(run_mu_);
    stopping_ = true;
  }
  run_cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::vector<NewsStory> load_stream(std::span<const FeedSource> sources, const Transport& transport, Timestamp now) {
  std::vector<NewsStory> out;
  for (const auto& s : sources) {
    if (!s.poll_enabled) continue;
    auto outcome = fetch_and_parse(s, transport, now);
    for (const auto& d : outcome.skipped) spdlog::warn("source {} item {}: {}", s.id, d.item_index, d.reason);
    std::move(outcome.stories.begin(), outcome.stories.end(), std::back_inserter(out));
  }
  return out;
}

ReplayReport replay_stream(std::vector<NewsStory> stream, const Ontology& ontology, const EntityTagger& tagger,
                           const ClassifierModel& classifier, const DetectorConfig& config, Timestamp from,
                           Timestamp to, std::chrono::seconds step, std::ostream& dump) {
  if (step.count() <= 0) throw ArgumentError("replay step must be positive");
  if (from > to) throw ArgumentError("replay start is after its end");
  std::stable_sort(stream.begin(), stream.end(),
                   [](const NewsStory& a, const NewsStory& b) { return a.published_at < b.published_at; });

  StoryStore stories;
  EventStore events;
  ReplayReport report;
  std::size_t next = 0;
  for (auto now = from; now <= to; now += step) {
    std::vector<NewsStory> batch;
    while (next < stream.size() && stream[next].published_at <= now) {
      batch.push_back(stream[next]);
      batch.back().fetched_at = now;
      ++next;
    }
    report.stories += stories.append(std::move(batch));
    auto result = run_cycle(stories, ontology, classifier, tagger, now, config);
    write_event_dump(dump, result.events, ontology);
    ++report.cycles;
    report.events += result.events.size();
    if (!result.events.empty()) ++report.cycles_with_events;
    events.publish(result);
  }
  return report;
}

}  // namespace ghm
