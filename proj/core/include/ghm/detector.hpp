#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghm/classifier.hpp"
#include "ghm/feed.hpp"
#include "ghm/geo_resolver.hpp"
#include "ghm/ontology.hpp"
#include "ghm/story_store.hpp"
#include "ghm/tagger.hpp"

namespace ghm {

/// (LOCATION, DISEASE) surfaces, both normalized. Ordered location first.
struct PairKey {
  std::string location_surface;
  std::string disease_surface;

  auto operator<=>(const PairKey&) const = default;
};

struct PairCandidate {
  PairKey key;
  /// Mentions of the pair within one story: min of the two surfaces' counts.
  std::uint32_t story_freq = 1;

  bool operator==(const PairCandidate&) const = default;
};

/// One candidate per distinct (location, disease) surface pair in the story,
/// sorted by key. Stories without both classes give nothing.
std::vector<PairCandidate> detect_story_pairs(const NewsStory& story, std::span<const AnnotatedEntity> entities);

struct StoryPairs {
  std::string story_id;
  std::vector<PairCandidate> pairs;
};

struct CorpusFrequencyTable {
  struct Stats {
    std::uint64_t corpus_freq = 0;
    /// Contributing stories, sorted.
    std::vector<std::string> story_ids;

    bool operator==(const Stats&) const = default;
  };

  std::map<PairKey, Stats> entries;

  bool operator==(const CorpusFrequencyTable&) const = default;
};

CorpusFrequencyTable aggregate_frequencies(std::span<const StoryPairs> per_story);

struct RankedPair {
  PairKey key;
  std::uint64_t corpus_freq = 0;

  bool operator==(const RankedPair&) const = default;
};

/// Pairs by corpus frequency descending, ties by key ascending; the first
/// min(top_k, size). Throws ArgumentError when top_k is 0.
std::vector<RankedPair> rank_top_pairs(const CorpusFrequencyTable& table, std::size_t top_k = 40);

/// How the pair threshold is read: as a rank cutoff (keep the top N pairs)
/// or as a frequency floor (keep pairs with corpus_freq >= N).
enum class ThresholdMode { RankCutoff, MinFrequency };

std::string_view to_string(ThresholdMode m);
std::optional<ThresholdMode> parse_threshold_mode(std::string_view text);

struct Threshold {
  ThresholdMode mode = ThresholdMode::RankCutoff;
  std::size_t value = 40;
};

std::vector<RankedPair> select_pairs(const CorpusFrequencyTable& table, Threshold threshold);

struct GroundedPair {
  /// Ontology disease id when grounded, else the normalized surface.
  std::string disease;
  bool disease_grounded = false;
  std::string disease_surface;
  std::string location_id;
  std::string location_surface;
  std::uint64_t corpus_freq = 0;
  ResolutionTier tier = ResolutionTier::Unambiguous;
  std::vector<std::string> candidate_ids;

  bool operator==(const GroundedPair&) const = default;
};

/// Grounds the disease through the synonym index (kept as surface when
/// absent) and resolves the location. No location candidate: nothing.
std::optional<GroundedPair> ground_pair(const PairKey& key, std::uint64_t corpus_freq, const Ontology& ontology,
                                        const GeoResolverFn& resolver, const ResolutionContext& context);

struct WindowStory {
  NewsStory story;
  std::vector<AnnotatedEntity> entities;
};

struct OutbreakEvent {
  std::string disease;
  bool disease_grounded = false;
  std::string location_id;
  std::string location_surface;
  std::uint64_t corpus_freq = 0;
  ResolutionTier tier = ResolutionTier::Unambiguous;
  /// Supporting stories, sorted.
  std::vector<std::string> story_ids;
  Timestamp first_seen{};
  Timestamp detected_at{};

  /// "<disease>@<location_id>"; unique within one cycle.
  std::string id() const { return disease + "@" + location_id; }

  bool operator==(const OutbreakEvent&) const = default;
};

/// A story supports a grounded pair when both a matching DISEASE entity (any
/// synonym of the grounded concept, or the raw surface) and a matching
/// LOCATION entity start before the midpoint of the story text. Pairs without
/// support are dropped; pairs sharing (disease, location id) merge.
/// Events come out ordered by corpus_freq descending, then id.
std::vector<OutbreakEvent> remap_events(std::span<const GroundedPair> grounded, std::span<const WindowStory> window,
                                        const Ontology& ontology, Timestamp detected_at);

/// Entity starts strictly before this offset count as the first half.
std::size_t first_half_limit(const NewsStory& story);

struct DroppedPair {
  PairKey key;
  std::uint64_t corpus_freq = 0;
  std::string reason;

  bool operator==(const DroppedPair&) const = default;
};

struct CycleDiagnostics {
  std::size_t window_stories = 0;
  std::size_t relevant_stories = 0;
  std::size_t distinct_pairs = 0;
  std::size_t selected_pairs = 0;
  std::vector<DroppedPair> dropped;
  std::vector<FallbackRecord> fallbacks;
};

struct CycleResult {
  Timestamp detected_at{};
  std::vector<OutbreakEvent> events;
  CycleDiagnostics diagnostics;
};

struct DetectorConfig {
  Threshold threshold;
  std::chrono::hours window{24};
  /// source id -> country id, for the source-hint rule.
  std::map<std::string, std::string> source_country_hints;
  GeoResolverFn resolver = resolve;
};

/// Full detection over an already selected window of stories.
CycleResult detect_events(std::span<const NewsStory> window, const Ontology& ontology,
                          const ClassifierModel& classifier, const EntityTagger& tagger, Timestamp now,
                          const DetectorConfig& config = {});

/// One detection cycle: stories published in [now - window, now), then
/// detect_events. Throws on component failure; nothing is published here.
CycleResult run_cycle(const StoryStore& store, const Ontology& ontology, const ClassifierModel& classifier,
                      const EntityTagger& tagger, Timestamp now, const DetectorConfig& config = {});

/// `detected_at<TAB>disease<TAB>grounded_flag<TAB>location_id<TAB>lat<TAB>lon<TAB>corpus_freq<TAB>story_ids`
void write_event_dump(std::ostream& out, std::span<const OutbreakEvent> events, const Ontology& ontology);

struct EventDumpRecord {
  Timestamp detected_at{};
  std::string disease;
  bool disease_grounded = false;
  std::string location_id;
  double latitude = 0.0;
  double longitude = 0.0;
  std::uint64_t corpus_freq = 0;
  std::vector<std::string> story_ids;

  bool operator==(const EventDumpRecord&) const = default;
};

std::vector<EventDumpRecord> read_event_dump(std::istream& in);

/// `drop<TAB>location<TAB>disease<TAB>corpus_freq<TAB>reason`, one per dropped pair.
void write_dropped_pairs(std::ostream& out, std::span<const DroppedPair> dropped);
/// `surface<TAB>chosen_id<TAB>candidate_ids`, one per Fallback resolution.
void write_fallback_records(std::ostream& out, std::span<const FallbackRecord> records);

}  // namespace ghm
