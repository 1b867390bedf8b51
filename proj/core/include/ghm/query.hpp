#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ghm/error.hpp"
#include "ghm/event_store.hpp"
#include "ghm/feed.hpp"
#include "ghm/ontology.hpp"
#include "ghm/story_store.hpp"

namespace ghm {

enum class RangePreset { Today, ThisWeek, OneWeek, TwoWeeks, ThreeWeeks, Last30Days };

inline constexpr std::array<RangePreset, 6> kAllRangePresets{
    RangePreset::Today,    RangePreset::ThisWeek,   RangePreset::OneWeek,
    RangePreset::TwoWeeks, RangePreset::ThreeWeeks, RangePreset::Last30Days,
};

/// Query-string spelling: "today", "this_week", ..., "last_30_days".
std::string_view to_string(RangePreset p);
std::optional<RangePreset> parse_range_preset(std::string_view text);

struct TimeRange {
  Timestamp from{};
  Timestamp to{};
  /// Presets end at `now` inclusive; explicit ranges are half-open.
  bool closed = false;

  bool contains(Timestamp t) const { return t >= from && (closed ? t <= to : t < to); }
  bool operator==(const TimeRange&) const = default;
};

/// Today starts at midnight UTC, ThisWeek at Monday 00:00 UTC; the fixed
/// presets reach back 7, 14, 21 or 30 days. All end at `now`.
TimeRange resolve_date_preset(RangePreset preset, Timestamp now);

struct EventQuery {
  /// At most one of these is set; neither means Last30Days.
  std::optional<RangePreset> preset;
  std::optional<TimeRange> range;
  std::set<Genre> genres;        // empty: all
  std::set<Syndrome> syndromes;  // empty: all
  /// When present, only these disease ids (or ungrounded surfaces); may be empty.
  std::optional<std::set<std::string>> disease_ids;
  bool include_ungrounded_diseases = false;
  bool initial_headline_only = false;

  TimeRange resolve_range(Timestamp now) const;
};

/// Malformed request; field() names the offending parameter.
class QueryError : public ArgumentError {
 public:
  QueryError(std::string field, const std::string& message) : ArgumentError(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

using QueryParams = std::multimap<std::string, std::string>;

/// Parameters: range=<preset> or from=&to= (ISO 8601), genres, syndromes and
/// diseases as comma-separated lists (repeatable), include_ungrounded and
/// initial_headline_only as true/false/1/0. Unknown parameters are rejected.
EventQuery parse_event_query(const QueryParams& params);

struct ReferenceLink {
  std::string provider;
  std::string url;

  bool operator==(const ReferenceLink&) const = default;
};

/// PubMed, HighWire and Google Scholar searches for `disease country "case"`
/// (country omitted when empty). Throws ArgumentError on an empty disease.
std::vector<ReferenceLink> build_reference_links(std::string_view disease_display, std::string_view country_name);

struct StoryView {
  std::string id;
  std::string source_id;
  std::string url;
  std::string headline;
  Timestamp published_at{};
  Genre genre = Genre::Press;
};

struct EventView {
  OutbreakEvent event;
  std::string disease_name;
  bool bco_linked = false;
  std::set<Syndrome> syndromes;
  std::string location_name;
  std::string country_id;
  std::string country_name;
  double latitude = 0.0;
  double longitude = 0.0;
  /// Supporting stories left after the genre and headline filters, newest first.
  std::vector<StoryView> stories;
  std::vector<ReferenceLink> references;
};

/// Filters the snapshot's events. Genres keep events with at least one
/// supporting story of a selected genre and prune the others from the view;
/// syndromes keep grounded diseases carrying one of them (ungrounded ones only
/// with include_ungrounded_diseases); initial_headline_only keeps, across the
/// whole result, the earliest story per normalized headline and drops events
/// left with none. Ordered by first_seen descending, then id.
std::vector<EventView> query_events(const EventSnapshot& events, const StoryStore::Snapshot& stories,
                                    const EventQuery& query, const Ontology& ontology, Timestamp now);

/// JSON bodies served by the API. Every top-level object carries "cycle_at"
/// (null before the first cycle).
std::string encode_events(const std::vector<EventView>& views, const EventSnapshot& snapshot);
std::string encode_diseases(const Ontology& ontology, const EventSnapshot& snapshot);
std::string encode_locations(std::string_view name, const Ontology& ontology, const EventSnapshot& snapshot);
std::string encode_story(const NewsStory& story, const EventSnapshot& snapshot);
std::string encode_health(const EventSnapshot& snapshot, std::size_t story_count);
std::string encode_error(std::string_view field, std::string_view message, const EventSnapshot& snapshot);

}  // namespace ghm
