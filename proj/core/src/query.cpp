#include "ghm/query.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "ghm/text.hpp"

namespace ghm {
namespace {

using nlohmann::json;

constexpr std::pair<RangePreset, std::string_view> kPresetNames[] = {
    {RangePreset::Today, "today"},           {RangePreset::ThisWeek, "this_week"},
    {RangePreset::OneWeek, "one_week"},      {RangePreset::TwoWeeks, "two_weeks"},
    {RangePreset::ThreeWeeks, "three_weeks"}, {RangePreset::Last30Days, "last_30_days"},
};

constexpr std::pair<std::string_view, std::string_view> kProviders[] = {
    {"PubMed", "https://pubmed.ncbi.nlm.nih.gov/?term="},
    {"HighWire", "https://highwire.stanford.edu/cgi/searchresults?fulltext="},
    {"Google Scholar", "https://scholar.google.com/scholar?q="},
};

std::vector<std::string> list_values(const QueryParams& params, const std::string& key) {
  std::vector<std::string> out;
  auto [lo, hi] = params.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    for (auto part : split(it->second, ',')) {
      auto v = trim(part);
      if (!v.empty()) out.emplace_back(v);
    }
  }
  return out;
}

const std::string* single_value(const QueryParams& params, const std::string& key) {
  if (params.count(key) > 1) throw QueryError(key, fmt::format("'{}' given more than once", key));
  auto it = params.find(key);
  return it == params.end() ? nullptr : &it->second;
}

bool parse_flag(const QueryParams& params, const std::string& key) {
  const auto* v = single_value(params, key);
  if (v == nullptr) return false;
  auto lowered = to_lower_ascii(trim(*v));
  if (lowered == "1" || lowered == "true" || lowered == "yes" || lowered.empty()) return true;
  if (lowered == "0" || lowered == "false" || lowered == "no") return false;
  throw QueryError(key, fmt::format("'{}' must be true or false, got '{}'", key, *v));
}

json cycle_json(const EventSnapshot& s) {
  return s.has_cycle ? json(format_timestamp(s.cycle_at)) : json(nullptr);
}

json story_view_json(const StoryView& s) {
  return {{"id", s.id},
          {"source_id", s.source_id},
          {"url", s.url},
          {"headline", s.headline},
          {"published_at", format_timestamp(s.published_at)},
          {"genre", to_lower_ascii(to_string(s.genre))}};
}

}  // namespace

std::string_view to_string(RangePreset p) {
  for (auto [value, name] : kPresetNames) {
    if (value == p) return name;
  }
  return "?";
}

std::optional<RangePreset> parse_range_preset(std::string_view text) {
  auto lowered = to_lower_ascii(trim(text));
  for (auto [value, name] : kPresetNames) {
    if (lowered == name) return value;
  }
  return std::nullopt;
}

TimeRange resolve_date_preset(RangePreset preset, Timestamp now) {
  using std::chrono::days;
  auto midnight = std::chrono::floor<days>(now);
  switch (preset) {
    case RangePreset::Today:
      return {midnight, now, true};
    case RangePreset::ThisWeek: {
      std::chrono::weekday wd{midnight};
      return {midnight - days(wd.iso_encoding() - 1), now, true};
    }
    case RangePreset::OneWeek:
      return {now - days(7), now, true};
    case RangePreset::TwoWeeks:
      return {now - days(14), now, true};
    case RangePreset::ThreeWeeks:
      return {now - days(21), now, true};
    case RangePreset::Last30Days:
      return {now - days(30), now, true};
  }
  return {now - days(30), now, true};
}

TimeRange EventQuery::resolve_range(Timestamp now) const {
  if (range) return *range;
  return resolve_date_preset(preset.value_or(RangePreset::Last30Days), now);
}

EventQuery parse_event_query(const QueryParams& params) {
  static const std::set<std::string> known = {"range",    "from",     "to", "genres", "syndromes", "diseases",
                                              "include_ungrounded", "initial_headline_only"};
  for (const auto& [key, value] : params) {
    if (!known.contains(key)) throw QueryError(key, fmt::format("unknown parameter '{}'", key));
  }

  EventQuery q;
  const auto* range = single_value(params, "range");
  const auto* from = single_value(params, "from");
  const auto* to = single_value(params, "to");
  if (range != nullptr && (from != nullptr || to != nullptr)) {
    throw QueryError("range", "'range' cannot be combined with 'from'/'to'");
  }
  if (range != nullptr) {
    q.preset = parse_range_preset(*range);
    if (!q.preset) throw QueryError("range", fmt::format("unknown range preset '{}'", *range));
  } else if (from != nullptr || to != nullptr) {
    if (from == nullptr) throw QueryError("from", "'to' given without 'from'");
    if (to == nullptr) throw QueryError("to", "'from' given without 'to'");
    auto f = parse_iso8601(*from);
    if (!f) throw QueryError("from", fmt::format("'{}' is not an ISO 8601 timestamp", *from));
    auto t = parse_iso8601(*to);
    if (!t) throw QueryError("to", fmt::format("'{}' is not an ISO 8601 timestamp", *to));
    if (*f > *t) throw QueryError("from", "'from' is after 'to'");
    q.range = TimeRange{*f, *t, false};
  }

  for (const auto& g : list_values(params, "genres")) {
    auto genre = parse_genre(g);
    if (!genre) throw QueryError("genres", fmt::format("unknown genre '{}'", g));
    q.genres.insert(*genre);
  }
  for (const auto& s : list_values(params, "syndromes")) {
    auto syndrome = parse_syndrome(s);
    if (!syndrome) throw QueryError("syndromes", fmt::format("unknown syndrome '{}'", s));
    q.syndromes.insert(*syndrome);
  }
  if (params.contains("diseases")) {
    auto ids = list_values(params, "diseases");
    q.disease_ids = std::set<std::string>(ids.begin(), ids.end());
  }
  q.include_ungrounded_diseases = parse_flag(params, "include_ungrounded");
  q.initial_headline_only = parse_flag(params, "initial_headline_only");
  return q;
}

std::vector<ReferenceLink> build_reference_links(std::string_view disease_display, std::string_view country_name) {
  auto disease = trim(disease_display);
  if (disease.empty()) throw ArgumentError("reference links need a disease name");
  auto country = trim(country_name);
  std::string terms = country.empty() ? fmt::format("{} \"case\"", disease)
                                      : fmt::format("{} {} \"case\"", disease, country);
  auto encoded = percent_encode(terms);
  std::vector<ReferenceLink> out;
  for (auto [provider, base] : kProviders) out.push_back({std::string(provider), std::string(base) + encoded});
  return out;
}

std::vector<EventView> query_events(const EventSnapshot& events, const StoryStore::Snapshot& stories,
                                    const EventQuery& query, const Ontology& ontology, Timestamp now) {
  auto range = query.resolve_range(now);
  std::vector<EventView> views;

  for (const auto& ev : events.events) {
    if (!range.contains(ev.first_seen)) continue;
    if (query.disease_ids && !query.disease_ids->contains(ev.disease)) continue;

    const DiseaseConcept* disease = ev.disease_grounded ? ontology.find_disease(ev.disease) : nullptr;
    if (!query.syndromes.empty()) {
      if (disease == nullptr) {
        if (!query.include_ungrounded_diseases) continue;
      } else if (std::none_of(disease->syndromes.begin(), disease->syndromes.end(),
                              [&](Syndrome s) { return query.syndromes.contains(s); })) {
        continue;
      }
    }

    EventView view;
    for (const auto& id : ev.story_ids) {
      const auto* s = stories.find(id);
      if (s == nullptr) continue;
      if (!query.genres.empty() && !query.genres.contains(s->genre)) continue;
      view.stories.push_back({s->id, s->source_id, s->url, s->headline, s->published_at, s->genre});
    }
    if (!query.genres.empty() && view.stories.empty()) continue;

    const auto* loc = ontology.find_location(ev.location_id);
    if (loc == nullptr) continue;
    const auto* country = ontology.find_location(loc->parent_country_id);

    view.event = ev;
    view.bco_linked = disease != nullptr;
    view.disease_name = disease != nullptr ? disease->root_name : ev.disease;
    if (disease != nullptr) view.syndromes = disease->syndromes;
    view.location_name = loc->name;
    view.country_id = loc->parent_country_id;
    view.country_name = country != nullptr ? country->name : std::string();
    view.latitude = loc->latitude;
    view.longitude = loc->longitude;
    view.references = build_reference_links(view.disease_name, view.country_name);
    views.push_back(std::move(view));
  }

  if (query.initial_headline_only) {
    std::vector<NewsStory> all;
    for (const auto& v : views) {
      for (const auto& s : v.stories) {
        NewsStory n;
        n.id = s.id;
        n.headline = s.headline;
        n.published_at = s.published_at;
        all.push_back(std::move(n));
      }
    }
    std::set<std::string> keep;
    for (const auto& s : dedup_initial_headline(std::move(all))) keep.insert(s.id);
    for (auto& v : views) std::erase_if(v.stories, [&](const StoryView& s) { return !keep.contains(s.id); });
    std::erase_if(views, [](const EventView& v) { return v.stories.empty() && !v.event.story_ids.empty(); });
  }

  for (auto& v : views) {
    std::sort(v.stories.begin(), v.stories.end(), [](const StoryView& a, const StoryView& b) {
      if (a.published_at != b.published_at) return a.published_at > b.published_at;
      return a.id < b.id;
    });
  }
  std::sort(views.begin(), views.end(), [](const EventView& a, const EventView& b) {
    if (a.event.first_seen != b.event.first_seen) return a.event.first_seen > b.event.first_seen;
    return a.event.id() < b.event.id();
  });
  return views;
}

std::string encode_events(const std::vector<EventView>& views, const EventSnapshot& snapshot) {
  json list = json::array();
  for (const auto& v : views) {
    json syndromes = json::array();
    for (auto s : v.syndromes) syndromes.push_back(query_name(s));
    json stories = json::array();
    for (const auto& s : v.stories) stories.push_back(story_view_json(s));
    json refs = json::array();
    for (const auto& r : v.references) refs.push_back({{"provider", r.provider}, {"url", r.url}});
    list.push_back({
        {"id", v.event.id()},
        {"disease", v.event.disease},
        {"disease_name", v.disease_name},
        {"bco_linked", v.bco_linked},
        {"syndromes", std::move(syndromes)},
        {"location_id", v.event.location_id},
        {"location_name", v.location_name},
        {"country_id", v.country_id},
        {"country_name", v.country_name},
        {"lat", v.latitude},
        {"lon", v.longitude},
        {"corpus_freq", v.event.corpus_freq},
        {"tier", std::string(to_string(v.event.tier))},
        {"first_seen", format_timestamp(v.event.first_seen)},
        {"detected_at", format_timestamp(v.event.detected_at)},
        {"stories", std::move(stories)},
        {"references", std::move(refs)},
    });
  }
  json doc = {{"cycle_at", cycle_json(snapshot)}, {"count", views.size()}, {"events", std::move(list)}};
  return doc.dump();
}

std::string encode_diseases(const Ontology& ontology, const EventSnapshot& snapshot) {
  json list = json::array();
  for (const auto& [id, d] : ontology.diseases()) {
    json syndromes = json::array();
    for (auto s : d.syndromes) syndromes.push_back(query_name(s));
    json refs = json::array();
    for (const auto& r : d.external_refs) refs.push_back(r.scheme + ":" + r.id);
    list.push_back({{"id", id},
                    {"name", d.root_name},
                    {"synonyms", d.synonyms},
                    {"syndromes", std::move(syndromes)},
                    {"external_refs", std::move(refs)}});
  }
  json syndromes = json::array();
  for (auto s : kAllSyndromes) syndromes.push_back({{"id", query_name(s)}, {"name", display_name(s)}});
  json doc = {{"cycle_at", cycle_json(snapshot)}, {"syndromes", std::move(syndromes)}, {"diseases", std::move(list)}};
  return doc.dump();
}

std::string encode_locations(std::string_view name, const Ontology& ontology, const EventSnapshot& snapshot) {
  json list = json::array();
  for (const auto* loc : ontology.lookup_location_candidates(name)) {
    list.push_back({{"id", loc->id},
                    {"name", loc->name},
                    {"kind", std::string(to_string(loc->kind))},
                    {"country_id", loc->parent_country_id},
                    {"lat", loc->latitude},
                    {"lon", loc->longitude}});
  }
  json doc = {{"cycle_at", cycle_json(snapshot)}, {"name", name}, {"locations", std::move(list)}};
  return doc.dump();
}

std::string encode_story(const NewsStory& story, const EventSnapshot& snapshot) {
  auto body = story_view_json({story.id, story.source_id, story.url, story.headline, story.published_at, story.genre});
  body["body"] = story.body;
  body["fetched_at"] = format_timestamp(story.fetched_at);
  json doc = {{"cycle_at", cycle_json(snapshot)}, {"story", std::move(body)}};
  return doc.dump();
}

std::string encode_health(const EventSnapshot& snapshot, std::size_t story_count) {
  json doc = {{"cycle_at", cycle_json(snapshot)},
              {"status", "ok"},
              {"cycles", snapshot.cycle_count},
              {"events", snapshot.events.size()},
              {"stories", story_count}};
  return doc.dump();
}

std::string encode_error(std::string_view field, std::string_view message, const EventSnapshot& snapshot) {
  json err = {{"message", message}};
  if (!field.empty()) err["field"] = field;
  json doc = {{"cycle_at", cycle_json(snapshot)}, {"error", std::move(err)}};
  return doc.dump();
}

}  // namespace ghm
