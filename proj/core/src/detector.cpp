#include "ghm/detector.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ghm/error.hpp"
#include "ghm/text.hpp"

namespace ghm {
namespace {

std::optional<std::string> majority_hint(const std::vector<std::string>& story_ids,
                                         const std::map<std::string, const WindowStory*>& by_id,
                                         const std::map<std::string, std::string>& hints) {
  std::map<std::string, std::size_t> votes;
  for (const auto& id : story_ids) {
    auto story = by_id.find(id);
    if (story == by_id.end()) continue;
    auto hint = hints.find(story->second->story.source_id);
    if (hint != hints.end()) ++votes[hint->second];
  }
  std::optional<std::string> best;
  std::size_t best_votes = 0;
  for (const auto& [country, n] : votes) {
    if (n > best_votes) {
      best = country;
      best_votes = n;
    }
  }
  return best;
}

}  // namespace

std::vector<PairCandidate> detect_story_pairs(const NewsStory& /*story*/, std::span<const AnnotatedEntity> entities) {
  std::map<std::string, std::uint32_t> locations;
  std::map<std::string, std::uint32_t> diseases;
  for (const auto& e : entities) {
    if (e.cls == EntityClass::Location) ++locations[normalize_term(e.surface)];
    if (e.cls == EntityClass::Disease) ++diseases[normalize_term(e.surface)];
  }
  std::vector<PairCandidate> out;
  for (const auto& [loc, loc_n] : locations) {
    for (const auto& [dis, dis_n] : diseases) out.push_back({{loc, dis}, std::min(loc_n, dis_n)});
  }
  return out;
}

CorpusFrequencyTable aggregate_frequencies(std::span<const StoryPairs> per_story) {
  CorpusFrequencyTable table;
  for (const auto& sp : per_story) {
    for (const auto& c : sp.pairs) {
      auto& stats = table.entries[c.key];
      stats.corpus_freq += c.story_freq;
      stats.story_ids.push_back(sp.story_id);
    }
  }
  for (auto& [key, stats] : table.entries) {
    std::sort(stats.story_ids.begin(), stats.story_ids.end());
    stats.story_ids.erase(std::unique(stats.story_ids.begin(), stats.story_ids.end()), stats.story_ids.end());
  }
  return table;
}

namespace {

std::vector<RankedPair> ranked(const CorpusFrequencyTable& table) {
  std::vector<RankedPair> all;
  all.reserve(table.entries.size());
  for (const auto& [key, stats] : table.entries) all.push_back({key, stats.corpus_freq});
  std::stable_sort(all.begin(), all.end(),
                   [](const RankedPair& a, const RankedPair& b) { return a.corpus_freq > b.corpus_freq; });
  return all;
}

}  // namespace

std::vector<RankedPair> rank_top_pairs(const CorpusFrequencyTable& table, std::size_t top_k) {
  if (top_k == 0) throw ArgumentError("top_k must be at least 1");
  auto all = ranked(table);
  if (all.size() > top_k) all.resize(top_k);
  return all;
}

std::string_view to_string(ThresholdMode m) { return m == ThresholdMode::RankCutoff ? "rank" : "min-frequency"; }

std::optional<ThresholdMode> parse_threshold_mode(std::string_view text) {
  auto lowered = to_lower_ascii(trim(text));
  if (lowered == "rank" || lowered == "rank-cutoff" || lowered == "top-k") return ThresholdMode::RankCutoff;
  if (lowered == "min-frequency" || lowered == "min-freq" || lowered == "floor") return ThresholdMode::MinFrequency;
  return std::nullopt;
}

std::vector<RankedPair> select_pairs(const CorpusFrequencyTable& table, Threshold threshold) {
  if (threshold.mode == ThresholdMode::RankCutoff) return rank_top_pairs(table, threshold.value);
  auto all = ranked(table);
  std::erase_if(all, [&](const RankedPair& p) { return p.corpus_freq < threshold.value; });
  return all;
}

std::optional<GroundedPair> ground_pair(const PairKey& key, std::uint64_t corpus_freq, const Ontology& ontology,
                                        const GeoResolverFn& resolver, const ResolutionContext& context) {
  auto candidates = ontology.lookup_location_candidates(key.location_surface);
  auto resolved = resolver(candidates, context);
  if (!resolved) return std::nullopt;

  GroundedPair gp;
  if (const auto* disease = ontology.lookup_disease(key.disease_surface)) {
    gp.disease = disease->id;
    gp.disease_grounded = true;
  } else {
    gp.disease = key.disease_surface;
    gp.disease_grounded = false;
  }
  gp.disease_surface = key.disease_surface;
  gp.location_id = resolved->location.id;
  gp.location_surface = key.location_surface;
  gp.corpus_freq = corpus_freq;
  gp.tier = resolved->tier;
  for (const auto* c : candidates) gp.candidate_ids.push_back(c->id);
  return gp;
}

std::size_t first_half_limit(const NewsStory& story) { return story.text().size() / 2; }

std::vector<OutbreakEvent> remap_events(std::span<const GroundedPair> grounded, std::span<const WindowStory> window,
                                        const Ontology& ontology, Timestamp detected_at) {
  std::map<std::pair<std::string, std::string>, OutbreakEvent> merged;
  std::vector<std::pair<std::string, std::string>> order;

  for (const auto& gp : grounded) {
    std::set<std::string> disease_forms;
    const DiseaseConcept* concept_ptr = gp.disease_grounded ? ontology.find_disease(gp.disease) : nullptr;
    if (concept_ptr != nullptr) {
      for (const auto& s : concept_ptr->synonyms) disease_forms.insert(normalize_term(s));
    } else {
      disease_forms.insert(gp.disease_surface);
    }

    std::vector<std::string> support;
    std::optional<Timestamp> first_seen;
    for (const auto& ws : window) {
      auto limit = first_half_limit(ws.story);
      bool disease_hit = false;
      bool location_hit = false;
      for (const auto& e : ws.entities) {
        if (e.start >= limit) continue;
        if (e.cls == EntityClass::Disease && disease_forms.contains(normalize_term(e.surface))) disease_hit = true;
        if (e.cls == EntityClass::Location && normalize_term(e.surface) == gp.location_surface) location_hit = true;
      }
      if (!disease_hit || !location_hit) continue;
      support.push_back(ws.story.id);
      if (!first_seen || ws.story.published_at < *first_seen) first_seen = ws.story.published_at;
    }
    if (support.empty()) continue;

    auto key = std::make_pair(gp.disease, gp.location_id);
    auto it = merged.find(key);
    if (it == merged.end()) {
      OutbreakEvent ev;
      ev.disease = gp.disease;
      ev.disease_grounded = gp.disease_grounded;
      ev.location_id = gp.location_id;
      ev.location_surface = gp.location_surface;
      ev.corpus_freq = gp.corpus_freq;
      ev.tier = gp.tier;
      ev.story_ids = std::move(support);
      ev.first_seen = *first_seen;
      ev.detected_at = detected_at;
      merged.emplace(key, std::move(ev));
      order.push_back(key);
    } else {
      auto& ev = it->second;
      ev.corpus_freq += gp.corpus_freq;
      ev.story_ids.insert(ev.story_ids.end(), support.begin(), support.end());
      ev.first_seen = std::min(ev.first_seen, *first_seen);
    }
  }

  std::vector<OutbreakEvent> events;
  events.reserve(merged.size());
  for (auto& [key, ev] : merged) {
    std::sort(ev.story_ids.begin(), ev.story_ids.end());
    ev.story_ids.erase(std::unique(ev.story_ids.begin(), ev.story_ids.end()), ev.story_ids.end());
    events.push_back(std::move(ev));
  }
  std::sort(events.begin(), events.end(), [](const OutbreakEvent& a, const OutbreakEvent& b) {
    if (a.corpus_freq != b.corpus_freq) return a.corpus_freq > b.corpus_freq;
    return a.id() < b.id();
  });
  return events;
}

CycleResult detect_events(std::span<const NewsStory> window, const Ontology& ontology,
                          const ClassifierModel& classifier, const EntityTagger& tagger, Timestamp now,
                          const DetectorConfig& config) {
  CycleResult result;
  result.detected_at = now;
  auto& diag = result.diagnostics;
  diag.window_stories = window.size();

  // Topic classification gates everything downstream.
  std::vector<WindowStory> relevant;
  for (const auto& story : window) {
    auto entities = tagger.tag(story);
    auto prediction = classifier.predict(extract_features(story, entities));
    if (prediction.label == Relevance::Relevant) relevant.push_back({story, std::move(entities)});
  }
  diag.relevant_stories = relevant.size();

  // Per-story pairs, then corpus frequencies.
  std::vector<StoryPairs> per_story;
  per_story.reserve(relevant.size());
  for (const auto& ws : relevant) per_story.push_back({ws.story.id, detect_story_pairs(ws.story, ws.entities)});
  auto table = aggregate_frequencies(per_story);
  diag.distinct_pairs = table.entries.size();

  // Threshold.
  auto selected = select_pairs(table, config.threshold);
  diag.selected_pairs = selected.size();

  // Ground each surviving pair.
  std::map<std::string, const WindowStory*> by_id;
  for (const auto& ws : relevant) by_id.emplace(ws.story.id, &ws);

  std::vector<GroundedPair> grounded;
  for (const auto& pair : selected) {
    const auto& contributors = table.entries.at(pair.key).story_ids;
    ResolutionContext context;
    for (const auto& id : contributors) {
      const auto* ws = by_id.at(id);
      if (!context.story_texts.empty()) context.story_texts += "\n\n";
      context.story_texts += ws->story.text();
      context.mentioned_country_ids.merge(mentioned_country_ids(ontology, ws->entities));
    }
    context.source_country_hint = majority_hint(contributors, by_id, config.source_country_hints);

    auto gp = ground_pair(pair.key, pair.corpus_freq, ontology, config.resolver, context);
    if (!gp) {
      diag.dropped.push_back({pair.key, pair.corpus_freq, "location not in geographical ontology"});
      continue;
    }
    if (gp->tier == ResolutionTier::Fallback) {
      diag.fallbacks.push_back({pair.key.location_surface, gp->location_id, gp->candidate_ids});
    }
    grounded.push_back(std::move(*gp));
  }

  // Remap to stories and merge.
  result.events = remap_events(grounded, relevant, ontology, now);
  std::set<std::pair<std::string, std::string>> kept;
  for (const auto& ev : result.events) kept.emplace(ev.disease, ev.location_id);
  for (const auto& gp : grounded) {
    if (!kept.contains({gp.disease, gp.location_id})) {
      diag.dropped.push_back({{gp.location_surface, gp.disease_surface}, gp.corpus_freq,
                              "no supporting story mentions both terms in its first half"});
    }
  }
  return result;
}

CycleResult run_cycle(const StoryStore& store, const Ontology& ontology, const ClassifierModel& classifier,
                      const EntityTagger& tagger, Timestamp now, const DetectorConfig& config) {
  auto window = store.select_window(now - config.window, now, now);
  return detect_events(window, ontology, classifier, tagger, now, config);
}

void write_event_dump(std::ostream& out, std::span<const OutbreakEvent> events, const Ontology& ontology) {
  for (const auto& ev : events) {
    const auto* loc = ontology.find_location(ev.location_id);
    if (loc == nullptr) throw ArgumentError(fmt::format("event location '{}' is not in the ontology", ev.location_id));
    out << fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", format_timestamp(ev.detected_at), ev.disease,
                       ev.disease_grounded ? 1 : 0, ev.location_id, loc->latitude, loc->longitude, ev.corpus_freq,
                       fmt::join(ev.story_ids, ","));
  }
}

std::vector<EventDumpRecord> read_event_dump(std::istream& in) {
  std::vector<EventDumpRecord> out;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](std::string_view why) { return FormatError(fmt::format("event dump line {}: {}", line_no, why)); };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 8) throw fail(fmt::format("expected 8 fields, got {}", f.size()));
    EventDumpRecord rec;
    auto ts = parse_iso8601(f[0]);
    if (!ts) throw fail("bad detected_at");
    rec.detected_at = *ts;
    rec.disease = std::string(f[1]);
    if (f[2] != "0" && f[2] != "1") throw fail("grounded flag must be 0 or 1");
    rec.disease_grounded = f[2] == "1";
    rec.location_id = std::string(f[3]);
    auto parse_num = [&](std::string_view s, auto& value) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc{} || ptr != s.data() + s.size()) throw fail(fmt::format("bad number '{}'", s));
    };
    parse_num(f[4], rec.latitude);
    parse_num(f[5], rec.longitude);
    parse_num(f[6], rec.corpus_freq);
    for (auto id : split(f[7], ',')) {
      if (!id.empty()) rec.story_ids.emplace_back(id);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_dropped_pairs(std::ostream& out, std::span<const DroppedPair> dropped) {
  for (const auto& d : dropped) {
    out << fmt::format("drop\t{}\t{}\t{}\t{}\n", d.key.location_surface, d.key.disease_surface, d.corpus_freq,
                       d.reason);
  }
}

void write_fallback_records(std::ostream& out, std::span<const FallbackRecord> records) {
  for (const auto& r : records) out << r.to_line() << '\n';
}

}  // namespace ghm
