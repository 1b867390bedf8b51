#include "ghm/event_store.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "ghm/error.hpp"
#include "ghm/text.hpp"

namespace ghm {
namespace {

using nlohmann::json;

json event_json(const OutbreakEvent& e) {
  return {
      {"id", e.id()},
      {"disease", e.disease},
      {"disease_grounded", e.disease_grounded},
      {"location_id", e.location_id},
      {"location_surface", e.location_surface},
      {"corpus_freq", e.corpus_freq},
      {"tier", std::string(to_string(e.tier))},
      {"story_ids", e.story_ids},
      {"first_seen", format_timestamp(e.first_seen)},
      {"detected_at", format_timestamp(e.detected_at)},
  };
}

std::optional<ResolutionTier> parse_tier(std::string_view s) {
  for (auto t : {ResolutionTier::Unambiguous, ResolutionTier::ContextCountry, ResolutionTier::SourceHint,
                 ResolutionTier::Fallback}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

OutbreakEvent event_from(const json& j) {
  try {
    OutbreakEvent e;
    e.disease = j.at("disease").get<std::string>();
    e.disease_grounded = j.at("disease_grounded").get<bool>();
    e.location_id = j.at("location_id").get<std::string>();
    e.location_surface = j.value("location_surface", "");
    e.corpus_freq = j.at("corpus_freq").get<std::uint64_t>();
    auto tier = parse_tier(j.value("tier", "Unambiguous"));
    if (!tier) throw FormatError(fmt::format("event {}: unknown tier", e.id()));
    e.tier = *tier;
    e.story_ids = j.at("story_ids").get<std::vector<std::string>>();
    std::sort(e.story_ids.begin(), e.story_ids.end());
    auto first = parse_iso8601(j.at("first_seen").get<std::string>());
    auto detected = parse_iso8601(j.at("detected_at").get<std::string>());
    if (!first || !detected) throw FormatError(fmt::format("event {}: invalid timestamp", e.id()));
    e.first_seen = *first;
    e.detected_at = *detected;
    if (e.disease.empty() || e.location_id.empty()) throw FormatError("event record lacks disease or location");
    return e;
  } catch (const json::exception& ex) {
    throw FormatError(fmt::format("event record: {}", ex.what()));
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("not JSON: {}", e.what()));
  }
}

}  // namespace

std::string event_to_json(const OutbreakEvent& event) { return event_json(event).dump(); }

OutbreakEvent event_from_json(std::string_view document) { return event_from(parse_json(document)); }

std::vector<OutbreakEvent> read_event_records(std::istream& in) {
  std::vector<OutbreakEvent> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(event_from_json(line));
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

const OutbreakEvent* EventSnapshot::find(std::string_view event_id) const {
  for (const auto& e : events) {
    if (e.id() == event_id) return &e;
  }
  return nullptr;
}

EventStore::EventStore() : current_(std::make_shared<EventSnapshot>()) {}

EventStore::EventStore(std::filesystem::path log_path) : EventStore() {
  if (std::filesystem::exists(log_path)) {
    std::ifstream in(log_path);
    if (!in) throw FormatError(fmt::format("cannot read event log {}", log_path.string()));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      bool torn = in.eof();
      try {
        auto j = parse_json(line);
        auto at = parse_iso8601(j.at("detected_at").get<std::string>());
        if (!at) throw FormatError("invalid detected_at");
        std::vector<OutbreakEvent> events;
        for (const auto& e : j.at("events")) events.push_back(event_from(e));
        current_ = apply(*current_, *at, std::move(events));
      } catch (const std::exception& e) {
        if (torn) break;
        throw FormatError(fmt::format("{} line {}: {}", log_path.string(), line_no, e.what()));
      }
    }
  } else if (log_path.has_parent_path()) {
    std::filesystem::create_directories(log_path.parent_path());
  }
  log_.open(log_path, std::ios::app);
  if (!log_) throw FormatError(fmt::format("cannot open event log {} for appending", log_path.string()));
  log_path_ = std::move(log_path);
}

std::shared_ptr<const EventSnapshot> EventStore::apply(const EventSnapshot& base, Timestamp detected_at,
                                                       std::vector<OutbreakEvent> events) {
  auto next = std::make_shared<EventSnapshot>();
  next->has_cycle = true;
  next->cycle_at = detected_at;
  next->cycle_count = base.cycle_count + 1;

  std::map<std::string, OutbreakEvent> by_id;
  auto horizon = detected_at - kRetention;
  for (const auto& e : base.events) {
    if (e.detected_at >= horizon) by_id.emplace(e.id(), e);
  }
  for (const auto& e : events) by_id.insert_or_assign(e.id(), e);
  next->events.reserve(by_id.size());
  for (auto& [id, e] : by_id) next->events.push_back(std::move(e));
  next->last_cycle = std::move(events);
  return next;
}

void EventStore::publish(Timestamp detected_at, std::vector<OutbreakEvent> events) {
  std::lock_guard write_lock(write_mu_);
  auto base = snapshot();
  if (base->has_cycle && detected_at < base->cycle_at) {
    throw ArgumentError(fmt::format("cycle at {} is older than the published cycle at {}",
                                    format_timestamp(detected_at), format_timestamp(base->cycle_at)));
  }
  if (log_path_) {
    json record = {{"detected_at", format_timestamp(detected_at)}, {"events", json::array()}};
    for (const auto& e : events) record["events"].push_back(event_json(e));
    log_ << record.dump() << '\n';
    log_.flush();
    if (!log_) throw FormatError(fmt::format("write to event log {} failed", log_path_->string()));
  }
  auto next = apply(*base, detected_at, std::move(events));
  std::lock_guard lock(snapshot_mu_);
  current_ = std::move(next);
}

std::shared_ptr<const EventSnapshot> EventStore::snapshot() const {
  std::lock_guard lock(snapshot_mu_);
  return current_;
}

}  // namespace ghm
