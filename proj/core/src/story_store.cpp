#include "ghm/story_store.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "ghm/error.hpp"

namespace ghm {
namespace {

using nlohmann::json;


}  // namespace

const NewsStory* StoryStore::Snapshot::find(std::string_view id) const {
  auto it = by_id.find(std::string(id));
  return it == by_id.end() ? nullptr : stories[it->second].get();
}

std::string story_to_json(const NewsStory& s) {
  json j = {
      {"id", s.id},
      {"source_id", s.source_id},
      {"url", s.url},
      {"headline", s.headline},
      {"body", s.body},
      {"published_at", format_timestamp(s.published_at)},
      {"fetched_at", format_timestamp(s.fetched_at)},
      {"genre", std::string(to_string(s.genre))},
  };
  return j.dump();
}

NewsStory story_from_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("story record is not JSON: {}", e.what()));
  }
  try {
    NewsStory s;
    s.id = j.at("id").get<std::string>();
    s.source_id = j.at("source_id").get<std::string>();
    s.url = j.at("url").get<std::string>();
    s.headline = j.at("headline").get<std::string>();
    s.body = j.value("body", "");
    auto published = parse_iso8601(j.at("published_at").get<std::string>());
    auto fetched = parse_iso8601(j.at("fetched_at").get<std::string>());
    auto genre = parse_genre(j.at("genre").get<std::string>());
    if (!published || !fetched) throw FormatError(fmt::format("story '{}': invalid timestamp", s.id));
    if (!genre) throw FormatError(fmt::format("story '{}': unknown genre", s.id));
    if (s.headline.empty()) throw FormatError(fmt::format("story '{}': empty headline", s.id));
    if (s.id != make_story_id(s.url, s.headline)) {
      throw FormatError(fmt::format("story '{}': id does not match its url and headline", s.id));
    }
    s.published_at = *published;
    s.fetched_at = *fetched;
    s.genre = *genre;
    return s;
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("story record: {}", e.what()));
  }
}

StoryStore::StoryStore() : current_(std::make_shared<Snapshot>()) {}

StoryStore::StoryStore(std::filesystem::path log_path) : StoryStore() {
  auto snap = std::make_shared<Snapshot>();
  if (std::filesystem::exists(log_path)) {
    std::ifstream in(log_path);
    if (!in) throw FormatError(fmt::format("cannot read story log {}", log_path.string()));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (in.eof()) {
        // No trailing newline: the writer died mid-record.
        try {
          story_from_json(line);
        } catch (const FormatError&) {
          break;
        }
      }
      NewsStory story;
      try {
        story = story_from_json(line);
      } catch (const FormatError& e) {
        throw FormatError(fmt::format("{} line {}: {}", log_path.string(), line_no, e.what()));
      }
      if (snap->by_id.contains(story.id)) continue;
      snap->by_id.emplace(story.id, snap->stories.size());
      snap->stories.push_back(std::make_shared<const NewsStory>(std::move(story)));
    }
  } else if (log_path.has_parent_path()) {
    std::filesystem::create_directories(log_path.parent_path());
  }
  log_.open(log_path, std::ios::app);
  if (!log_) throw FormatError(fmt::format("cannot open story log {} for appending", log_path.string()));
  log_path_ = std::move(log_path);
  current_ = std::move(snap);
}

std::size_t StoryStore::append(std::vector<NewsStory> batch) {
  std::lock_guard write_lock(write_mu_);
  auto base = snapshot();
  auto next = std::make_shared<Snapshot>(*base);
  std::vector<std::shared_ptr<const NewsStory>> added;
  for (auto& story : batch) {
    if (next->by_id.contains(story.id)) continue;
    next->by_id.emplace(story.id, next->stories.size());
    auto ptr = std::make_shared<const NewsStory>(std::move(story));
    next->stories.push_back(ptr);
    added.push_back(std::move(ptr));
  }
  if (added.empty()) return 0;
  if (log_path_) {
    write_records(log_, added);
    log_.flush();
    if (!log_) throw FormatError(fmt::format("write to {} failed", log_path_->string()));
  }
  std::lock_guard snap_lock(snapshot_mu_);
  current_ = std::move(next);
  return added.size();
}

std::shared_ptr<const StoryStore::Snapshot> StoryStore::snapshot() const {
  std::lock_guard lock(snapshot_mu_);
  return current_;
}

std::vector<NewsStory> StoryStore::select_window(Timestamp from, Timestamp to, Timestamp now) const {
  if (from > to) {
    throw ArgumentError(fmt::format("inverted window [{}, {})", format_timestamp(from), format_timestamp(to)));
  }
  auto horizon = now - kRetention;
  auto snap = snapshot();
  std::vector<NewsStory> out;
  for (const auto& s : snap->stories) {
    if (s->published_at >= from && s->published_at < to && s->published_at >= horizon) out.push_back(*s);
  }
  std::sort(out.begin(), out.end(), [](const NewsStory& a, const NewsStory& b) {
    if (a.published_at != b.published_at) return a.published_at > b.published_at;
    return a.id < b.id;
  });
  return out;
}

std::vector<NewsStory> StoryStore::select_window(Timestamp from, Timestamp to) const {
  return select_window(from, to, to);
}

std::optional<NewsStory> StoryStore::find(std::string_view id) const {
  auto snap = snapshot();
  if (const auto* s = snap->find(id)) return *s;
  return std::nullopt;
}

std::size_t StoryStore::size() const { return snapshot()->stories.size(); }

std::size_t StoryStore::compact(Timestamp now) {
  std::lock_guard write_lock(write_mu_);
  auto base = snapshot();
  auto horizon = now - kRetention;
  auto next = std::make_shared<Snapshot>();
  for (const auto& s : base->stories) {
    if (s->published_at < horizon) continue;
    next->by_id.emplace(s->id, next->stories.size());
    next->stories.push_back(s);
  }
  auto removed = base->stories.size() - next->stories.size();
  if (removed == 0) return 0;
  if (log_path_) {
    auto tmp = *log_path_;
    tmp += ".compact";
    {
      std::ofstream out(tmp, std::ios::trunc);
      write_records(out, next->stories);
      if (!out) throw FormatError(fmt::format("write to {} failed", tmp.string()));
    }
    log_.close();
    std::filesystem::rename(tmp, *log_path_);
    log_.open(*log_path_, std::ios::app);
  }
  std::lock_guard snap_lock(snapshot_mu_);
  current_ = std::move(next);
  return removed;
}

void StoryStore::write_records(std::ostream& out, const std::vector<std::shared_ptr<const NewsStory>>& stories) const {
  for (const auto& s : stories) out << story_to_json(*s) << '\n';
}

}  // namespace ghm
