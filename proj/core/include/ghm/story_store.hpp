#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ghm/feed.hpp"

namespace ghm {

/// Rolling store of ingested stories.
///
/// Appends are serialized (one writer at a time) and publish a new immutable
/// snapshot when the whole batch is in, so concurrent readers never observe a
/// partial batch. With a log path every accepted story is also appended to a
/// line-delimited JSON log that is replayed on construction.
class StoryStore {
 public:
  static constexpr std::chrono::days kRetention{30};

  struct Snapshot {
    /// Append order.
    std::vector<std::shared_ptr<const NewsStory>> stories;
    std::unordered_map<std::string, std::size_t> by_id;

    const NewsStory* find(std::string_view id) const;
  };

  StoryStore();
  /// Opens (creating if needed) the log at `log_path` and replays it.
  /// Throws FormatError on a corrupt record; a torn final line is ignored.
  explicit StoryStore(std::filesystem::path log_path);

  StoryStore(const StoryStore&) = delete;
  StoryStore& operator=(const StoryStore&) = delete;

  /// Inserts stories whose id is not yet stored; returns how many were new.
  std::size_t append(std::vector<NewsStory> batch);

  std::shared_ptr<const Snapshot> snapshot() const;

  /// Stories with published_at in [from, to), newest first then by id, never
  /// older than the retention horizon relative to `now`. Throws ArgumentError
  /// when from > to.
  std::vector<NewsStory> select_window(Timestamp from, Timestamp to, Timestamp now) const;
  /// Same with now = to.
  std::vector<NewsStory> select_window(Timestamp from, Timestamp to) const;

  std::optional<NewsStory> find(std::string_view id) const;
  std::size_t size() const;

  /// Drops stories beyond the retention horizon and rewrites the log.
  /// Returns the number removed.
  std::size_t compact(Timestamp now);

 private:
  void write_records(std::ostream& out, const std::vector<std::shared_ptr<const NewsStory>>& stories) const;

  std::optional<std::filesystem::path> log_path_;
  std::ofstream log_;
  mutable std::mutex write_mu_;
  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const Snapshot> current_;
};

/// JSON record used by the store log.
std::string story_to_json(const NewsStory& story);
NewsStory story_from_json(std::string_view line);

}  // namespace ghm
