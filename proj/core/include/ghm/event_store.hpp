#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghm/detector.hpp"

namespace ghm {

/// What API readers see: the events retained after the most recent cycle.
struct EventSnapshot {
  bool has_cycle = false;
  Timestamp cycle_at{};
  std::size_t cycle_count = 0;
  /// Latest version of every (disease, location) event seen within the
  /// retention horizon, ordered by id.
  std::vector<OutbreakEvent> events;
  /// Events emitted by the most recent cycle, in detector order.
  std::vector<OutbreakEvent> last_cycle;

  const OutbreakEvent* find(std::string_view event_id) const;
};

/// Published detection results. A cycle's events replace earlier versions of
/// the same event; events not re-detected for kRetention are dropped. Each
/// publish swaps in a complete new snapshot.
class EventStore {
 public:
  static constexpr std::chrono::days kRetention{30};

  EventStore();
  /// Replays and then appends to a line-delimited JSON log, one line per cycle.
  explicit EventStore(std::filesystem::path log_path);

  EventStore(const EventStore&) = delete;
  EventStore& operator=(const EventStore&) = delete;

  /// Throws ArgumentError if `detected_at` is older than the current cycle.
  void publish(Timestamp detected_at, std::vector<OutbreakEvent> events);
  void publish(const CycleResult& result) { publish(result.detected_at, result.events); }

  std::shared_ptr<const EventSnapshot> snapshot() const;

 private:
  static std::shared_ptr<const EventSnapshot> apply(const EventSnapshot& base, Timestamp detected_at,
                                                    std::vector<OutbreakEvent> events);

  std::optional<std::filesystem::path> log_path_;
  std::ofstream log_;
  mutable std::mutex write_mu_;
  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const EventSnapshot> current_;
};

std::string event_to_json(const OutbreakEvent& event);
OutbreakEvent event_from_json(std::string_view document);

/// Reads a file of event records, one JSON object per line.
std::vector<OutbreakEvent> read_event_records(std::istream& in);

}  // namespace ghm
