#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ghm/error.hpp"
#include "ghm/event_store.hpp"
#include "test_support.hpp"

namespace ghm {
namespace {

using testing::ts;

OutbreakEvent event(const std::string& disease, const std::string& loc, std::uint64_t freq, const std::string& at,
                    std::vector<std::string> stories = {"s1"}) {
  OutbreakEvent e;
  e.disease = disease;
  e.disease_grounded = disease != "swamp cough";
  e.location_id = loc;
  e.location_surface = "somewhere";
  e.corpus_freq = freq;
  e.tier = ResolutionTier::SourceHint;
  e.story_ids = std::move(stories);
  e.first_seen = ts(at) - std::chrono::hours{3};
  e.detected_at = ts(at);
  return e;
}

TEST(EventStore, EmptyBeforeFirstCycle) {
  EventStore store;
  auto snap = store.snapshot();
  EXPECT_FALSE(snap->has_cycle);
  EXPECT_EQ(snap->cycle_count, 0u);
  EXPECT_TRUE(snap->events.empty());
}

TEST(EventStore, LatestVersionWinsAndOthersPersist) {
  EventStore store;
  store.publish(ts("2007-11-10T12:00:00Z"), {event("cholera", "IQ-98182", 2, "2007-11-10T12:00:00Z"),
                                             event("measles", "PE-3936456", 1, "2007-11-10T12:00:00Z")});
  store.publish(ts("2007-11-10T13:00:00Z"), {event("cholera", "IQ-98182", 5, "2007-11-10T13:00:00Z", {"s1", "s2"})});
  auto snap = store.snapshot();
  EXPECT_EQ(snap->cycle_count, 2u);
  EXPECT_EQ(snap->cycle_at, ts("2007-11-10T13:00:00Z"));
  ASSERT_EQ(snap->events.size(), 2u);
  EXPECT_EQ(snap->events[0].id(), "cholera@IQ-98182");
  EXPECT_EQ(snap->events[0].corpus_freq, 5u);
  EXPECT_EQ(snap->events[1].id(), "measles@PE-3936456");
  ASSERT_EQ(snap->last_cycle.size(), 1u);
  ASSERT_NE(snap->find("measles@PE-3936456"), nullptr);
  EXPECT_EQ(snap->find("nope"), nullptr);
}

TEST(EventStore, PrunesBeyondRetention) {
  EventStore store;
  store.publish(ts("2007-10-01T00:00:00Z"), {event("cholera", "IQ-98182", 2, "2007-10-01T00:00:00Z")});
  store.publish(ts("2007-10-31T00:00:00Z"), {});
  EXPECT_EQ(store.snapshot()->events.size(), 1u);
  store.publish(ts("2007-10-31T00:00:01Z"), {});
  EXPECT_TRUE(store.snapshot()->events.empty());
}

TEST(EventStore, RejectsOlderCycle) {
  EventStore store;
  store.publish(ts("2007-11-10T12:00:00Z"), {});
  EXPECT_THROW(store.publish(ts("2007-11-10T11:00:00Z"), {}), ArgumentError);
  EXPECT_NO_THROW(store.publish(ts("2007-11-10T12:00:00Z"), {}));
}

TEST(EventStore, OldSnapshotsStayValid) {
  EventStore store;
  store.publish(ts("2007-11-10T12:00:00Z"), {event("cholera", "IQ-98182", 2, "2007-11-10T12:00:00Z")});
  auto before = store.snapshot();
  store.publish(ts("2007-11-10T13:00:00Z"), {event("measles", "PE-3936456", 1, "2007-11-10T13:00:00Z")});
  EXPECT_EQ(before->events.size(), 1u);
  EXPECT_EQ(store.snapshot()->events.size(), 2u);
}

TEST(EventStore, LogReplaysAndIgnoresTornLine) {
  auto path = testing::scratch_dir("event_log") / "events.jsonl";
  {
    EventStore store(path);
    store.publish(ts("2007-11-10T12:00:00Z"), {event("cholera", "IQ-98182", 2, "2007-11-10T12:00:00Z")});
    store.publish(ts("2007-11-10T13:00:00Z"), {event("swamp cough", "PE-3936456", 1, "2007-11-10T13:00:00Z")});
  }
  std::ofstream(path, std::ios::app) << R"({"cycle_at":"2007-11-10T14)";
  EventStore store(path);
  auto snap = store.snapshot();
  EXPECT_EQ(snap->cycle_count, 2u);
  EXPECT_EQ(snap->cycle_at, ts("2007-11-10T13:00:00Z"));
  ASSERT_EQ(snap->events.size(), 2u);
  EXPECT_EQ(snap->events[1].id(), "swamp cough@PE-3936456");
  EXPECT_FALSE(snap->events[1].disease_grounded);
}

TEST(EventJson, RoundTrips) {
  auto e = event("cholera", "IQ-98182", 7, "2007-11-07T12:00:00Z", {"a", "b"});
  e.tier = ResolutionTier::Fallback;
  EXPECT_EQ(event_from_json(event_to_json(e)), e);
  EXPECT_THROW(event_from_json("{}"), FormatError);
  EXPECT_THROW(event_from_json(R"({"disease":"x"})"), FormatError);
}

TEST(EventRecords, ReadsLines) {
  std::istringstream in(event_to_json(event("cholera", "IQ-98182", 1, "2007-11-07T12:00:00Z")) + "\n\n" +
                        event_to_json(event("measles", "PE-3936456", 1, "2007-11-07T12:00:00Z")) + "\n");
  auto recs = read_event_records(in);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1].disease, "measles");
}

}  // namespace
}  // namespace ghm
