#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include "ghm/error.hpp"
#include "ghm/story_store.hpp"
#include "test_support.hpp"

namespace ghm {
namespace {

using testing::make_story;
using testing::ts;

std::vector<std::string> ids(const std::vector<NewsStory>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.id);
  return out;
}

TEST(StoryStore, AppendSkipsKnownIds) {
  StoryStore store;
  auto a = make_story("x", "A", "", "2007-11-10T00:00:00Z");
  auto b = make_story("x", "B", "", "2007-11-10T01:00:00Z");
  EXPECT_EQ(store.append({a, b, a}), 2u);
  EXPECT_EQ(store.append({b}), 0u);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_EQ(store.find(a.id)->headline, "A");
  EXPECT_FALSE(store.find("nope"));
}

TEST(StoryStore, WindowIsHalfOpenAndOrdered) {
  StoryStore store;
  auto at_from = make_story("x", "from", "", "2007-11-10T00:00:00Z");
  auto mid1 = make_story("x", "mid1", "", "2007-11-10T06:00:00Z");
  auto mid2 = make_story("y", "mid2", "", "2007-11-10T06:00:00Z");
  auto late = make_story("x", "late", "", "2007-11-10T12:00:00Z");
  auto at_to = make_story("x", "to", "", "2007-11-11T00:00:00Z");
  store.append({at_from, mid1, mid2, late, at_to});
  auto w = store.select_window(ts("2007-11-10T00:00:00Z"), ts("2007-11-11T00:00:00Z"));
  std::vector<std::string> want{late.id, std::min(mid1.id, mid2.id), std::max(mid1.id, mid2.id), at_from.id};
  EXPECT_EQ(ids(w), want);
  EXPECT_TRUE(store.select_window(ts("2007-11-10T03:00:00Z"), ts("2007-11-10T03:00:00Z")).empty());
  EXPECT_THROW(store.select_window(ts("2007-11-11T00:00:00Z"), ts("2007-11-10T00:00:00Z")), ArgumentError);
}

TEST(StoryStore, WindowRespectsRetention) {
  StoryStore store;
  auto old = make_story("x", "old", "", "2007-10-01T00:00:00Z");
  auto fresh = make_story("x", "fresh", "", "2007-11-05T00:00:00Z");
  store.append({old, fresh});
  auto w = store.select_window(ts("2007-09-01T00:00:00Z"), ts("2007-11-11T00:00:00Z"), ts("2007-11-11T00:00:00Z"));
  EXPECT_EQ(ids(w), std::vector<std::string>{fresh.id});
}

TEST(StoryStore, LogReplaysAndCompacts) {
  auto dir = testing::scratch_dir("story_log");
  auto path = dir / "stories.jsonl";
  auto old = make_story("x", "old", "body\twith\ttabs", "2007-10-01T00:00:00Z", Genre::Business);
  auto fresh = make_story("x", "fresh \"quoted\"", "line\nbreak", "2007-11-05T00:00:00Z", Genre::Official);
  {
    StoryStore store(path);
    store.append({old, fresh});
  }
  {
    StoryStore store(path);
    EXPECT_EQ(store.size(), 2u);
    EXPECT_EQ(*store.find(fresh.id), fresh);
    EXPECT_EQ(store.compact(ts("2007-11-11T00:00:00Z")), 1u);
  }
  StoryStore store(path);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_TRUE(store.find(fresh.id));
}

TEST(StoryStore, TornFinalLineIsIgnored) {
  auto dir = testing::scratch_dir("story_torn");
  auto path = dir / "stories.jsonl";
  auto a = make_story("x", "A", "", "2007-11-10T00:00:00Z");
  std::ofstream(path) << story_to_json(a) << "\n" << R"({"id":"abc","headl)";
  StoryStore store(path);
  EXPECT_EQ(store.size(), 1u);
}

TEST(StoryStore, CorruptRecordThrows) {
  auto dir = testing::scratch_dir("story_corrupt");
  auto path = dir / "stories.jsonl";
  auto a = make_story("x", "A", "", "2007-11-10T00:00:00Z");
  std::ofstream(path) << "{not json}\n" << story_to_json(a) << "\n";
  EXPECT_THROW(StoryStore{path}, FormatError);
}

TEST(StoryJson, RoundTrips) {
  auto s = make_story("src", "Héadline", "B", "2007-11-10T00:00:00Z", Genre::Mixed);
  s.fetched_at = ts("2007-11-10T00:05:00Z");
  EXPECT_EQ(story_from_json(story_to_json(s)), s);
}

TEST(StoryStore, ReadersNeverSeePartialBatches) {
  StoryStore store;
  constexpr int kBatches = 200;
  constexpr int kBatchSize = 5;
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    while (!done) {
      if (store.snapshot()->stories.size() % kBatchSize != 0) ++bad;
    }
  });
  for (int b = 0; b < kBatches; ++b) {
    std::vector<NewsStory> batch;
    for (int i = 0; i < kBatchSize; ++i)
      batch.push_back(make_story("x", "s" + std::to_string(b * kBatchSize + i), "", "2007-11-10T00:00:00Z"));
    store.append(std::move(batch));
  }
  done = true;
  reader.join();
  EXPECT_EQ(bad.load(), 0);
  EXPECT_EQ(store.size(), std::size_t{kBatches * kBatchSize});
}

}  // namespace
}  // namespace ghm
