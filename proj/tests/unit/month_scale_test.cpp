#include <gtest/gtest.h>

#include <chrono>
#include <set>
#include <sstream>

#include "ghm/detector.hpp"
#include "ghm/eval.hpp"
#include "ghm/monitor.hpp"
#include "test_support.hpp"

namespace ghm {
namespace {

using testing::ts;

constexpr std::size_t kMonthlyPairs = 950;

// Sub-country names with a single referent that tag cleanly on their own.
std::vector<const GeoLocation*> clean_places(const GazetteerTagger& tagger, std::size_t want) {
  const auto& onto = *testing::bundled().ontology;
  std::vector<const GeoLocation*> out;
  for (const auto& [id, loc] : onto.locations()) {
    if (loc.kind != LocationKind::SubCountry) continue;
    if (onto.lookup_location_candidates(loc.name).size() != 1) continue;
    NewsStory probe;
    probe.headline = loc.name;
    auto ents = tagger.tag(probe);
    if (ents.size() != 1 || ents[0].cls != EntityClass::Location || ents[0].surface != loc.name) continue;
    out.push_back(&loc);
    if (out.size() == want) break;
  }
  return out;
}

TEST(MonthScale, MonthOfHourlyCyclesFindsEveryPlantedPair) {
  const auto& onto = *testing::bundled().ontology;
  GazetteerTagger tagger(testing::bundled().gazetteer);
  auto places = clean_places(tagger, 19);
  ASSERT_EQ(places.size(), 19u);

  std::vector<NewsStory> stream;
  std::vector<EvalPair> planted;
  auto month_start = ts("2007-10-12T00:00:00Z");
  std::size_t j = 0;
  for (const auto& [id, disease] : onto.diseases()) {
    for (const auto* place : places) {
      auto published = month_start + std::chrono::days{j % 30} + std::chrono::hours{(j * 7) % 24} +
                       std::chrono::minutes{j % 60};
      auto story = testing::make_story("wire", disease.root_name + " outbreak in " + place->name,
                                       "Health officials are monitoring the situation and will report again soon.",
                                       format_timestamp(published));
      stream.push_back(story);
      // Noise the classifier must reject.
      stream.push_back(testing::make_story("wire", "Football: " + place->name + " beat the " + disease.root_name + " XI",
                                           "football", format_timestamp(published)));
      planted.push_back({id, place->id});
      ++j;
    }
  }
  ASSERT_EQ(planted.size(), kMonthlyPairs);

  DetectorConfig config;
  std::ostringstream dump;
  auto started = std::chrono::steady_clock::now();
  auto report = replay_stream(stream, onto, tagger, testing::keyword_model(), config, month_start,
                              month_start + std::chrono::days{31}, std::chrono::hours{1}, dump);
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  std::istringstream in(dump.str());
  std::set<EvalPair> detected;
  for (const auto& rec : read_event_dump(in)) detected.insert({rec.disease, rec.location_id});
  std::vector<EvalPair> retrieved(detected.begin(), detected.end());
  auto m = pair_precision_recall(retrieved, planted);

  EXPECT_EQ(report.cycles, 31u * 24u + 1u);
  EXPECT_EQ(report.stories, 2 * kMonthlyPairs);
  EXPECT_EQ(m.retrieved, kMonthlyPairs);
  EXPECT_EQ(m.precision.render(), "1.0000");
  EXPECT_EQ(m.recall.render(), "1.0000");
  EXPECT_LT(elapsed, 60.0) << "month replay took " << elapsed << " s";
  RecordProperty("month_replay_seconds", std::to_string(elapsed));
}

}  // namespace
}  // namespace ghm
