#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ghm/geo_resolver.hpp"
#include "test_support.hpp"

namespace ghm {
namespace {

const Ontology& onto() { return *testing::bundled().ontology; }

std::vector<const GeoLocation*> candidates(const std::string& name) {
  return onto().lookup_location_candidates(name);
}

ResolutionContext hint(std::optional<std::string> country, std::set<std::string> mentioned = {}) {
  ResolutionContext ctx;
  ctx.source_country_hint = std::move(country);
  ctx.mentioned_country_ids = std::move(mentioned);
  return ctx;
}

TEST(Resolve, AmbiguousNamesHaveTwoCandidates) {
  EXPECT_EQ(candidates("Isle of Wight").size(), 2u);
  EXPECT_EQ(candidates("Camden").size(), 2u);
}

TEST(Resolve, SourceHintPicksBritishIsleOfWight) {
  auto got = resolve(candidates("Isle of Wight"), hint("GB"));
  ASSERT_TRUE(got);
  EXPECT_EQ(got->location.id, "GB-isle-of-wight");
  EXPECT_EQ(got->location.parent_country_id, "GB");
  EXPECT_EQ(got->tier, ResolutionTier::SourceHint);
}

TEST(Resolve, SourceHintPicksAustralianCamden) {
  auto got = resolve(candidates("Camden"), hint("AU"));
  ASSERT_TRUE(got);
  EXPECT_EQ(got->location.id, "AU-camden");
  EXPECT_EQ(got->tier, ResolutionTier::SourceHint);
}

TEST(Resolve, MentionedCountryBeatsSourceHint) {
  auto got = resolve(candidates("Camden"), hint("AU", {"GB"}));
  ASSERT_TRUE(got);
  EXPECT_EQ(got->location.id, "GB-camden");
  EXPECT_EQ(got->tier, ResolutionTier::ContextCountry);
}

TEST(Resolve, AmbiguousContextFallsThroughToHint) {
  auto got = resolve(candidates("Camden"), hint("AU", {"GB", "AU"}));
  ASSERT_TRUE(got);
  EXPECT_EQ(got->location.id, "AU-camden");
  EXPECT_EQ(got->tier, ResolutionTier::SourceHint);
}

TEST(Resolve, NoEvidenceFallsBackToSmallestId) {
  for (auto ctx : {hint(std::nullopt), hint("FR"), hint("FR", {"DE"})}) {
    auto got = resolve(candidates("Isle of Wight"), ctx);
    ASSERT_TRUE(got);
    EXPECT_EQ(got->location.id, "GB-isle-of-wight");
    EXPECT_EQ(got->tier, ResolutionTier::Fallback);
  }
  auto london = resolve(candidates("London"), hint(std::nullopt));
  EXPECT_EQ(london->location.id, "CA-6058560");
}

TEST(Resolve, SingleCandidateIsUnambiguousRegardlessOfContext) {
  auto got = resolve(candidates("Jakarta"), hint("GB", {"GB"}));
  ASSERT_TRUE(got);
  EXPECT_EQ(got->location.id, "ID-1642911");
  EXPECT_EQ(got->tier, ResolutionTier::Unambiguous);
}

TEST(Resolve, NoCandidatesGivesNothing) {
  EXPECT_FALSE(resolve(std::vector<const GeoLocation*>{}, hint("GB")));
}

TEST(Resolve, IndependentOfCandidateOrder) {
  std::mt19937 rng(7);
  std::vector<const GeoLocation*> pool;
  for (const auto& [id, loc] : onto().locations()) pool.push_back(&loc);
  std::vector<std::string> countries;
  for (const auto& [id, loc] : onto().locations())
    if (loc.kind == LocationKind::Country) countries.push_back(id);

  for (int trial = 0; trial < 300; ++trial) {
    std::vector<const GeoLocation*> cands;
    std::sample(pool.begin(), pool.end(), std::back_inserter(cands), 2 + trial % 5, rng);
    ResolutionContext ctx;
    for (const auto* c : cands)
      if (rng() % 3 == 0) ctx.mentioned_country_ids.insert(c->parent_country_id);
    if (rng() % 2 == 0) ctx.source_country_hint = cands[rng() % cands.size()]->parent_country_id;
    else if (rng() % 2 == 0) ctx.source_country_hint = countries[rng() % countries.size()];

    auto first = resolve(cands, ctx);
    ASSERT_TRUE(first);
    for (int p = 0; p < 4; ++p) {
      std::shuffle(cands.begin(), cands.end(), rng);
      auto again = resolve(cands, ctx);
      ASSERT_TRUE(again);
      EXPECT_EQ(again->location.id, first->location.id);
      EXPECT_EQ(again->tier, first->tier);
    }
    EXPECT_NE(std::find_if(cands.begin(), cands.end(), [&](auto* c) { return c->id == first->location.id; }),
              cands.end());
  }
}

TEST(CountryMentions, OnlyCountriesCount) {
  auto got = detect_country_mentions("Cholera in Lima, Peru and in Kenya; also London.", *testing::bundled().gazetteer,
                                     onto());
  EXPECT_EQ(got, (std::set<std::string>{"KE", "PE"}));
}

TEST(FallbackRecord, LineFormat) {
  FallbackRecord r{"London", "CA-6058560", {"CA-6058560", "GB-2643743"}};
  EXPECT_EQ(r.to_line(), "London\tCA-6058560\tCA-6058560,GB-2643743");
}

TEST(ResolutionTier, Names) {
  EXPECT_EQ(to_string(ResolutionTier::SourceHint), "SourceHint");
  EXPECT_EQ(to_string(ResolutionTier::ContextCountry), "ContextCountry");
}

}  // namespace
}  // namespace ghm
