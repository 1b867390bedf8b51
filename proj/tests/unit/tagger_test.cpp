#include <gtest/gtest.h>

#include <sstream>

#include "ghm/error.hpp"
#include "ghm/tagger.hpp"
#include "ghm/text.hpp"
#include "test_support.hpp"

namespace ghm {
namespace {

const Gazetteer& gaz() { return *testing::bundled().gazetteer; }

std::vector<std::pair<std::string, EntityClass>> spans(const std::string& text) {
  std::vector<std::pair<std::string, EntityClass>> out;
  for (const auto& e : tag_text(text, gaz())) {
    EXPECT_EQ(text.substr(e.start, e.end - e.start), e.surface);
    out.emplace_back(e.surface, e.cls);
  }
  return out;
}

using P = std::pair<std::string, EntityClass>;
constexpr auto kD = EntityClass::Disease;
constexpr auto kL = EntityClass::Location;
constexpr auto kO = EntityClass::Organization;
constexpr auto kP = EntityClass::Person;

TEST(EntityClass, NamesRoundTrip) {
  for (auto c : {kD, kL, kO, kP}) EXPECT_EQ(parse_entity_class(to_string(c)), c);
  EXPECT_EQ(to_string(kO), "ORGANIZATION");
  EXPECT_FALSE(parse_entity_class("MISC"));
}

TEST(Gazetteer, DictionariesMirrorTheOntology) {
  const auto& onto = *testing::bundled().ontology;
  std::size_t synonyms = 0;
  for (const auto& [id, d] : onto.diseases()) synonyms += d.synonyms.size();
  EXPECT_EQ(gaz().entry_count(kD), synonyms);
  EXPECT_EQ(gaz().entry_count(kL), onto.country_count() + onto.sub_country_count());
  for (const auto& [surface, hints] : gaz().entries(kL))
    EXPECT_EQ(hints.size(), onto.lookup_location_candidates(surface).size()) << surface;
  EXPECT_EQ(gaz().entries(kL).at("camden").size(), 2u);
}

TEST(Tagger, FindsAllFourClasses) {
  auto got = spans("Margaret Chan of the World Health Organization confirmed bird flu in Jakarta.");
  EXPECT_EQ(got, (std::vector<P>{{"Margaret Chan", kP},
                                 {"World Health Organization", kO},
                                 {"bird flu", kD},
                                 {"Jakarta", kL}}));
}

TEST(Tagger, PrefersLongestMatch) {
  auto got = spans("Norovirus on the Isle of Wight");
  EXPECT_EQ(got, (std::vector<P>{{"Norovirus", kD}, {"Isle of Wight", kL}}));
  auto flu = spans("H5N1 influenza spreads");
  ASSERT_EQ(flu.size(), 1u);
  EXPECT_EQ(flu[0].first, "H5N1 influenza");
}

TEST(Tagger, RespectsWordBoundaries) {
  EXPECT_TRUE(spans("Camdenton and Peruvian choleraic").empty());
  EXPECT_EQ(spans("(Camden)"), (std::vector<P>{{"Camden", kL}}));
}

TEST(Tagger, IsCaseInsensitiveAndKeepsOriginalSurface) {
  auto got = tag_text("CHOLERA hits lima", gaz());
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].surface, "CHOLERA");
  EXPECT_EQ(got[1].surface, "lima");
  EXPECT_EQ(got[1].start, 13u);
  EXPECT_EQ(got[1].end, 17u);
}

TEST(Tagger, OutputIsSortedAndDisjoint) {
  std::string text =
      "Avian influenza in Camden, London and Peru; WHO and FAO report bird flu, cholera and dengue.";
  auto got = tag_text(text, gaz());
  ASSERT_FALSE(got.empty());
  for (std::size_t i = 1; i < got.size(); ++i) EXPECT_LE(got[i - 1].end, got[i].start);
}

TEST(Tagger, OffsetsSpanHeadlineAndBody) {
  auto s = testing::make_story("x", "Cholera outbreak", "Cases in Lima", "2007-11-11T00:00:00Z");
  GazetteerTagger tagger(testing::bundled().gazetteer);
  auto got = tagger.tag(s);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[1].start, s.text().find("Lima"));
}

TEST(EntryList, SkipsCommentsAndBlanks) {
  std::istringstream in("# c\n\n  Alice Smith  \nBob\n");
  EXPECT_EQ(read_entry_list(in), (std::vector<std::string>{"Alice Smith", "Bob"}));
}

TEST(AnnotationDump, RoundTrips) {
  std::vector<AnnotatedEntity> ents{{0, 7, "Cholera", kD}, {11, 15, "Lima", kL}};
  std::ostringstream out;
  write_annotation_dump(out, "s1", ents);
  std::istringstream in(out.str());
  auto recs = read_annotation_dump(in);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].story_id, "s1");
  EXPECT_EQ(recs[0].entity, ents[0]);
  EXPECT_EQ(recs[1].entity, ents[1]);
}

TEST(AnnotationDump, RejectsMalformedLines) {
  for (const char* bad : {"s1\t0\t7\tDISEASE\n", "s1\tx\t7\tDISEASE\tc\n", "s1\t9\t7\tDISEASE\tc\n",
                          "s1\t0\t7\tMISC\tc\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_annotation_dump(in), FormatError) << bad;
  }
}

TEST(DictionaryTagger, MatchesLongestPhrase) {
  testing::DictionaryTagger t;
  t.add("swamp cough", kD);
  t.add("swamp", kL);
  auto s = testing::make_story("x", "Swamp cough near the swamp", "", "2007-11-11T00:00:00Z");
  auto got = t.tag(s);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].cls, kD);
  EXPECT_EQ(got[1].cls, kL);
}

}  // namespace
}  // namespace ghm
