#include <gtest/gtest.h>

#include <sstream>

#include "ghm/error.hpp"
#include "ghm/ontology.hpp"
#include "ghm/text.hpp"
#include "test_support.hpp"

namespace ghm {
namespace {

const Ontology& onto() { return *testing::bundled().ontology; }

Ontology load(const std::string& diseases, const std::string& geo) {
  std::istringstream d(diseases), g(geo);
  return Ontology::load(d, g);
}

constexpr const char* kTinyGeo =
    "G\tGB\tUnited Kingdom\tCountry\tGB\t54\t-2\n"
    "G\tGB-x\tCamden\tSubCountry\tGB\t51.5\t-0.1\n";

TEST(Ontology, BundledCounts) {
  EXPECT_EQ(onto().disease_count(), 50u);
  EXPECT_EQ(onto().country_count(), 243u);
  EXPECT_EQ(onto().sub_country_count(), 4025u);
}

TEST(Ontology, EverySynonymRoundTrips) {
  std::size_t checked = 0;
  for (const auto& [id, concept_] : onto().diseases()) {
    EXPECT_TRUE(concept_.synonyms.contains(concept_.root_name)) << id;
    for (const auto& syn : concept_.synonyms) {
      const auto* hit = onto().lookup_disease(syn);
      ASSERT_NE(hit, nullptr) << syn;
      EXPECT_EQ(hit->id, id) << syn;
      ++checked;
    }
  }
  EXPECT_GT(checked, 50u);
}

TEST(Ontology, LookupIsCaseAndSpaceInsensitive) {
  ASSERT_NE(onto().lookup_disease("  BIRD   flu "), nullptr);
  EXPECT_EQ(onto().lookup_disease("bird flu")->id, "avian-influenza");
  EXPECT_EQ(onto().lookup_disease("football"), nullptr);
  EXPECT_EQ(onto().lookup_disease(""), nullptr);
}

TEST(Ontology, AmbiguousPlaceNames) {
  auto camden = onto().lookup_location_candidates("Camden");
  ASSERT_EQ(camden.size(), 2u);
  EXPECT_EQ(camden[0]->id, "AU-camden");
  EXPECT_EQ(camden[1]->id, "GB-camden");
  auto wight = onto().lookup_location_candidates("isle of wight");
  ASSERT_EQ(wight.size(), 2u);
  EXPECT_EQ(wight[0]->parent_country_id, "GB");
  EXPECT_EQ(wight[1]->parent_country_id, "US");
  EXPECT_TRUE(onto().lookup_location_candidates("Atlantis").empty());
}

TEST(Ontology, EveryLocationHasKnownParentAndSaneCoordinates) {
  for (const auto& [id, loc] : onto().locations()) {
    const auto* parent = onto().find_location(loc.parent_country_id);
    ASSERT_NE(parent, nullptr) << id;
    EXPECT_EQ(parent->kind, LocationKind::Country) << id;
    EXPECT_LE(std::abs(loc.latitude), 90.0) << id;
    EXPECT_LE(std::abs(loc.longitude), 180.0) << id;
    EXPECT_EQ(loc.name, std::string(trim(loc.name))) << id;
  }
}

TEST(Ontology, DiseasesForSyndrome) {
  auto resp = onto().diseases_for_syndrome(Syndrome::Respiratory);
  EXPECT_TRUE(resp.contains("avian-influenza"));
  EXPECT_TRUE(resp.contains("anthrax"));
  EXPECT_FALSE(resp.contains("cholera"));
  std::size_t total = 0;
  for (auto s : kAllSyndromes) total += onto().diseases_for_syndrome(s).size();
  EXPECT_GE(total, onto().disease_count());
}

TEST(Syndrome, NamesRoundTrip) {
  for (auto s : kAllSyndromes) {
    EXPECT_EQ(parse_syndrome(to_string(s)), s);
    EXPECT_EQ(parse_syndrome(query_name(s)), s);
    EXPECT_FALSE(display_name(s).empty());
  }
  EXPECT_EQ(query_name(Syndrome::HemorrhagicFever), "hemorrhagic_fever");
  EXPECT_FALSE(parse_syndrome("itchy"));
}

TEST(OntologyLoad, RejectsSynonymClaimedTwice) {
  EXPECT_THROW(load("D\ta\tAlpha\tshared\tRespiratory\n"
                    "D\tb\tBeta\tSHARED\tRespiratory\n",
                    kTinyGeo),
               OntologyError);
}

TEST(OntologyLoad, RejectsUnknownSyndromeAndBadRecords) {
  EXPECT_THROW(load("D\ta\tAlpha\t\tItchy\n", kTinyGeo), OntologyError);
  EXPECT_THROW(load("X\ta\tAlpha\n", kTinyGeo), OntologyError);
  EXPECT_THROW(load("D\ta\tAlpha\n", "G\tGB\tUK\tCountry\tGB\t91\t0\n"), OntologyError);
  EXPECT_THROW(load("D\ta\tAlpha\n", "G\tGB\tUK\tCountry\tFR\t1\t0\n"), OntologyError);
  EXPECT_THROW(load("D\ta\tAlpha\n", "G\tGB-x\tX\tSubCountry\tZZ\t1\t0\n"), OntologyError);
  EXPECT_THROW(load("D\ta\tAlpha\nD\ta\tAgain\n", kTinyGeo), OntologyError);
}

TEST(OntologyLoad, SkipsCommentsAndBlankLines) {
  auto o = load("# header\n\nD\ta\tAlpha\tA1|a two\tRespiratory\tMeSH:D1\n", kTinyGeo);
  EXPECT_EQ(o.disease_count(), 1u);
  EXPECT_EQ(o.country_count(), 1u);
  EXPECT_EQ(o.sub_country_count(), 1u);
  EXPECT_EQ(o.lookup_disease("a two")->id, "a");
  ASSERT_EQ(o.find_disease("a")->external_refs.size(), 1u);
  EXPECT_EQ(o.find_disease("a")->external_refs[0].scheme, "MeSH");
}

TEST(OntologyLoad, MissingDirectoryThrows) {
  EXPECT_THROW(Ontology::load_directory("/nonexistent/ontology"), OntologyError);
}

}  // namespace
}  // namespace ghm
