#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "ghm/classifier.hpp"
#include "ghm/error.hpp"
#include "test_support.hpp"

namespace ghm {
namespace {

constexpr auto kRel = Relevance::Relevant;
constexpr auto kIrr = Relevance::Irrelevant;

LabeledDoc doc(const std::string& headline, Relevance label, const std::string& body = "") {
  LabeledDoc d;
  d.story.headline = headline;
  d.story.body = body;
  d.story.url = "t:" + headline;
  d.story.id = make_story_id(d.story.url, headline);
  d.label = label;
  return d;
}

std::vector<LabeledDoc> corpus60() {
  std::ifstream in(testing::data_dir() / "corpus" / "synthetic_training.tsv");
  return read_labeled_corpus(in);
}

FeatureVector words(std::initializer_list<const char*> ws) {
  FeatureVector fv;
  for (auto w : ws) fv.add(w);
  return fv;
}

const testing::DictionaryTagger kNoEntities;

TEST(Relevance, NamesRoundTrip) {
  EXPECT_EQ(parse_relevance(to_string(kRel)), kRel);
  EXPECT_EQ(parse_relevance(to_string(kIrr)), kIrr);
  EXPECT_FALSE(parse_relevance("maybe"));
}

TEST(Features, WordsPlusEntityFeatures) {
  NewsStory s;
  s.headline = "Cholera in Lima";
  s.body = "cholera again";
  std::vector<AnnotatedEntity> ents{{0, 7, "Cholera", EntityClass::Disease}, {11, 15, "Lima", EntityClass::Location}};
  auto fv = extract_features(s, ents);
  EXPECT_EQ(fv.counts.at("cholera"), 2u);
  EXPECT_EQ(fv.counts.at("DISEASE:cholera"), 1u);
  EXPECT_EQ(fv.counts.at("LOCATION:lima"), 1u);
  EXPECT_EQ(fv.total(), 7u);
}

TEST(Features, SpanOutsideTextThrows) {
  NewsStory s;
  s.headline = "short";
  std::vector<AnnotatedEntity> ents{{2, 40, "x", EntityClass::Disease}};
  EXPECT_THROW(extract_features(s, ents), ArgumentError);
}

TEST(Train, TwoDocumentParametersMatchHandComputation) {
  std::vector<LabeledDoc> corpus{doc("outbreak", kRel), doc("football", kIrr)};
  auto m = train(corpus, kNoEntities);
  EXPECT_EQ(m.vocabulary(), (std::vector<std::string>{"football", "outbreak"}));
  EXPECT_DOUBLE_EQ(m.log_prior(kRel), std::log(0.5));
  EXPECT_DOUBLE_EQ(*m.log_likelihood(kRel, "outbreak"), std::log(2.0 / 3.0));
  EXPECT_DOUBLE_EQ(*m.log_likelihood(kRel, "football"), std::log(1.0 / 3.0));
  EXPECT_DOUBLE_EQ(*m.log_likelihood(kIrr, "football"), std::log(2.0 / 3.0));
  EXPECT_FALSE(m.log_likelihood(kRel, "rugby"));
}

TEST(Train, SeparableCorpusIsClassifiedPerfectly) {
  std::vector<LabeledDoc> corpus{doc("outbreak", kRel), doc("football", kIrr)};
  auto m = train(corpus, kNoEntities);
  for (const auto& d : corpus) {
    auto fv = extract_features(d.story, {});
    EXPECT_EQ(predict(m, fv).label, d.label) << d.story.headline;
  }
  auto p = m.predict(words({"outbreak"}));
  EXPECT_NEAR(std::exp(p.log_posterior[0]) + std::exp(p.log_posterior[1]), 1.0, 1e-12);
}

TEST(Train, UnknownFeaturesAndTiesFallToIrrelevant) {
  std::vector<LabeledDoc> corpus{doc("outbreak", kRel), doc("football", kIrr)};
  auto m = train(corpus, kNoEntities);
  EXPECT_EQ(m.predict(words({"rugby"})).label, kIrr);
  EXPECT_EQ(m.predict(words({"outbreak", "football"})).label, kIrr);
  EXPECT_EQ(m.predict(words({"outbreak", "outbreak", "football"})).label, kRel);
}

TEST(Train, SingleClassCorpusThrows) {
  std::vector<LabeledDoc> corpus{doc("outbreak", kRel), doc("cases", kRel)};
  EXPECT_THROW(train(corpus, kNoEntities), TrainingError);
  EXPECT_THROW(train(std::vector<LabeledDoc>{}, kNoEntities), TrainingError);
}

TEST(Train, ArgmaxInvariantUnderCorpusDuplication) {
  GazetteerTagger gt(testing::bundled().gazetteer);
  auto base = corpus60();
  auto model = train(base, gt);
  for (std::size_t k : {2u, 3u, 7u}) {
    std::vector<LabeledDoc> dup;
    for (std::size_t i = 0; i < k; ++i) dup.insert(dup.end(), base.begin(), base.end());
    auto dup_model = train(dup, gt);
    EXPECT_TRUE(dup_model == model) << k;
    for (const auto& d : base) {
      auto fv = extract_features(d.story, gt.tag(d.story));
      EXPECT_EQ(dup_model.predict(fv).label, model.predict(fv).label);
    }
  }
}

TEST(Train, PartialDuplicationStillCounts) {
  std::vector<LabeledDoc> corpus{doc("outbreak", kRel), doc("football", kIrr), doc("football", kIrr)};
  auto m = train(corpus, kNoEntities);
  EXPECT_DOUBLE_EQ(m.log_prior(kIrr), std::log(2.0 / 3.0));
}

TEST(CrossValidation, FrozenAccuracyOnTrainingCorpus) {
  GazetteerTagger gt(testing::bundled().gazetteer);
  auto corpus = corpus60();
  ASSERT_EQ(corpus.size(), 60u);
  auto report = cross_validate(corpus, gt, 5);
  EXPECT_EQ(report.folds, 5u);
  EXPECT_EQ(report.total, 60u);
  EXPECT_EQ(report.correct, 59u);
  ASSERT_EQ(report.predictions.size(), 60u);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < 60; ++i) agree += report.predictions[i] == corpus[i].label;
  EXPECT_EQ(agree, report.correct);
}

TEST(CrossValidation, FoldWithoutBothClassesThrows) {
  std::vector<LabeledDoc> corpus{doc("a", kRel), doc("b", kIrr), doc("c", kRel), doc("d", kIrr)};
  EXPECT_THROW(cross_validate(corpus, kNoEntities, 2), TrainingError);
}

TEST(ModelJson, RoundTripIsByteIdentical) {
  GazetteerTagger gt(testing::bundled().gazetteer);
  auto m = train(corpus60(), gt);
  auto json = m.to_json();
  auto back = ClassifierModel::from_json(json);
  EXPECT_TRUE(back == m);
  EXPECT_EQ(back.to_json(), json);
}

TEST(ModelJson, RejectsBadDocuments) {
  EXPECT_THROW(ClassifierModel::from_json("{"), FormatError);
  EXPECT_THROW(ClassifierModel::from_json(R"({"format_version": 99})"), FormatError);
}

TEST(ModelParameters, ValidatesShape) {
  EXPECT_THROW(ClassifierModel::from_parameters({"a", "a"}, {-1, -1}, {std::vector<double>{-1, -1}, {-1, -1}}),
               ArgumentError);
  EXPECT_THROW(ClassifierModel::from_parameters({"a"}, {-1, -1}, {std::vector<double>{-1, -1}, {-1}}),
               ArgumentError);
}

TEST(Corpus, ReadsEscapedFieldsAndRejectsBadLabels) {
  std::istringstream in("# c\nrelevant\tCholera\\tcases\tbody\\nline\nirrelevant\tFootball\n");
  auto docs = read_labeled_corpus(in);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].story.headline, "Cholera\tcases");
  EXPECT_EQ(docs[0].story.body, "body\nline");
  EXPECT_EQ(docs[1].label, kIrr);
  std::istringstream bad("spam\tx\n");
  EXPECT_THROW(read_labeled_corpus(bad), FormatError);
}

TEST(Corpus, TrainingCorpusIsBalanced) {
  auto corpus = corpus60();
  std::size_t rel = 0;
  for (const auto& d : corpus) rel += d.label == kRel;
  EXPECT_EQ(rel, 30u);
}

}  // namespace
}  // namespace ghm
