#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ghm/feed.hpp"
#include "ghm/tagger.hpp"

namespace ghm {

/// Binary relevance label. The numeric value is the class index in the model.
enum class Relevance : std::size_t { Irrelevant = 0, Relevant = 1 };

std::string_view to_string(Relevance r);  // "irrelevant" / "relevant"
std::optional<Relevance> parse_relevance(std::string_view text);

/// Multiset of features: lowercased words of headline and body, plus one
/// "<CLASS>:<normalized surface>" feature per entity mention.
struct FeatureVector {
  std::map<std::string, std::uint32_t> counts;

  std::size_t total() const;
  bool empty() const { return counts.empty(); }
  void add(std::string feature, std::uint32_t n = 1);

  bool operator==(const FeatureVector&) const = default;
};

/// Throws ArgumentError if an entity span falls outside story.text().
FeatureVector extract_features(const NewsStory& story, std::span<const AnnotatedEntity> entities);

struct LabeledDoc {
  NewsStory story;
  Relevance label = Relevance::Irrelevant;
};

/// Corpus file: `label<TAB>headline<TAB>body`, with tabs/newlines escaped.
std::vector<LabeledDoc> read_labeled_corpus(std::istream& in);

struct Prediction {
  Relevance label = Relevance::Irrelevant;
  /// log P(class | features), indexed by Relevance.
  std::array<double, 2> log_posterior{};
};

/// Multinomial naive Bayes with add-one smoothing over the training vocabulary.
/// Immutable after training; predict() is safe to call concurrently.
class ClassifierModel {
 public:
  static constexpr int kFormatVersion = 1;

  /// Unknown features are ignored. Ties go to Irrelevant.
  Prediction predict(const FeatureVector& features) const;

  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  double log_prior(Relevance r) const { return log_prior_[idx(r)]; }
  /// Log likelihood of a vocabulary feature; nothing for unknown features.
  std::optional<double> log_likelihood(Relevance r, std::string_view feature) const;
  const std::vector<double>& log_likelihoods(Relevance r) const { return log_likelihood_[idx(r)]; }

  /// Versioned JSON document; write -> read -> write is byte-identical.
  std::string to_json() const;
  static ClassifierModel from_json(std::string_view document);

  /// Builds a model from explicit parameters (tests, imports). Vocabulary must
  /// be unique; likelihood vectors must match its size.
  static ClassifierModel from_parameters(std::vector<std::string> vocabulary, std::array<double, 2> log_prior,
                                         std::array<std::vector<double>, 2> log_likelihood);

  bool operator==(const ClassifierModel& other) const;

 private:
  static constexpr std::size_t idx(Relevance r) { return static_cast<std::size_t>(r); }
  void rebuild_index();

  std::vector<std::string> vocabulary_;  // sorted
  std::unordered_map<std::string, std::size_t> index_;
  std::array<double, 2> log_prior_{};
  std::array<std::vector<double>, 2> log_likelihood_;
};

/// Trains on pre-extracted feature vectors. Identical (label, features)
/// documents are counted with their multiplicity reduced by the greatest
/// common multiplicity, so replicating a whole corpus k times yields the same
/// model. Throws TrainingError unless both classes are present.
ClassifierModel train_features(std::span<const std::pair<FeatureVector, Relevance>> docs);

/// Tags every document with `tagger`, extracts features and trains.
ClassifierModel train(std::span<const LabeledDoc> corpus, const EntityTagger& tagger);

inline Prediction predict(const ClassifierModel& model, const FeatureVector& features) {
  return model.predict(features);
}

struct CrossValidationReport {
  std::size_t folds = 0;
  std::size_t correct = 0;
  std::size_t total = 0;
  std::vector<Relevance> predictions;  // aligned with the corpus
};

/// Document i is held out in fold i % folds. Throws TrainingError if a
/// training split lacks a class.
CrossValidationReport cross_validate(std::span<const LabeledDoc> corpus, const EntityTagger& tagger,
                                     std::size_t folds = 5);

}  // namespace ghm
