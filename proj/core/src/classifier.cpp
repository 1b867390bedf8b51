#include "ghm/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "ghm/error.hpp"
#include "ghm/text.hpp"

namespace ghm {
namespace {

using nlohmann::json;

double log_sum_exp(double a, double b) {
  auto hi = std::max(a, b);
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

}  // namespace

std::string_view to_string(Relevance r) { return r == Relevance::Relevant ? "relevant" : "irrelevant"; }

std::optional<Relevance> parse_relevance(std::string_view text) {
  auto lowered = to_lower_ascii(trim(text));
  if (lowered == "relevant") return Relevance::Relevant;
  if (lowered == "irrelevant") return Relevance::Irrelevant;
  return std::nullopt;
}

std::size_t FeatureVector::total() const {
  std::size_t n = 0;
  for (const auto& [f, c] : counts) n += c;
  return n;
}

void FeatureVector::add(std::string feature, std::uint32_t n) { counts[std::move(feature)] += n; }

FeatureVector extract_features(const NewsStory& story, std::span<const AnnotatedEntity> entities) {
  auto text = story.text();
  FeatureVector fv;
  for (auto& token : word_tokens(text)) fv.add(std::move(token));
  for (const auto& e : entities) {
    if (e.start >= e.end || e.end > text.size()) {
      throw ArgumentError(fmt::format("entity span [{}, {}) outside story '{}' of length {}", e.start, e.end,
                                      story.id, text.size()));
    }
    fv.add(fmt::format("{}:{}", to_string(e.cls), normalize_term(std::string_view(text).substr(e.start, e.end - e.start))));
  }
  return fv;
}

std::vector<LabeledDoc> read_labeled_corpus(std::istream& in) {
  std::vector<LabeledDoc> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() < 2 || f.size() > 3) {
      throw FormatError(fmt::format("corpus line {}: expected label, headline and body", line_no));
    }
    auto label = parse_relevance(f[0]);
    if (!label) throw FormatError(fmt::format("corpus line {}: unknown label '{}'", line_no, f[0]));
    LabeledDoc doc;
    doc.label = *label;
    doc.story.headline = unescape_field(f[1]);
    doc.story.body = f.size() == 3 ? unescape_field(f[2]) : std::string();
    if (trim(doc.story.headline).empty()) throw FormatError(fmt::format("corpus line {}: empty headline", line_no));
    doc.story.url = fmt::format("corpus:{}", line_no);
    doc.story.id = make_story_id(doc.story.url, doc.story.headline);
    out.push_back(std::move(doc));
  }
  return out;
}

Prediction ClassifierModel::predict(const FeatureVector& features) const {
  std::array<double, 2> joint = log_prior_;
  for (const auto& [feature, count] : features.counts) {
    auto it = index_.find(feature);
    if (it == index_.end()) continue;
    for (std::size_t c = 0; c < 2; ++c) joint[c] += count * log_likelihood_[c][it->second];
  }
  Prediction p;
  auto norm = log_sum_exp(joint[0], joint[1]);
  p.log_posterior = {joint[0] - norm, joint[1] - norm};
  p.label = joint[idx(Relevance::Relevant)] > joint[idx(Relevance::Irrelevant)] ? Relevance::Relevant
                                                                                : Relevance::Irrelevant;
  return p;
}

std::optional<double> ClassifierModel::log_likelihood(Relevance r, std::string_view feature) const {
  auto it = index_.find(std::string(feature));
  if (it == index_.end()) return std::nullopt;
  return log_likelihood_[idx(r)][it->second];
}

std::string ClassifierModel::to_json() const {
  json likelihood = json::object();
  for (auto r : {Relevance::Irrelevant, Relevance::Relevant}) {
    likelihood[std::string(to_string(r))] = log_likelihood_[idx(r)];
  }
  json doc = {
      {"format", "ghm-naive-bayes"},
      {"version", kFormatVersion},
      {"smoothing", "add-one"},
      {"classes", {"irrelevant", "relevant"}},
      {"log_prior", {{"irrelevant", log_prior_[0]}, {"relevant", log_prior_[1]}}},
      {"vocabulary", vocabulary_},
      {"log_likelihood", likelihood},
  };
  return doc.dump(1);
}

ClassifierModel ClassifierModel::from_json(std::string_view document) {
  try {
    auto doc = json::parse(document);
    if (doc.at("format") != "ghm-naive-bayes") throw FormatError("not a ghm-naive-bayes model document");
    if (doc.at("version") != kFormatVersion) {
      throw FormatError(fmt::format("unsupported model version {}", doc.at("version").dump()));
    }
    std::array<double, 2> prior{doc.at("log_prior").at("irrelevant").get<double>(),
                                doc.at("log_prior").at("relevant").get<double>()};
    std::array<std::vector<double>, 2> lik{doc.at("log_likelihood").at("irrelevant").get<std::vector<double>>(),
                                           doc.at("log_likelihood").at("relevant").get<std::vector<double>>()};
    return from_parameters(doc.at("vocabulary").get<std::vector<std::string>>(), prior, std::move(lik));
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("model document: {}", e.what()));
  } catch (const ArgumentError& e) {
    throw FormatError(fmt::format("model document: {}", e.what()));
  }
}

ClassifierModel ClassifierModel::from_parameters(std::vector<std::string> vocabulary, std::array<double, 2> log_prior,
                                                 std::array<std::vector<double>, 2> log_likelihood) {
  for (const auto& v : log_likelihood) {
    if (v.size() != vocabulary.size()) throw ArgumentError("likelihood vector does not match vocabulary size");
  }
  // Keep the vocabulary sorted, permuting likelihoods alongside.
  std::vector<std::size_t> order(vocabulary.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vocabulary[a] < vocabulary[b]; });

  ClassifierModel m;
  m.log_prior_ = log_prior;
  for (auto i : order) m.vocabulary_.push_back(vocabulary[i]);
  for (std::size_t c = 0; c < 2; ++c) {
    for (auto i : order) m.log_likelihood_[c].push_back(log_likelihood[c][i]);
  }
  if (std::adjacent_find(m.vocabulary_.begin(), m.vocabulary_.end()) != m.vocabulary_.end()) {
    throw ArgumentError("duplicate vocabulary entry");
  }
  m.rebuild_index();
  return m;
}

bool ClassifierModel::operator==(const ClassifierModel& other) const {
  return vocabulary_ == other.vocabulary_ && log_prior_ == other.log_prior_ &&
         log_likelihood_ == other.log_likelihood_;
}

void ClassifierModel::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) index_.emplace(vocabulary_[i], i);
}

ClassifierModel train_features(std::span<const std::pair<FeatureVector, Relevance>> docs) {
  // Collapse identical documents into multiplicities.
  std::map<std::pair<Relevance, std::map<std::string, std::uint32_t>>, std::uint64_t> multiplicity;
  for (const auto& [fv, label] : docs) ++multiplicity[{label, fv.counts}];
  std::uint64_t common = 0;
  for (const auto& [doc, n] : multiplicity) common = std::gcd(common, n);

  std::array<std::uint64_t, 2> doc_count{};
  std::array<std::uint64_t, 2> token_total{};
  std::map<std::string, std::array<std::uint64_t, 2>> feature_count;
  for (const auto& [doc, n] : multiplicity) {
    auto weight = n / common;
    auto c = static_cast<std::size_t>(doc.first);
    doc_count[c] += weight;
    for (const auto& [feature, count] : doc.second) {
      feature_count[feature][c] += weight * count;
      token_total[c] += weight * count;
    }
  }
  if (doc_count[0] == 0 || doc_count[1] == 0) {
    throw TrainingError("training corpus must contain both relevant and irrelevant documents");
  }

  auto total_docs = static_cast<double>(doc_count[0] + doc_count[1]);
  auto vocab_size = static_cast<double>(feature_count.size());
  std::vector<std::string> vocabulary;
  std::array<std::vector<double>, 2> lik;
  for (const auto& [feature, counts] : feature_count) {
    vocabulary.push_back(feature);
    for (std::size_t c = 0; c < 2; ++c) {
      lik[c].push_back(std::log((static_cast<double>(counts[c]) + 1.0) /
                                (static_cast<double>(token_total[c]) + vocab_size)));
    }
  }
  std::array<double, 2> prior{std::log(static_cast<double>(doc_count[0]) / total_docs),
                              std::log(static_cast<double>(doc_count[1]) / total_docs)};
  return ClassifierModel::from_parameters(std::move(vocabulary), prior, std::move(lik));
}

ClassifierModel train(std::span<const LabeledDoc> corpus, const EntityTagger& tagger) {
  std::vector<std::pair<FeatureVector, Relevance>> docs;
  docs.reserve(corpus.size());
  for (const auto& doc : corpus) docs.emplace_back(extract_features(doc.story, tagger.tag(doc.story)), doc.label);
  return train_features(docs);
}

CrossValidationReport cross_validate(std::span<const LabeledDoc> corpus, const EntityTagger& tagger,
                                     std::size_t folds) {
  if (folds < 2 || folds > corpus.size()) {
    throw ArgumentError(fmt::format("cannot run {}-fold cross-validation on {} documents", folds, corpus.size()));
  }
  std::vector<FeatureVector> features;
  features.reserve(corpus.size());
  for (const auto& doc : corpus) features.push_back(extract_features(doc.story, tagger.tag(doc.story)));

  CrossValidationReport report;
  report.folds = folds;
  report.total = corpus.size();
  report.predictions.resize(corpus.size());
  for (std::size_t fold = 0; fold < folds; ++fold) {
    std::vector<std::pair<FeatureVector, Relevance>> training;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (i % folds != fold) training.emplace_back(features[i], corpus[i].label);
    }
    auto model = train_features(training);
    for (std::size_t i = fold; i < corpus.size(); i += folds) {
      report.predictions[i] = model.predict(features[i]).label;
      if (report.predictions[i] == corpus[i].label) ++report.correct;
    }
  }
  return report;
}

}  // namespace ghm
