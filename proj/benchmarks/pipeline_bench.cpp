#include <benchmark/benchmark.h>

#include <fstream>
#include <random>

#include "ghm/bundle.hpp"
#include "ghm/classifier.hpp"
#include "ghm/detector.hpp"
#include "ghm/eval.hpp"

namespace {

using namespace ghm;

const Bundle& bundle() {
  static const Bundle b = load_bundle(GHM_BENCH_DATA_DIR);
  return b;
}

const std::vector<LabeledDoc>& corpus() {
  static const auto docs = [] {
    std::ifstream in(std::string(GHM_BENCH_DATA_DIR) + "/corpus/synthetic_training.tsv");
    return read_labeled_corpus(in);
  }();
  return docs;
}

const ClassifierModel& model() {
  static const auto m = train(corpus(), GazetteerTagger(bundle().gazetteer));
  return m;
}

// Synthetic window: disease and place names drawn from the ontology.
std::vector<NewsStory> window(std::size_t n, Timestamp now) {
  std::mt19937_64 rng(42);
  std::vector<const DiseaseConcept*> diseases;
  for (const auto& [id, d] : bundle().ontology->diseases()) diseases.push_back(&d);
  std::vector<const GeoLocation*> places;
  for (const auto& [id, l] : bundle().ontology->locations()) places.push_back(&l);
  std::vector<NewsStory> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto* d = diseases[rng() % diseases.size()];
    const auto* p = places[rng() % places.size()];
    NewsStory s;
    s.source_id = "bench";
    s.url = "http://bench/" + std::to_string(i);
    s.headline = d->root_name + " outbreak reported in " + p->name;
    s.body = "Health officials confirmed new cases of " + d->root_name + " near " + p->name +
             " and said the ministry is monitoring the situation.";
    s.published_at = now - std::chrono::minutes(static_cast<long>(rng() % (24 * 60)) + 1);
    s.id = make_story_id(s.url, s.headline);
    out.push_back(std::move(s));
  }
  return out;
}

void BM_TagStory(benchmark::State& state) {
  auto stories = window(64, Timestamp{std::chrono::hours{24 * 365 * 38}});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tag_entities(stories[i++ % stories.size()], *bundle().gazetteer));
  }
}
BENCHMARK(BM_TagStory);

void BM_Predict(benchmark::State& state) {
  GazetteerTagger tagger(bundle().gazetteer);
  std::vector<FeatureVector> features;
  for (const auto& d : corpus()) features.push_back(extract_features(d.story, tagger.tag(d.story)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(model().predict(features[i++ % features.size()]));
}
BENCHMARK(BM_Predict);

void BM_Train(benchmark::State& state) {
  GazetteerTagger tagger(bundle().gazetteer);
  for (auto _ : state) benchmark::DoNotOptimize(train(corpus(), tagger));
}
BENCHMARK(BM_Train)->Unit(benchmark::kMillisecond);

void BM_DetectCycle(benchmark::State& state) {
  Timestamp now{std::chrono::hours{24 * 365 * 38}};
  auto stories = window(static_cast<std::size_t>(state.range(0)), now);
  GazetteerTagger tagger(bundle().gazetteer);
  for (auto _ : state) benchmark::DoNotOptimize(detect_events(stories, *bundle().ontology, model(), tagger, now));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetectCycle)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PairMetrics(benchmark::State& state) {
  std::vector<EvalPair> retrieved, gold;
  for (int i = 0; i < 950; ++i) retrieved.push_back({"d" + std::to_string(i % 50), "L" + std::to_string(i)});
  for (int i = 63; i < 950; ++i) gold.push_back({"d" + std::to_string(i % 50), "L" + std::to_string(i)});
  for (auto _ : state) benchmark::DoNotOptimize(pair_precision_recall(retrieved, gold));
}
BENCHMARK(BM_PairMetrics);

}  // namespace

BENCHMARK_MAIN();
