#include "ghm/eval.hpp"

#include <algorithm>
#include <istream>

#include <fmt/format.h>
#include <json.hpp>

#include "ghm/error.hpp"
#include "ghm/text.hpp"

namespace ghm {
namespace {

std::string render_scaled(std::int64_t num, std::int64_t den, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  // Half-up: floor(num * scale / den + 1/2).
  auto q = (2 * num * scale + den) / (2 * den);
  if (places == 0) return fmt::format("{}", q);
  return fmt::format("{}.{:0{}}", q / scale, q % scale, places);
}

Ratio ratio_or(std::size_t num, std::size_t den, std::int64_t if_empty) {
  if (den == 0) return {if_empty, 1};
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

}  // namespace

std::string Ratio::render(int places) const { return render_scaled(num, den, places); }

std::string Ratio::percent(int places) const { return render_scaled(num * 100, den, places); }

Ratio make_ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw ArgumentError(fmt::format("invalid ratio {}/{}", num, den));
  return {num, den};
}

Ratio MetricReport::f1() const {
  return ratio_or(2 * intersection, retrieved + relevant, retrieved == 0 && relevant == 0 ? 1 : 0);
}

MetricReport pair_precision_recall(std::span<const EvalPair> retrieved, std::span<const EvalPair> relevant) {
  std::set<EvalPair> r(retrieved.begin(), retrieved.end());
  std::set<EvalPair> g(relevant.begin(), relevant.end());
  std::size_t both = 0;
  for (const auto& p : r) both += g.contains(p) ? 1 : 0;

  MetricReport m;
  m.retrieved = r.size();
  m.relevant = g.size();
  m.intersection = both;
  m.precision = ratio_or(both, r.size(), g.empty() ? 1 : 0);
  m.recall = ratio_or(both, g.size(), r.empty() ? 1 : 0);
  return m;
}

Ratio classification_accuracy(std::span<const Relevance> predictions, std::span<const Relevance> gold) {
  if (predictions.size() != gold.size()) {
    throw ArgumentError(fmt::format("{} predictions for {} gold labels", predictions.size(), gold.size()));
  }
  if (gold.empty()) throw ArgumentError("accuracy of an empty label list");
  std::int64_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += predictions[i] == gold[i] ? 1 : 0;
  return {hits, static_cast<std::int64_t>(gold.size())};
}

Ratio NerScore::precision() const { return ratio_or(matched, predicted, gold == 0 ? 1 : 0); }
Ratio NerScore::recall() const { return ratio_or(matched, gold, predicted == 0 ? 1 : 0); }
Ratio NerScore::f1() const { return ratio_or(2 * matched, gold + predicted, 1); }

NerReport ner_f_score(std::span<const AnnotationRecord> predicted, std::span<const AnnotationRecord> gold,
                      const std::set<std::string>& story_ids) {
  std::set<std::string> known = story_ids;
  if (known.empty()) {
    for (const auto& g : gold) known.insert(g.story_id);
  }
  for (const auto& p : predicted) {
    if (!known.contains(p.story_id)) {
      throw ArgumentError(fmt::format("predicted annotation for unknown story '{}'", p.story_id));
    }
  }

  // Surfaces are not part of the match key: span and class decide.
  using Key = std::tuple<std::string, std::size_t, std::size_t, EntityClass>;
  auto keys = [](std::span<const AnnotationRecord> recs) {
    std::set<Key> out;
    for (const auto& r : recs) out.emplace(r.story_id, r.entity.start, r.entity.end, r.entity.cls);
    return out;
  };
  auto gold_keys = keys(gold);
  auto pred_keys = keys(predicted);

  NerReport report;
  for (const auto& k : gold_keys) ++report.per_class[std::get<3>(k)].gold;
  for (const auto& k : pred_keys) {
    auto& s = report.per_class[std::get<3>(k)];
    ++s.predicted;
    if (gold_keys.contains(k)) ++s.matched;
  }
  for (const auto& [cls, s] : report.per_class) {
    report.micro.gold += s.gold;
    report.micro.predicted += s.predicted;
    report.micro.matched += s.matched;
  }
  return report;
}

std::map<std::string, std::set<EvalPair>> read_gold_pairs(std::istream& in) {
  std::map<std::string, std::set<EvalPair>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 3 || trim(f[0]).empty() || trim(f[1]).empty() || trim(f[2]).empty()) {
      throw FormatError(fmt::format("gold pairs line {}: expected window_id, disease and location_id", line_no));
    }
    out[std::string(trim(f[0]))].insert({std::string(trim(f[1])), std::string(trim(f[2]))});
  }
  return out;
}

ReportRow pair_report_row(std::string label, const MetricReport& m) {
  return {std::move(label), m.retrieved, m.relevant, m.intersection, m.precision, m.recall, m.f1(),
          "recall is window-relative: pairs lost before detection are not counted"};
}

ReportRow ner_report_row(std::string label, const NerScore& s) {
  return {std::move(label), s.predicted, s.gold, s.matched, s.precision(), s.recall(), s.f1(), {}};
}

std::vector<ReportRow> ner_report_rows(const NerReport& report) {
  std::vector<ReportRow> rows;
  for (const auto& [cls, s] : report.per_class) rows.push_back(ner_report_row(std::string(to_string(cls)), s));
  rows.push_back(ner_report_row("micro", report.micro));
  return rows;
}

std::string report_to_json(std::string_view title, std::span<const ReportRow> rows) {
  using nlohmann::json;
  auto ratio = [](const Ratio& r) {
    return json{{"num", r.num}, {"den", r.den}, {"value", r.render(4)}};
  };
  json doc = {{"title", title}, {"rows", json::array()}};
  for (const auto& r : rows) {
    json row = {{"label", r.label},         {"retrieved", r.retrieved},   {"relevant", r.relevant},
                {"matched", r.matched},     {"precision", ratio(r.precision)}, {"recall", ratio(r.recall)},
                {"f1", ratio(r.f1)}};
    if (!r.note.empty()) row["note"] = r.note;
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2);
}

std::string report_to_table(std::string_view title, std::span<const ReportRow> rows) {
  std::size_t label_w = 5;
  for (const auto& r : rows) label_w = std::max(label_w, r.label.size());
  std::string out = fmt::format("{}\n", title);
  out += fmt::format("{:<{}}  {:>9}  {:>8}  {:>7}  {:>9}  {:>6}  {:>6}\n", "label", label_w, "retrieved", "relevant",
                     "matched", "precision", "recall", "f1");
  std::vector<std::string> notes;
  for (const auto& r : rows) {
    out += fmt::format("{:<{}}  {:>9}  {:>8}  {:>7}  {:>9}  {:>6}  {:>6}\n", r.label, label_w, r.retrieved,
                       r.relevant, r.matched, r.precision.render(4), r.recall.render(4), r.f1.render(4));
    if (!r.note.empty() && std::find(notes.begin(), notes.end(), r.note) == notes.end()) notes.push_back(r.note);
  }
  for (const auto& n : notes) out += fmt::format("note: {}\n", n);
  return out;
}

}  // namespace ghm
