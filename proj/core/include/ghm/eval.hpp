#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ghm/classifier.hpp"
#include "ghm/tagger.hpp"

namespace ghm {

/// Exact non-negative fraction. Kept unreduced so the counts stay visible.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// Decimal rendering rounded half-up, e.g. 887/950 -> "0.9337".
  std::string render(int places = 4) const;
  /// Percentage rounded half-up, e.g. 887/950 -> "93.4".
  std::string percent(int places = 1) const;

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
};

/// Throws ArgumentError when den is not positive or num is negative.
Ratio make_ratio(std::int64_t num, std::int64_t den);

/// A scored (disease, location) pair: disease id (or surface when ungrounded)
/// and location id.
struct EvalPair {
  std::string disease;
  std::string location_id;

  auto operator<=>(const EvalPair&) const = default;
};

struct MetricReport {
  Ratio precision;
  Ratio recall;
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
  std::size_t intersection = 0;

  Ratio f1() const;
};

/// Set-based: duplicates on either side count once. An empty retrieved set
/// has precision 1 when the gold set is empty too and 0 otherwise; recall
/// follows the same convention with the roles swapped.
MetricReport pair_precision_recall(std::span<const EvalPair> retrieved, std::span<const EvalPair> relevant);

/// matches / total. Throws ArgumentError on empty input or length mismatch.
Ratio classification_accuracy(std::span<const Relevance> predictions, std::span<const Relevance> gold);

struct NerScore {
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::size_t matched = 0;

  Ratio precision() const;
  Ratio recall() const;
  /// 2·matched / (gold + predicted).
  Ratio f1() const;
};

struct NerReport {
  /// Only classes with at least one gold or predicted entity.
  std::map<EntityClass, NerScore> per_class;
  NerScore micro;
};

/// Exact span and exact class matching. Predicted records must reference
/// stories present in `story_ids`, or in the gold dump when `story_ids` is
/// empty; otherwise ArgumentError.
NerReport ner_f_score(std::span<const AnnotationRecord> predicted, std::span<const AnnotationRecord> gold,
                      const std::set<std::string>& story_ids = {});

/// Gold pair file: `window_id<TAB>disease<TAB>location_id`. Throws FormatError
/// naming the line on malformed records.
std::map<std::string, std::set<EvalPair>> read_gold_pairs(std::istream& in);

struct ReportRow {
  std::string label;
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
  std::size_t matched = 0;
  Ratio precision;
  Ratio recall;
  Ratio f1;
  std::string note;
};

ReportRow pair_report_row(std::string label, const MetricReport& m);
ReportRow ner_report_row(std::string label, const NerScore& s);
std::vector<ReportRow> ner_report_rows(const NerReport& report);

/// Structured form of a report: title plus one object per row with counts,
/// exact fractions and rendered values.
std::string report_to_json(std::string_view title, std::span<const ReportRow> rows);
/// Column-aligned plain-text table.
std::string report_to_table(std::string_view title, std::span<const ReportRow> rows);

}  // namespace ghm
