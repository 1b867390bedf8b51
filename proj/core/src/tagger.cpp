#include "ghm/tagger.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "ghm/error.hpp"
#include "ghm/ontology.hpp"
#include "ghm/text.hpp"

namespace ghm {

std::string_view to_string(EntityClass c) {
  switch (c) {
    case EntityClass::Person: return "PERSON";
    case EntityClass::Organization: return "ORGANIZATION";
    case EntityClass::Disease: return "DISEASE";
    case EntityClass::Location: return "LOCATION";
  }
  return "?";
}

std::optional<EntityClass> parse_entity_class(std::string_view text) {
  for (auto c : kEntityPrecedence) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

Gazetteer Gazetteer::build(const Ontology& ontology, std::span<const std::string> persons,
                           std::span<const std::string> organizations) {
  Gazetteer g;
  for (const auto& [surface, disease_id] : ontology.disease_synonym_index()) {
    g.add(EntityClass::Disease, surface, disease_id);
  }
  for (const auto& [surface, ids] : ontology.location_name_index()) {
    for (const auto& id : ids) g.add(EntityClass::Location, surface, id);
  }
  for (const auto& p : persons) g.add(EntityClass::Person, normalize_term(p), p);
  for (const auto& o : organizations) g.add(EntityClass::Organization, normalize_term(o), o);

  // Hint lists are sorted so the result does not depend on input order.
  for (auto& entries : g.entries_) {
    for (auto& [surface, hints] : entries) {
      std::sort(hints.begin(), hints.end());
      hints.erase(std::unique(hints.begin(), hints.end()), hints.end());
    }
  }
  return g;
}

void Gazetteer::add(EntityClass c, const std::string& normalized, std::string hint) {
  auto words = word_spans(normalized);
  if (words.empty()) return;
  entries_[index(c)][normalized].push_back(std::move(hint));
  max_words_ = std::max(max_words_, words.size());
  for (const auto& w : words) prefixes_.insert(normalize_term(std::string_view(normalized).substr(0, w.end)));
}

std::size_t Gazetteer::entry_count(EntityClass c) const {
  std::size_t n = 0;
  for (const auto& [surface, hints] : entries(c)) n += hints.size();
  return n;
}

std::vector<AnnotatedEntity> tag_text(std::string_view text, const Gazetteer& gazetteer) {
  std::vector<AnnotatedEntity> out;
  auto words = word_spans(text);
  std::size_t i = 0;
  while (i < words.size()) {
    std::optional<std::size_t> best_last;
    EntityClass best_class = EntityClass::Person;
    auto limit = std::min(words.size(), i + gazetteer.max_words());
    for (std::size_t j = i; j < limit; ++j) {
      auto key = normalize_term(text.substr(words[i].begin, words[j].end - words[i].begin));
      if (!gazetteer.is_prefix(key)) break;
      for (auto c : kEntityPrecedence) {
        if (gazetteer.entries(c).contains(key)) {
          // Later j is strictly longer; within one j the first class in precedence wins.
          best_last = j;
          best_class = c;
          break;
        }
      }
    }
    if (!best_last) {
      ++i;
      continue;
    }
    auto start = words[i].begin;
    auto end = words[*best_last].end;
    out.push_back({start, end, std::string(text.substr(start, end - start)), best_class});
    i = *best_last + 1;
  }
  return out;
}

std::vector<std::string> read_entry_list(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

void write_annotation_dump(std::ostream& out, std::string_view story_id, std::span<const AnnotatedEntity> entities) {
  for (const auto& e : entities) {
    out << story_id << '\t' << e.start << '\t' << e.end << '\t' << to_string(e.cls) << '\t' << escape_field(e.surface)
        << '\n';
  }
}

std::vector<AnnotationRecord> read_annotation_dump(std::istream& in) {
  auto parse_offset = [](std::string_view field, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      throw FormatError(fmt::format("annotation dump line {}: bad offset '{}'", line_no, field));
    }
    return value;
  };

  std::vector<AnnotationRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 5) {
      throw FormatError(fmt::format("annotation dump line {}: expected 5 fields, got {}", line_no, f.size()));
    }
    auto cls = parse_entity_class(f[3]);
    if (!cls) throw FormatError(fmt::format("annotation dump line {}: unknown class '{}'", line_no, f[3]));
    AnnotationRecord rec;
    rec.story_id = std::string(f[0]);
    rec.entity.start = parse_offset(f[1], line_no);
    rec.entity.end = parse_offset(f[2], line_no);
    rec.entity.cls = *cls;
    rec.entity.surface = unescape_field(f[4]);
    if (rec.entity.end <= rec.entity.start) {
      throw FormatError(fmt::format("annotation dump line {}: empty or inverted span", line_no));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace ghm
