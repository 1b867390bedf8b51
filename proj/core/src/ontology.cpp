#include "ghm/ontology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include <fmt/format.h>

#include "ghm/error.hpp"
#include "ghm/text.hpp"

namespace ghm {
namespace {

struct SyndromeName {
  Syndrome value;
  std::string_view record;
  std::string_view display;
  std::string_view snake;
};

constexpr std::array<SyndromeName, 6> kSyndromeNames{{
    {Syndrome::Dermatological, "Dermatological", "Dermatological", "dermatological"},
    {Syndrome::Gastrointestinal, "Gastrointestinal", "Gastrointestinal", "gastrointestinal"},
    {Syndrome::HemorrhagicFever, "HemorrhagicFever", "Hemorrhagic fever", "hemorrhagic_fever"},
    {Syndrome::Musculoskeletal, "Musculoskeletal", "Musculoskeletal", "musculoskeletal"},
    {Syndrome::Neurological, "Neurological", "Neurological", "neurological"},
    {Syndrome::Respiratory, "Respiratory", "Respiratory", "respiratory"},
}};

double parse_coordinate(std::string_view field, double bound, std::string_view what, std::string_view origin) {
  field = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw OntologyError(fmt::format("{}: {} is not a number: '{}'", origin, what, field));
  }
  if (value < -bound || value > bound) {
    throw OntologyError(fmt::format("{}: {} {} out of range [-{}, {}]", origin, what, value, bound, bound));
  }
  return value;
}

template <typename Fn>
void for_each_record(std::istream& in, std::string_view source_name, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    fn(split(line, '\t'), fmt::format("{} line {}", source_name, line_no));
  }
}

std::string_view field_or_empty(const std::vector<std::string_view>& fields, std::size_t i) {
  return i < fields.size() ? trim(fields[i]) : std::string_view();
}

}  // namespace

std::string_view to_string(Syndrome s) {
  for (const auto& n : kSyndromeNames) {
    if (n.value == s) return n.record;
  }
  return "?";
}

std::string_view display_name(Syndrome s) {
  for (const auto& n : kSyndromeNames) {
    if (n.value == s) return n.display;
  }
  return "?";
}

std::string_view query_name(Syndrome s) {
  for (const auto& n : kSyndromeNames) {
    if (n.value == s) return n.snake;
  }
  return "?";
}

std::optional<Syndrome> parse_syndrome(std::string_view text) {
  auto lowered = to_lower_ascii(trim(text));
  for (const auto& n : kSyndromeNames) {
    if (lowered == to_lower_ascii(n.record) || lowered == n.snake) return n.value;
  }
  return std::nullopt;
}

std::string_view to_string(LocationKind k) { return k == LocationKind::Country ? "Country" : "SubCountry"; }

Ontology Ontology::load(std::istream& disease_source, std::istream& geo_source) {
  Ontology onto;

  for_each_record(disease_source, "disease source", [&](const std::vector<std::string_view>& f, const std::string& origin) {
    if (f[0] != "D") throw OntologyError(fmt::format("{}: expected a D record, got '{}'", origin, f[0]));
    if (f.size() < 3 || f.size() > 6) {
      throw OntologyError(fmt::format("{}: disease record has {} fields, expected 3 to 6", origin, f.size()));
    }
    DiseaseConcept c;
    c.id = field_or_empty(f, 1);
    c.root_name = field_or_empty(f, 2);
    if (c.id.empty()) throw OntologyError(fmt::format("{}: empty disease id", origin));
    if (normalize_term(c.root_name).empty()) {
      throw OntologyError(fmt::format("{}: disease '{}' has an empty root name", origin, c.id));
    }
    c.synonyms.insert(c.root_name);
    for (auto syn : split(field_or_empty(f, 3), '|')) {
      if (!normalize_term(syn).empty()) c.synonyms.emplace(trim(syn));
    }
    for (auto tag : split(field_or_empty(f, 4), ',')) {
      if (trim(tag).empty()) continue;
      auto s = parse_syndrome(tag);
      if (!s || trim(tag) != to_string(*s)) {
        throw OntologyError(fmt::format("{}: disease '{}' has unknown syndrome '{}'", origin, c.id, trim(tag)));
      }
      c.syndromes.insert(*s);
    }
    for (auto ref : split(field_or_empty(f, 5), ';')) {
      ref = trim(ref);
      if (ref.empty()) continue;
      auto colon = ref.find(':');
      if (colon == std::string_view::npos || colon == 0 || colon + 1 == ref.size()) {
        throw OntologyError(fmt::format("{}: disease '{}' has malformed reference '{}'", origin, c.id, ref));
      }
      c.external_refs.push_back({std::string(ref.substr(0, colon)), std::string(ref.substr(colon + 1))});
    }
    onto.add_disease(std::move(c), origin);
  });

  for_each_record(geo_source, "geo source", [&](const std::vector<std::string_view>& f, const std::string& origin) {
    if (f[0] != "G") throw OntologyError(fmt::format("{}: expected a G record, got '{}'", origin, f[0]));
    if (f.size() != 7) {
      throw OntologyError(fmt::format("{}: geo record has {} fields, expected 7", origin, f.size()));
    }
    GeoLocation loc;
    loc.id = field_or_empty(f, 1);
    loc.name = field_or_empty(f, 2);
    if (loc.id.empty() || normalize_term(loc.name).empty()) {
      throw OntologyError(fmt::format("{}: location needs a non-empty id and name", origin));
    }
    auto kind = field_or_empty(f, 3);
    if (kind == "Country") {
      loc.kind = LocationKind::Country;
    } else if (kind == "SubCountry") {
      loc.kind = LocationKind::SubCountry;
    } else {
      throw OntologyError(fmt::format("{}: location '{}' has unknown kind '{}'", origin, loc.id, kind));
    }
    loc.parent_country_id = field_or_empty(f, 4);
    if (loc.kind == LocationKind::Country) {
      if (loc.parent_country_id.empty()) loc.parent_country_id = loc.id;
      if (loc.parent_country_id != loc.id) {
        throw OntologyError(fmt::format("{}: country '{}' must be its own parent, got '{}'", origin, loc.id,
                                        loc.parent_country_id));
      }
    }
    loc.latitude = parse_coordinate(f[5], 90.0, fmt::format("location '{}' latitude", loc.id), origin);
    loc.longitude = parse_coordinate(f[6], 180.0, fmt::format("location '{}' longitude", loc.id), origin);
    onto.add_location(std::move(loc), origin);
  });

  onto.finish();
  return onto;
}

Ontology Ontology::load_directory(const std::filesystem::path& dir) {
  std::ifstream diseases(dir / "diseases.tsv");
  std::ifstream geo(dir / "geo.tsv");
  if (!diseases) throw OntologyError(fmt::format("cannot open {}", (dir / "diseases.tsv").string()));
  if (!geo) throw OntologyError(fmt::format("cannot open {}", (dir / "geo.tsv").string()));
  return load(diseases, geo);
}

void Ontology::add_disease(DiseaseConcept disease, std::string_view origin) {
  if (diseases_.contains(disease.id)) {
    throw OntologyError(fmt::format("{}: duplicate disease id '{}'", origin, disease.id));
  }
  for (const auto& syn : disease.synonyms) {
    auto key = normalize_term(syn);
    auto [it, inserted] = synonym_index_.emplace(key, disease.id);
    if (!inserted && it->second != disease.id) {
      throw OntologyError(fmt::format("{}: synonym '{}' claimed by both '{}' and '{}'", origin, key, it->second,
                                      disease.id));
    }
  }
  auto id = disease.id;
  diseases_.emplace(std::move(id), std::move(disease));
}

void Ontology::add_location(GeoLocation location, std::string_view origin) {
  if (locations_.contains(location.id)) {
    throw OntologyError(fmt::format("{}: duplicate location id '{}'", origin, location.id));
  }
  if (location.kind == LocationKind::Country) ++country_count_;
  location_index_[normalize_term(location.name)].push_back(location.id);
  auto id = location.id;
  locations_.emplace(std::move(id), std::move(location));
}

void Ontology::finish() {
  for (const auto& [id, loc] : locations_) {
    if (loc.kind != LocationKind::SubCountry) continue;
    auto parent = locations_.find(loc.parent_country_id);
    if (parent == locations_.end() || parent->second.kind != LocationKind::Country) {
      throw OntologyError(
          fmt::format("sub-country '{}' has unresolvable parent country '{}'", id, loc.parent_country_id));
    }
  }
  for (auto& [name, ids] : location_index_) std::sort(ids.begin(), ids.end());
}

const DiseaseConcept* Ontology::lookup_disease(std::string_view term) const {
  auto it = synonym_index_.find(normalize_term(term));
  if (it == synonym_index_.end()) return nullptr;
  return find_disease(it->second);
}

std::vector<const GeoLocation*> Ontology::lookup_location_candidates(std::string_view term) const {
  std::vector<const GeoLocation*> out;
  auto key = normalize_term(term);
  if (key.empty()) return out;
  auto it = location_index_.find(key);
  if (it == location_index_.end()) return out;
  out.reserve(it->second.size());
  for (const auto& id : it->second) out.push_back(find_location(id));
  return out;
}

std::set<std::string> Ontology::diseases_for_syndrome(Syndrome syndrome) const {
  std::set<std::string> out;
  for (const auto& [id, disease] : diseases_) {
    if (disease.syndromes.contains(syndrome)) out.insert(id);
  }
  return out;
}

const DiseaseConcept* Ontology::find_disease(std::string_view id) const {
  auto it = diseases_.find(id);
  return it == diseases_.end() ? nullptr : &it->second;
}

const GeoLocation* Ontology::find_location(std::string_view id) const {
  auto it = locations_.find(id);
  return it == locations_.end() ? nullptr : &it->second;
}

}  // namespace ghm
