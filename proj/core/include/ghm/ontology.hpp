#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ghm {

/// The six clinical groupings a disease may belong to. Closed set.
enum class Syndrome {
  Dermatological,
  Gastrointestinal,
  HemorrhagicFever,
  Musculoskeletal,
  Neurological,
  Respiratory,
};

inline constexpr std::array<Syndrome, 6> kAllSyndromes{
    Syndrome::Dermatological, Syndrome::Gastrointestinal, Syndrome::HemorrhagicFever,
    Syndrome::Musculoskeletal, Syndrome::Neurological,     Syndrome::Respiratory,
};

/// Record-format name ("HemorrhagicFever").
std::string_view to_string(Syndrome s);
/// Human-readable name ("Hemorrhagic fever").
std::string_view display_name(Syndrome s);
/// snake_case name used in query strings ("hemorrhagic_fever").
std::string_view query_name(Syndrome s);
/// Accepts the record-format name, case-insensitively, and also the
/// snake_case form used in query strings ("hemorrhagic_fever").
std::optional<Syndrome> parse_syndrome(std::string_view text);

struct ExternalRef {
  std::string scheme;
  std::string id;

  auto operator<=>(const ExternalRef&) const = default;
};

struct DiseaseConcept {
  std::string id;
  std::string root_name;
  /// Surface forms as written in the source, root name included.
  std::set<std::string> synonyms;
  std::set<Syndrome> syndromes;
  std::vector<ExternalRef> external_refs;

  bool operator==(const DiseaseConcept&) const = default;
};

enum class LocationKind { Country, SubCountry };

std::string_view to_string(LocationKind k);

struct GeoLocation {
  std::string id;
  std::string name;
  LocationKind kind = LocationKind::Country;
  /// Enclosing country; a country's own id for countries.
  std::string parent_country_id;
  double latitude = 0.0;
  double longitude = 0.0;

  bool operator==(const GeoLocation&) const = default;
};

/// Immutable, fully indexed disease and geographical ontology. Safe for
/// unrestricted concurrent reads once constructed.
class Ontology {
 public:
  Ontology() = default;

  /// Parses both record streams (see data/ontology/*.tsv for the format) and
  /// builds the indexes. Throws OntologyError naming the offending record on
  /// duplicate ids, synonym collisions between diseases, unresolvable parents
  /// and out-of-range coordinates.
  static Ontology load(std::istream& disease_source, std::istream& geo_source);

  /// Loads `diseases.tsv` and `geo.tsv` from a directory.
  static Ontology load_directory(const std::filesystem::path& dir);

  /// Concept whose synonym set contains normalize_term(term); nullptr if none.
  const DiseaseConcept* lookup_disease(std::string_view term) const;

  /// All locations whose normalized name equals normalize_term(term), ordered by id.
  std::vector<const GeoLocation*> lookup_location_candidates(std::string_view term) const;

  std::set<std::string> diseases_for_syndrome(Syndrome syndrome) const;

  const DiseaseConcept* find_disease(std::string_view id) const;
  const GeoLocation* find_location(std::string_view id) const;

  const std::map<std::string, DiseaseConcept, std::less<>>& diseases() const { return diseases_; }
  const std::map<std::string, GeoLocation, std::less<>>& locations() const { return locations_; }

  /// normalized synonym -> disease id
  const std::map<std::string, std::string, std::less<>>& disease_synonym_index() const {
    return synonym_index_;
  }
  /// normalized name -> location ids (sorted)
  const std::map<std::string, std::vector<std::string>, std::less<>>& location_name_index() const {
    return location_index_;
  }

  std::size_t disease_count() const { return diseases_.size(); }
  std::size_t country_count() const { return country_count_; }
  std::size_t sub_country_count() const { return locations_.size() - country_count_; }

  bool operator==(const Ontology&) const = default;

 private:
  void add_disease(DiseaseConcept disease, std::string_view origin);
  void add_location(GeoLocation location, std::string_view origin);
  void finish();

  std::map<std::string, DiseaseConcept, std::less<>> diseases_;
  std::map<std::string, std::string, std::less<>> synonym_index_;
  std::map<std::string, GeoLocation, std::less<>> locations_;
  std::map<std::string, std::vector<std::string>, std::less<>> location_index_;
  std::size_t country_count_ = 0;
};

}  // namespace ghm
