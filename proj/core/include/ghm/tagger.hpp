#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ghm/feed.hpp"

namespace ghm {

class Ontology;

enum class EntityClass { Person, Organization, Disease, Location };

/// Tie-break order for equal-length matches across classes.
inline constexpr std::array<EntityClass, 4> kEntityPrecedence{
    EntityClass::Disease, EntityClass::Location, EntityClass::Organization, EntityClass::Person};

std::string_view to_string(EntityClass c);  // "PERSON", "ORGANIZATION", ...
std::optional<EntityClass> parse_entity_class(std::string_view text);

/// One tagged span in NewsStory::text(); offsets are byte offsets, end exclusive.
struct AnnotatedEntity {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  EntityClass cls = EntityClass::Person;

  auto operator<=>(const AnnotatedEntity&) const = default;
};

/// Tagging interface. The pipeline only depends on this, so a statistical
/// tagger can replace the gazetteer one. Implementations must return
/// non-overlapping spans sorted by start.
class EntityTagger {
 public:
  virtual ~EntityTagger() = default;
  virtual std::vector<AnnotatedEntity> tag(const NewsStory& story) const = 0;
};

/// Per-class dictionaries of normalized surfaces. DISEASE entries are exactly
/// the ontology synonym index (hint: disease id), LOCATION entries exactly the
/// location name index (hints: location ids); PERSON/ORGANIZATION come from
/// plain lists (hint: the listed form).
class Gazetteer {
 public:
  using Entries = std::unordered_map<std::string, std::vector<std::string>>;

  static Gazetteer build(const Ontology& ontology, std::span<const std::string> persons,
                         std::span<const std::string> organizations);

  const Entries& entries(EntityClass c) const { return entries_[index(c)]; }
  /// Number of distinct surfaces for a class.
  std::size_t surface_count(EntityClass c) const { return entries(c).size(); }
  /// Number of (surface, hint) pairs; for LOCATION this counts ambiguous
  /// names once per referent.
  std::size_t entry_count(EntityClass c) const;

  /// Longest entry measured in words.
  std::size_t max_words() const { return max_words_; }
  /// Whether some entry starts with this normalized word sequence.
  bool is_prefix(const std::string& normalized) const { return prefixes_.contains(normalized); }

 private:
  static constexpr std::size_t index(EntityClass c) { return static_cast<std::size_t>(c); }
  void add(EntityClass c, const std::string& normalized, std::string hint);

  std::array<Entries, 4> entries_;
  std::unordered_set<std::string> prefixes_;
  std::size_t max_words_ = 0;
};

/// Longest-match, word-boundary-aligned tagging of `text`. At each word the
/// longest entry across all classes wins; equal lengths follow
/// kEntityPrecedence. Output is sorted by start and non-overlapping.
std::vector<AnnotatedEntity> tag_text(std::string_view text, const Gazetteer& gazetteer);

inline std::vector<AnnotatedEntity> tag_entities(const NewsStory& story, const Gazetteer& gazetteer) {
  return tag_text(story.text(), gazetteer);
}

class GazetteerTagger final : public EntityTagger {
 public:
  explicit GazetteerTagger(std::shared_ptr<const Gazetteer> gazetteer) : gazetteer_(std::move(gazetteer)) {}

  std::vector<AnnotatedEntity> tag(const NewsStory& story) const override {
    return tag_entities(story, *gazetteer_);
  }

  const Gazetteer& gazetteer() const { return *gazetteer_; }

 private:
  std::shared_ptr<const Gazetteer> gazetteer_;
};

/// Plain-text list, one entry per line; blank lines and '#' comments skipped.
std::vector<std::string> read_entry_list(std::istream& in);

/// One line of an annotation dump: `story_id<TAB>start<TAB>end<TAB>class<TAB>surface`.
struct AnnotationRecord {
  std::string story_id;
  AnnotatedEntity entity;

  auto operator<=>(const AnnotationRecord&) const = default;
};

void write_annotation_dump(std::ostream& out, std::string_view story_id, std::span<const AnnotatedEntity> entities);
/// Throws FormatError naming the line on malformed records.
std::vector<AnnotationRecord> read_annotation_dump(std::istream& in);

}  // namespace ghm
