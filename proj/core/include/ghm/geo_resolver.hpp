#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghm/ontology.hpp"
#include "ghm/tagger.hpp"

namespace ghm {

struct ResolutionContext {
  /// Concatenated texts of the supporting stories.
  std::string story_texts;
  /// Countries named in those texts.
  std::set<std::string> mentioned_country_ids;
  /// Country of the publishing source(s).
  std::optional<std::string> source_country_hint;
};

enum class ResolutionTier { Unambiguous, ContextCountry, SourceHint, Fallback };

std::string_view to_string(ResolutionTier t);

struct ResolvedLocation {
  GeoLocation location;
  ResolutionTier tier = ResolutionTier::Unambiguous;
};

/// Picks one referent for an ambiguous place name:
///   1. a single candidate                                  -> Unambiguous
///   2. exactly one candidate in a country the text mentions -> ContextCountry
///   3. exactly one candidate in the source's country        -> SourceHint
///   4. otherwise the candidate with the smallest id         -> Fallback
/// The result does not depend on candidate order. Empty input gives nothing.
std::optional<ResolvedLocation> resolve(std::span<const GeoLocation* const> candidates,
                                        const ResolutionContext& context);

using GeoResolverFn =
    std::function<std::optional<ResolvedLocation>(std::span<const GeoLocation* const>, const ResolutionContext&)>;

/// Country ids among the LOCATION entities' referents.
std::set<std::string> mentioned_country_ids(const Ontology& ontology, std::span<const AnnotatedEntity> entities);

/// Country mentions found by scanning `text` with the LOCATION gazetteer.
std::set<std::string> detect_country_mentions(std::string_view text, const Gazetteer& gazetteer,
                                              const Ontology& ontology);

/// Diagnostics record for a Fallback resolution: `surface<TAB>chosen_id<TAB>candidate_ids`.
struct FallbackRecord {
  std::string surface;
  std::string chosen_id;
  std::vector<std::string> candidate_ids;

  std::string to_line() const;
  bool operator==(const FallbackRecord&) const = default;
};

}  // namespace ghm
