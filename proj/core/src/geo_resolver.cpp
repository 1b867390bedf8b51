#include "ghm/geo_resolver.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ghm/text.hpp"

namespace ghm {

std::string_view to_string(ResolutionTier t) {
  switch (t) {
    case ResolutionTier::Unambiguous: return "Unambiguous";
    case ResolutionTier::ContextCountry: return "ContextCountry";
    case ResolutionTier::SourceHint: return "SourceHint";
    case ResolutionTier::Fallback: return "Fallback";
  }
  return "?";
}

std::optional<ResolvedLocation> resolve(std::span<const GeoLocation* const> candidates,
                                        const ResolutionContext& context) {
  if (candidates.empty()) return std::nullopt;
  if (candidates.size() == 1) return ResolvedLocation{*candidates.front(), ResolutionTier::Unambiguous};

  auto unique_match = [&](auto&& pred) -> const GeoLocation* {
    const GeoLocation* found = nullptr;
    for (const auto* c : candidates) {
      if (!pred(*c)) continue;
      if (found != nullptr) return nullptr;
      found = c;
    }
    return found;
  };

  if (const auto* hit = unique_match([&](const GeoLocation& c) {
        return context.mentioned_country_ids.contains(c.parent_country_id);
      })) {
    return ResolvedLocation{*hit, ResolutionTier::ContextCountry};
  }
  if (context.source_country_hint) {
    if (const auto* hit = unique_match(
            [&](const GeoLocation& c) { return c.parent_country_id == *context.source_country_hint; })) {
      return ResolvedLocation{*hit, ResolutionTier::SourceHint};
    }
  }
  const auto* smallest = *std::min_element(candidates.begin(), candidates.end(),
                                           [](const auto* a, const auto* b) { return a->id < b->id; });
  return ResolvedLocation{*smallest, ResolutionTier::Fallback};
}

std::set<std::string> mentioned_country_ids(const Ontology& ontology, std::span<const AnnotatedEntity> entities) {
  std::set<std::string> out;
  for (const auto& e : entities) {
    if (e.cls != EntityClass::Location) continue;
    for (const auto* loc : ontology.lookup_location_candidates(e.surface)) {
      if (loc->kind == LocationKind::Country) out.insert(loc->id);
    }
  }
  return out;
}

std::set<std::string> detect_country_mentions(std::string_view text, const Gazetteer& gazetteer,
                                              const Ontology& ontology) {
  return mentioned_country_ids(ontology, tag_text(text, gazetteer));
}

std::string FallbackRecord::to_line() const {
  return fmt::format("{}\t{}\t{}", surface, chosen_id, fmt::join(candidate_ids, ","));
}

}  // namespace ghm
