#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ghm/time.hpp"

namespace ghm {

class Ontology;

/// Publication type of a feed, assigned per source in configuration.
enum class Genre { Press, Official, Business, Mixed };

inline constexpr std::array<Genre, 4> kAllGenres{Genre::Press, Genre::Official, Genre::Business, Genre::Mixed};

std::string_view to_string(Genre g);
/// Case-insensitive ("press", "Official", ...).
std::optional<Genre> parse_genre(std::string_view text);

struct FeedSource {
  std::string id;
  std::string url;
  Genre genre = Genre::Press;
  /// Country the provider publishes from; feeds the geo resolver's source-hint rule.
  std::optional<std::string> country_hint;
  bool poll_enabled = true;
};

/// Country id implied by the url's top-level domain ("bbc.co.uk" -> "GB").
/// Generic TLDs (.com, .org, ...) give nothing.
std::optional<std::string> country_hint_from_url(std::string_view url);

/// Reads the source list: `id<TAB>url<TAB>genre[<TAB>country_hint[<TAB>enabled|disabled]]`.
/// When the hint column is empty the url's TLD is consulted. With an ontology,
/// hints must name one of its countries. Throws ArgumentError on bad records.
std::vector<FeedSource> read_source_list(std::istream& in, const Ontology* ontology = nullptr);

struct NewsStory {
  std::string id;
  std::string source_id;
  std::string url;
  std::string headline;
  std::string body;
  Timestamp published_at{};
  Timestamp fetched_at{};
  Genre genre = Genre::Press;

  /// The text entity offsets refer to: headline, then a newline and the body
  /// when the body is non-empty.
  std::string text() const;

  bool operator==(const NewsStory&) const = default;
};

/// Deterministic content digest of (url, headline): 16 lowercase hex digits.
std::string make_story_id(std::string_view url, std::string_view headline);

/// Source-level failure: the feed could not be fetched or decoded.
class FeedError : public std::runtime_error {
 public:
  enum class Kind { Transport, Parse };

  FeedError(Kind kind, std::string source_id, const std::string& message,
            std::optional<std::chrono::seconds> retry_after = std::nullopt);

  Kind kind() const { return kind_; }
  const std::string& source_id() const { return source_id_; }
  /// Suggested back-off before polling the source again (transport errors only).
  std::optional<std::chrono::seconds> retry_after() const { return retry_after_; }

 private:
  Kind kind_;
  std::string source_id_;
  std::optional<std::chrono::seconds> retry_after_;
};

/// Thrown by transports; fetch_and_parse rewraps it as a FeedError.
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& message,
                          std::optional<std::chrono::seconds> retry_after = std::nullopt)
      : std::runtime_error(message), retry_after_(retry_after) {}

  std::optional<std::chrono::seconds> retry_after() const { return retry_after_; }

 private:
  std::optional<std::chrono::seconds> retry_after_;
};

/// Byte fetcher: returns the raw document at `url` or throws TransportError.
using Transport = std::function<std::string(const std::string& url)>;

struct ItemDiagnostic {
  std::size_t item_index = 0;
  std::string reason;
};

struct FetchOutcome {
  std::vector<NewsStory> stories;
  std::vector<ItemDiagnostic> skipped;
};

/// Parses an RSS 2.0 or Atom 1.0 document. Malformed items are skipped with a
/// diagnostic; an undecodable document throws FeedError(Parse).
FetchOutcome parse_feed(const FeedSource& source, std::string_view document, Timestamp now);

/// Fetches `source.url` through `transport` and parses it; fetched_at = now.
FetchOutcome fetch_and_parse(const FeedSource& source, const Transport& transport, Timestamp now);

/// "Initial headline only": keeps, per normalized headline, the story with the
/// earliest published_at (smaller id on ties). Survivors keep input order.
std::vector<NewsStory> dedup_initial_headline(std::vector<NewsStory> stories);

}  // namespace ghm
