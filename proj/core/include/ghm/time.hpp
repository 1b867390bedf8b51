#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace ghm {

/// UTC instant at one-second resolution.
using Timestamp = std::chrono::sys_seconds;

/// Parses ISO-8601 / RFC 3339 ("2007-11-11T15:00:00Z", optional fraction and
/// numeric offset). Returns nothing on malformed input.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Parses RFC 822 / RFC 1123 dates as found in RSS pubDate elements
/// ("Sun, 11 Nov 2007 15:00:00 GMT", "+0900", "EST", ...).
std::optional<Timestamp> parse_rfc822(std::string_view text);

/// Tries ISO-8601 first, then RFC 822.
std::optional<Timestamp> parse_feed_date(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp t);

/// Like parse_iso8601 but throws ArgumentError naming `what`.
Timestamp require_timestamp(std::string_view text, std::string_view what);

}  // namespace ghm
