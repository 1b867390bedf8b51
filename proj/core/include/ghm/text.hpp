#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ghm {

/// Canonical form used for every surface-term comparison in the pipeline:
/// ASCII case-fold, internal whitespace runs collapsed to one space, and
/// leading/trailing punctuation and whitespace stripped. No stemming.
/// Bytes outside ASCII pass through unchanged.
std::string normalize_term(std::string_view term);

std::string to_lower_ascii(std::string_view s);

/// Byte range [begin, end) of one word in a text.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Words are maximal runs of ASCII alphanumerics or non-ASCII bytes; every
/// other byte (whitespace, punctuation) separates words.
std::vector<TokenSpan> word_spans(std::string_view text);

/// Lowercased words of `text`, in order.
std::vector<std::string> word_tokens(std::string_view text);

/// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char delim);

std::string_view trim(std::string_view s);

/// Backslash escapes used by the line-oriented formats: \t \n \r \\.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

/// Removes HTML tags and decodes the common character entities. Feed
/// descriptions frequently carry escaped markup.
std::string strip_markup(std::string_view html);

/// RFC 3986 percent-encoding; everything except unreserved characters is escaped.
std::string percent_encode(std::string_view s);

}  // namespace ghm
