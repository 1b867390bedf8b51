#include "ghm/time.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "ghm/error.hpp"
#include "ghm/text.hpp"

namespace ghm {
namespace {

using namespace std::chrono;

// Minimal cursor over a date string.
class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  bool number(int digits, int& out) {
    if (pos_ + digits > s_.size()) return false;
    auto* first = s_.data() + pos_;
    for (int i = 0; i < digits; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(first[i]))) return false;
    }
    std::from_chars(first, first + digits, out);
    pos_ += digits;
    return true;
  }

  // One or two digits (RFC 822 days and hours).
  bool short_number(int& out) {
    std::size_t n = 0;
    while (pos_ + n < s_.size() && n < 2 && std::isdigit(static_cast<unsigned char>(s_[pos_ + n]))) ++n;
    if (n == 0) return false;
    std::from_chars(s_.data() + pos_, s_.data() + pos_ + n, out);
    pos_ += n;
    return true;
  }

  bool literal(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void skip_spaces() {
    while (!done() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view word() {
    std::size_t start = pos_;
    while (!done() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::string_view rest() const { return s_.substr(std::min(pos_, s_.size())); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::optional<Timestamp> assemble(int y, int mo, int d, int h, int mi, int s, int offset_minutes) {
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) return std::nullopt;
  auto t = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
  return time_point_cast<seconds>(t - minutes{offset_minutes});
}

bool numeric_offset(Scanner& sc, bool with_colon, int& minutes_out) {
  char sign = sc.peek();
  if (sign != '+' && sign != '-') return false;
  sc.literal(sign);
  int oh = 0;
  int om = 0;
  if (!sc.number(2, oh)) return false;
  if (with_colon) sc.literal(':');
  if (!sc.number(2, om)) return false;
  minutes_out = (oh * 60 + om) * (sign == '-' ? -1 : 1);
  return true;
}

}  // namespace

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  Scanner sc(trim(text));
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!sc.number(4, y) || !sc.literal('-') || !sc.number(2, mo) || !sc.literal('-') || !sc.number(2, d)) {
    return std::nullopt;
  }
  if (sc.done()) return assemble(y, mo, d, 0, 0, 0, 0);
  if (!sc.literal('T') && !sc.literal(' ')) return std::nullopt;
  if (!sc.number(2, h) || !sc.literal(':') || !sc.number(2, mi)) return std::nullopt;
  if (sc.literal(':') && !sc.number(2, s)) return std::nullopt;
  if (sc.literal('.')) {
    while (std::isdigit(static_cast<unsigned char>(sc.peek()))) sc.literal(sc.peek());
  }
  int offset = 0;
  if (sc.literal('Z') || sc.literal('z')) {
    offset = 0;
  } else if (!sc.done() && !numeric_offset(sc, true, offset)) {
    return std::nullopt;
  }
  if (!sc.done()) return std::nullopt;
  return assemble(y, mo, d, h, mi, s, offset);
}

std::optional<Timestamp> parse_rfc822(std::string_view text) {
  static constexpr std::array<std::string_view, 12> kMonths{
      "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"};
  struct Zone {
    std::string_view name;
    int offset_minutes;
  };
  static constexpr std::array<Zone, 12> kZones{{
      {"gmt", 0}, {"ut", 0}, {"utc", 0}, {"z", 0},
      {"est", -300}, {"edt", -240}, {"cst", -360}, {"cdt", -300},
      {"mst", -420}, {"mdt", -360}, {"pst", -480}, {"pdt", -420},
  }};

  Scanner sc(trim(text));
  sc.skip_spaces();
  // Optional day-of-week.
  if (std::isalpha(static_cast<unsigned char>(sc.peek()))) {
    sc.word();
    if (!sc.literal(',')) return std::nullopt;
    sc.skip_spaces();
  }
  int d = 0, y = 0, h = 0, mi = 0, s = 0;
  if (!sc.short_number(d)) return std::nullopt;
  sc.skip_spaces();
  auto mon = to_lower_ascii(sc.word());
  int mo = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (mon.size() >= 3 && mon.substr(0, 3) == kMonths[i]) mo = static_cast<int>(i) + 1;
  }
  if (mo == 0) return std::nullopt;
  sc.skip_spaces();
  if (!sc.number(4, y)) {
    if (!sc.number(2, y)) return std::nullopt;
    y += y < 50 ? 2000 : 1900;
  }
  sc.skip_spaces();
  if (!sc.short_number(h) || !sc.literal(':') || !sc.number(2, mi)) return std::nullopt;
  if (sc.literal(':') && !sc.number(2, s)) return std::nullopt;
  sc.skip_spaces();
  int offset = 0;
  if (!sc.done()) {
    if (!numeric_offset(sc, false, offset)) {
      auto zone = to_lower_ascii(sc.word());
      bool known = false;
      for (auto z : kZones) {
        if (zone == z.name) {
          offset = z.offset_minutes;
          known = true;
        }
      }
      if (!known) return std::nullopt;
    }
    sc.skip_spaces();
    if (!sc.done()) return std::nullopt;
  }
  return assemble(y, mo, d, h, mi, s, offset);
}

std::optional<Timestamp> parse_feed_date(std::string_view text) {
  if (auto t = parse_iso8601(text)) return t;
  return parse_rfc822(text);
}

std::string format_timestamp(Timestamp t) { return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", t); }

Timestamp require_timestamp(std::string_view text, std::string_view what) {
  if (auto t = parse_iso8601(text)) return *t;
  throw ArgumentError(fmt::format("{}: not an ISO-8601 timestamp: '{}'", what, text));
}

}  // namespace ghm
