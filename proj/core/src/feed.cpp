#include "ghm/feed.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "ghm/error.hpp"
#include "ghm/ontology.hpp"
#include "ghm/text.hpp"

namespace ghm {
namespace {

namespace pt = boost::property_tree;

constexpr std::array<std::pair<Genre, std::string_view>, 4> kGenreNames{{
    {Genre::Press, "Press"},
    {Genre::Official, "Official"},
    {Genre::Business, "Business"},
    {Genre::Mixed, "Mixed"},
}};

// Country-code TLDs that are marketed as generic names.
const std::set<std::string, std::less<>> kVanityTlds{"ai", "cc", "co", "eu", "fm", "io", "me", "tv", "ws"};

std::string child_text(const pt::ptree& node, std::string_view key) {
  if (auto child = node.get_child_optional(pt::ptree::path_type(std::string(key), '/'))) {
    return child->data();
  }
  return {};
}

struct RawItem {
  std::string title;
  std::string link;
  std::string body;
  std::string date;
};

std::vector<RawItem> rss_items(const pt::ptree& channel) {
  std::vector<RawItem> items;
  for (const auto& [key, item] : channel) {
    if (key != "item") continue;
    RawItem raw;
    raw.title = child_text(item, "title");
    raw.link = child_text(item, "link");
    if (trim(raw.link).empty()) raw.link = child_text(item, "guid");
    raw.body = child_text(item, "description");
    if (trim(raw.body).empty()) raw.body = child_text(item, "content:encoded");
    raw.date = child_text(item, "pubDate");
    if (trim(raw.date).empty()) raw.date = child_text(item, "dc:date");
    items.push_back(std::move(raw));
  }
  return items;
}

std::vector<RawItem> atom_entries(const pt::ptree& feed) {
  std::vector<RawItem> items;
  for (const auto& [key, entry] : feed) {
    if (key != "entry") continue;
    RawItem raw;
    raw.title = child_text(entry, "title");
    // Prefer rel="alternate" (or rel-less) links.
    for (const auto& [lkey, link] : entry) {
      if (lkey != "link") continue;
      auto rel = link.get<std::string>("<xmlattr>.rel", "alternate");
      auto href = link.get<std::string>("<xmlattr>.href", "");
      if (rel == "alternate" && !href.empty()) {
        raw.link = href;
        break;
      }
      if (raw.link.empty()) raw.link = href;
    }
    if (trim(raw.link).empty()) raw.link = child_text(entry, "id");
    raw.body = child_text(entry, "summary");
    if (trim(raw.body).empty()) raw.body = child_text(entry, "content");
    raw.date = child_text(entry, "published");
    if (trim(raw.date).empty()) raw.date = child_text(entry, "updated");
    items.push_back(std::move(raw));
  }
  return items;
}

}  // namespace

std::string_view to_string(Genre g) {
  for (auto [value, name] : kGenreNames) {
    if (value == g) return name;
  }
  return "?";
}

std::optional<Genre> parse_genre(std::string_view text) {
  auto lowered = to_lower_ascii(trim(text));
  for (auto [value, name] : kGenreNames) {
    if (lowered == to_lower_ascii(name)) return value;
  }
  return std::nullopt;
}

std::optional<std::string> country_hint_from_url(std::string_view url) {
  auto scheme = url.find("://");
  if (scheme == std::string_view::npos) return std::nullopt;
  auto host = url.substr(scheme + 3);
  host = host.substr(0, host.find_first_of("/?#"));
  if (auto at = host.rfind('@'); at != std::string_view::npos) host = host.substr(at + 1);
  host = host.substr(0, host.find(':'));
  while (!host.empty() && host.back() == '.') host.remove_suffix(1);
  auto dot = host.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  auto tld = to_lower_ascii(host.substr(dot + 1));
  if (tld.size() != 2 || kVanityTlds.contains(tld)) return std::nullopt;
  if (!std::all_of(tld.begin(), tld.end(), [](char c) { return c >= 'a' && c <= 'z'; })) return std::nullopt;
  if (tld == "uk") return "GB";
  std::string code;
  for (char c : tld) code.push_back(static_cast<char>(c - 'a' + 'A'));
  return code;
}

std::vector<FeedSource> read_source_list(std::istream& in, const Ontology* ontology) {
  auto is_country = [&](const std::string& id) {
    if (ontology == nullptr) return true;
    const auto* loc = ontology->find_location(id);
    return loc != nullptr && loc->kind == LocationKind::Country;
  };

  std::vector<FeedSource> sources;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() < 3 || f.size() > 5) {
      throw ArgumentError(fmt::format("source list line {}: expected 3 to 5 fields, got {}", line_no, f.size()));
    }
    FeedSource src;
    src.id = std::string(trim(f[0]));
    src.url = std::string(trim(f[1]));
    if (src.id.empty() || src.url.empty()) {
      throw ArgumentError(fmt::format("source list line {}: empty id or url", line_no));
    }
    if (!seen.insert(src.id).second) {
      throw ArgumentError(fmt::format("source list line {}: duplicate source id '{}'", line_no, src.id));
    }
    auto genre = parse_genre(f[2]);
    if (!genre) throw ArgumentError(fmt::format("source list line {}: unknown genre '{}'", line_no, trim(f[2])));
    src.genre = *genre;
    if (f.size() >= 4 && !trim(f[3]).empty()) {
      src.country_hint = std::string(trim(f[3]));
      if (!is_country(*src.country_hint)) {
        throw ArgumentError(
            fmt::format("source list line {}: country hint '{}' is not a known country", line_no, *src.country_hint));
      }
    } else if (auto derived = country_hint_from_url(src.url); derived && is_country(*derived)) {
      src.country_hint = derived;
    }
    if (f.size() == 5) {
      auto flag = to_lower_ascii(trim(f[4]));
      if (flag != "enabled" && flag != "disabled") {
        throw ArgumentError(fmt::format("source list line {}: expected enabled|disabled, got '{}'", line_no, flag));
      }
      src.poll_enabled = flag == "enabled";
    }
    sources.push_back(std::move(src));
  }
  return sources;
}

std::string NewsStory::text() const {
  if (body.empty()) return headline;
  std::string out;
  out.reserve(headline.size() + 1 + body.size());
  out += headline;
  out += '\n';
  out += body;
  return out;
}

std::string make_story_id(std::string_view url, std::string_view headline) {
  std::string material;
  material.reserve(url.size() + headline.size() + 1);
  material.append(url);
  material.push_back('\n');
  material.append(headline);

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(material.data(), material.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < 8; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

FeedError::FeedError(Kind kind, std::string source_id, const std::string& message,
                     std::optional<std::chrono::seconds> retry_after)
    : std::runtime_error(fmt::format("source '{}': {}", source_id, message)),
      kind_(kind),
      source_id_(std::move(source_id)),
      retry_after_(retry_after) {}

FetchOutcome parse_feed(const FeedSource& source, std::string_view document, Timestamp now) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(document)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw FeedError(FeedError::Kind::Parse, source.id, fmt::format("undecodable feed document: {}", e.what()));
  }

  std::vector<RawItem> items;
  if (auto rss = tree.get_child_optional("rss")) {
    auto channel = rss->get_child_optional("channel");
    if (!channel) throw FeedError(FeedError::Kind::Parse, source.id, "RSS document without a channel");
    items = rss_items(*channel);
  } else if (auto feed = tree.get_child_optional("feed")) {
    items = atom_entries(*feed);
  } else {
    throw FeedError(FeedError::Kind::Parse, source.id, "document is neither RSS 2.0 nor Atom 1.0");
  }

  FetchOutcome out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& raw = items[i];
    auto headline = strip_markup(raw.title);
    auto url = std::string(trim(raw.link));
    if (headline.empty()) {
      out.skipped.push_back({i, "missing headline"});
      continue;
    }
    if (url.empty()) {
      out.skipped.push_back({i, "missing link"});
      continue;
    }
    Timestamp published = now;
    if (!trim(raw.date).empty()) {
      auto parsed = parse_feed_date(raw.date);
      if (!parsed) {
        out.skipped.push_back({i, fmt::format("unparseable date '{}'", trim(raw.date))});
        continue;
      }
      published = *parsed;
    }
    NewsStory story;
    story.id = make_story_id(url, headline);
    story.source_id = source.id;
    story.url = std::move(url);
    story.headline = std::move(headline);
    story.body = strip_markup(raw.body);
    story.published_at = published;
    story.fetched_at = now;
    story.genre = source.genre;
    out.stories.push_back(std::move(story));
  }
  return out;
}

FetchOutcome fetch_and_parse(const FeedSource& source, const Transport& transport, Timestamp now) {
  std::string document;
  try {
    document = transport(source.url);
  } catch (const TransportError& e) {
    throw FeedError(FeedError::Kind::Transport, source.id, e.what(), e.retry_after());
  }
  return parse_feed(source, document, now);
}

std::vector<NewsStory> dedup_initial_headline(std::vector<NewsStory> stories) {
  // normalized headline -> index of the current keeper
  std::map<std::string, std::size_t> keeper;
  for (std::size_t i = 0; i < stories.size(); ++i) {
    auto key = normalize_term(stories[i].headline);
    auto [it, inserted] = keeper.emplace(std::move(key), i);
    if (inserted) continue;
    const auto& best = stories[it->second];
    const auto& cand = stories[i];
    if (cand.published_at < best.published_at || (cand.published_at == best.published_at && cand.id < best.id)) {
      it->second = i;
    }
  }
  std::vector<bool> keep(stories.size(), false);
  for (const auto& [key, index] : keeper) keep[index] = true;

  std::vector<NewsStory> out;
  out.reserve(keeper.size());
  for (std::size_t i = 0; i < stories.size(); ++i) {
    if (keep[i]) out.push_back(std::move(stories[i]));
  }
  return out;
}

}  // namespace ghm
