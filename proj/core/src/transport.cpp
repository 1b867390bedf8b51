#include "ghm/transport.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <httplib.h>

namespace ghm {
namespace {

bool starts_with_http(std::string_view url) { return url.starts_with("http://") || url.starts_with("https://"); }

}  // namespace

Transport http_transport(std::chrono::seconds timeout, std::chrono::seconds default_retry) {
  return [timeout, default_retry](const std::string& url) -> std::string {
    auto scheme_end = url.find("://");
    auto path_start = url.find('/', scheme_end + 3);
    std::string origin = url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    auto res = client.Get(path);
    if (!res) {
      throw TransportError(fmt::format("GET {} failed: {}", url, httplib::to_string(res.error())), default_retry);
    }
    if (res->status < 200 || res->status >= 300) {
      auto retry = default_retry;
      if (res->has_header("Retry-After")) {
        auto value = res->get_header_value("Retry-After");
        long long secs = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), secs);
        if (ec == std::errc{} && secs >= 0) retry = std::chrono::seconds{secs};
      }
      throw TransportError(fmt::format("GET {} returned HTTP {}", url, res->status), retry);
    }
    return res->body;
  };
}

Transport file_transport(std::filesystem::path base) {
  return [base = std::move(base)](const std::string& url) -> std::string {
    std::filesystem::path path = url.starts_with("file://") ? url.substr(7) : url;
    if (path.is_relative() && !base.empty()) path = base / path;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TransportError(fmt::format("cannot open {}", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
}

Transport default_transport(std::filesystem::path base) {
  auto http = http_transport();
  auto file = file_transport(std::move(base));
  return [http = std::move(http), file = std::move(file)](const std::string& url) {
    return starts_with_http(url) ? http(url) : file(url);
  };
}

}  // namespace ghm
