#pragma once

#include <chrono>
#include <filesystem>

#include "ghm/feed.hpp"

namespace ghm {

/// HTTP(S) fetcher. Non-2xx answers raise TransportError, carrying the
/// Retry-After header when present, otherwise `default_retry`.
Transport http_transport(std::chrono::seconds timeout = std::chrono::seconds{20},
                         std::chrono::seconds default_retry = std::chrono::seconds{3600});

/// Reads `file://` urls and plain paths; relative paths resolve against `base`.
Transport file_transport(std::filesystem::path base = {});

/// Dispatches on the url scheme: http/https to http_transport, anything else
/// to file_transport(base).
Transport default_transport(std::filesystem::path base = {});

}  // namespace ghm
