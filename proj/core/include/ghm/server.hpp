#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ghm/detector.hpp"
#include "ghm/event_store.hpp"
#include "ghm/ontology.hpp"
#include "ghm/query.hpp"
#include "ghm/story_store.hpp"

namespace ghm {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Bundled data: ontology/, persons and organizations lists.
  std::filesystem::path data_dir = "data";
  /// Story and event logs.
  std::filesystem::path state_dir = "state";
  std::optional<std::filesystem::path> static_dir;
  std::optional<std::filesystem::path> sources;
  std::optional<std::filesystem::path> model;
  std::chrono::seconds cycle_interval{std::chrono::hours(1)};
  Threshold threshold;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Process environment.
std::optional<std::string> process_env(const std::string& name);

/// Reads the JSON config (when given), then applies GHM_PORT and GHM_DATA_DIR
/// from `env`. Relative paths in the file are taken relative to the file.
/// Throws ArgumentError on unknown keys or invalid values.
ServiceConfig load_service_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env = process_env);

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Request handling without sockets. Reads come from whatever snapshots are
/// current at call time, so a response never mixes two cycles.
class ApiService {
 public:
  using Clock = std::function<Timestamp()>;

  ApiService(const Ontology& ontology, const StoryStore& stories, const EventStore& events, Clock clock);

  /// GET only. `path` excludes the query string.
  ApiResponse handle(std::string_view path, const QueryParams& params) const;

 private:
  const Ontology& ontology_;
  const StoryStore& stories_;
  const EventStore& events_;
  Clock clock_;
};

Timestamp system_now();

/// HTTP front end for ApiService, optionally serving a static UI bundle at /.
class HttpServer {
 public:
  HttpServer(const ApiService& service, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port. Throws on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ghm
