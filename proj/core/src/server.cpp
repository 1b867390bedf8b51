#include "ghm/server.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "ghm/text.hpp"

namespace ghm {
namespace {

using nlohmann::json;

int parse_port(std::string_view text, std::string_view origin) {
  int port = 0;
  auto t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), port);
  if (ec != std::errc{} || ptr != t.data() + t.size() || port < 0 || port > 65535) {
    throw ArgumentError(fmt::format("{}: invalid port '{}'", origin, text));
  }
  return port;
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

Timestamp system_now() { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); }

ServiceConfig load_service_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env) {
  ServiceConfig cfg;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ArgumentError(fmt::format("cannot read config {}", file->string()));
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ArgumentError(fmt::format("config {}: {}", file->string(), e.what()));
    }
    if (!j.is_object()) throw ArgumentError(fmt::format("config {}: expected an object", file->string()));
    auto base = file->parent_path();
    auto path_of = [&](const json& v) { return base / v.get<std::string>(); };
    try {
      for (const auto& [key, v] : j.items()) {
        if (key == "host") cfg.host = v.get<std::string>();
        else if (key == "port") cfg.port = v.is_string() ? parse_port(v.get<std::string>(), "config port") : v.get<int>();
        else if (key == "data_dir") cfg.data_dir = path_of(v);
        else if (key == "state_dir") cfg.state_dir = path_of(v);
        else if (key == "static_dir") cfg.static_dir = path_of(v);
        else if (key == "sources") cfg.sources = path_of(v);
        else if (key == "model") cfg.model = path_of(v);
        else if (key == "cycle_interval_minutes") cfg.cycle_interval = std::chrono::minutes(v.get<int>());
        else if (key == "threshold_mode") {
          auto mode = parse_threshold_mode(v.get<std::string>());
          if (!mode) throw ArgumentError(fmt::format("config: unknown threshold_mode '{}'", v.get<std::string>()));
          cfg.threshold.mode = *mode;
        } else if (key == "threshold_value") cfg.threshold.value = v.get<std::size_t>();
        else throw ArgumentError(fmt::format("config {}: unknown key '{}'", file->string(), key));
      }
    } catch (const json::exception& e) {
      throw ArgumentError(fmt::format("config {}: {}", file->string(), e.what()));
    }
    if (cfg.port < 0 || cfg.port > 65535) throw ArgumentError(fmt::format("config: invalid port {}", cfg.port));
    if (cfg.cycle_interval.count() <= 0) throw ArgumentError("config: cycle_interval_minutes must be positive");
  }
  if (auto port = env("GHM_PORT")) cfg.port = parse_port(*port, "GHM_PORT");
  if (auto dir = env("GHM_DATA_DIR")) cfg.data_dir = *dir;
  return cfg;
}

ApiService::ApiService(const Ontology& ontology, const StoryStore& stories, const EventStore& events, Clock clock)
    : ontology_(ontology), stories_(stories), events_(events), clock_(std::move(clock)) {}

ApiResponse ApiService::handle(std::string_view path, const QueryParams& params) const {
  auto events = events_.snapshot();
  auto stories = stories_.snapshot();
  try {
    if (path == "/api/v1/events") {
      auto query = parse_event_query(params);
      return {200, "application/json", encode_events(query_events(*events, *stories, query, ontology_, clock_()), *events)};
    }
    if (path == "/api/v1/diseases") return {200, "application/json", encode_diseases(ontology_, *events)};
    if (path == "/api/v1/locations") {
      auto it = params.find("name");
      if (it == params.end() || trim(it->second).empty()) {
        return {400, "application/json", encode_error("name", "'name' is required", *events)};
      }
      return {200, "application/json", encode_locations(it->second, ontology_, *events)};
    }
    if (path == "/api/v1/health") return {200, "application/json", encode_health(*events, stories->stories.size())};
    constexpr std::string_view story_prefix = "/api/v1/stories/";
    if (path.starts_with(story_prefix)) {
      auto id = path.substr(story_prefix.size());
      if (const auto* story = stories->find(id)) return {200, "application/json", encode_story(*story, *events)};
      return {404, "application/json", encode_error("id", fmt::format("no story '{}'", id), *events)};
    }
  } catch (const QueryError& e) {
    return {400, "application/json", encode_error(e.field(), e.what(), *events)};
  } catch (const ArgumentError& e) {
    return {400, "application/json", encode_error("", e.what(), *events)};
  }
  return {404, "application/json", encode_error("", fmt::format("no endpoint {}", path), *events)};
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const ApiService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>()) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    auto r = service.handle(req.path, params);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->server.Get(R"(/api/v1/.*)", handler);
  if (static_dir) {
    if (!impl_->server.set_mount_point("/", static_dir->string())) {
      throw ArgumentError(fmt::format("static directory {} does not exist", static_dir->string()));
    }
  }
  impl_->server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error(fmt::format("cannot bind {}:{}", host, port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace ghm
