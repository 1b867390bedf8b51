#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <thread>

#include "ghm/error.hpp"
#include "ghm/server.hpp"
#include "ghm/transport.hpp"
#include "test_support.hpp"

namespace ghm {
namespace {

using nlohmann::json;

const testing::ApiFixture& fixture() {
  static const testing::ApiFixture f = testing::load_api_fixture();
  return f;
}

ApiService service() {
  const auto& f = fixture();
  return ApiService(*testing::bundled().ontology, *f.stories, *f.events, [now = f.now] { return now; });
}

std::vector<std::string> event_ids(const std::string& body) {
  std::vector<std::string> ids;
  auto doc = json::parse(body);
  for (const auto& e : doc.at("events")) ids.push_back(e.at("id"));
  return ids;
}

TEST(ApiService, EventsEndpointAppliesFilters) {
  auto api = service();
  auto r = api.handle("/api/v1/events", {{"genres", "official"}, {"syndromes", "gastrointestinal"}, {"range", "this_week"}});
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.content_type, "application/json");
  EXPECT_EQ(event_ids(r.body), (std::vector<std::string>{"anthrax@KE-184745", "cholera@IQ-98182"}));
}

TEST(ApiService, BadQueryIs400WithField) {
  auto api = service();
  auto r = api.handle("/api/v1/events", {{"range", "fortnight"}});
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(json::parse(r.body).at("error").at("field"), "range");
  EXPECT_EQ(api.handle("/api/v1/events", {{"bogus", "1"}}).status, 400);
}

TEST(ApiService, OtherEndpoints) {
  auto api = service();
  EXPECT_EQ(json::parse(api.handle("/api/v1/diseases", {}).body).at("diseases").size(), 50u);
  EXPECT_EQ(json::parse(api.handle("/api/v1/locations", {{"name", "Isle of Wight"}}).body).at("locations").size(), 2u);
  EXPECT_EQ(api.handle("/api/v1/locations", {}).status, 400);

  auto health = json::parse(api.handle("/api/v1/health", {}).body);
  EXPECT_EQ(health.at("status"), "ok");
  EXPECT_EQ(health.at("events"), 11);
  EXPECT_EQ(health.at("stories"), 14);
  EXPECT_EQ(health.at("cycle_at"), "2007-11-11T15:00:00Z");

  const auto& id = fixture().story_ids.at("s3");
  auto story = api.handle("/api/v1/stories/" + id, {});
  EXPECT_EQ(story.status, 200);
  EXPECT_EQ(json::parse(story.body).at("story").at("headline"), "Norovirus closes Isle of Wight wards");
  EXPECT_EQ(api.handle("/api/v1/stories/ffffffffffffffff", {}).status, 404);
  EXPECT_EQ(api.handle("/api/v1/nothing", {}).status, 404);
}

TEST(ApiService, BeforeFirstCycleCycleAtIsNull) {
  StoryStore stories;
  EventStore events;
  ApiService api(*testing::bundled().ontology, stories, events, [] { return testing::ts("2007-11-11T15:00:00Z"); });
  auto doc = json::parse(api.handle("/api/v1/events", {}).body);
  EXPECT_TRUE(doc.at("cycle_at").is_null());
  EXPECT_TRUE(doc.at("events").empty());
}

class Loopback : public ::testing::Test {
 protected:
  void start(std::optional<std::filesystem::path> static_dir = std::nullopt) {
    server_ = std::make_unique<HttpServer>(api_, std::move(static_dir));
    port_ = server_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->listen(); });
  }
  void TearDown() override {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
  }
  // The socket listens from bind() on, so requests queue until the thread accepts.
  std::string get(const std::string& target) {
    return http_transport(std::chrono::seconds{5})("http://127.0.0.1:" + std::to_string(port_) + target);
  }

  ApiService api_ = service();
  std::unique_ptr<HttpServer> server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(Loopback, ServesTheApiOverHttp) {
  start();
  auto body = get("/api/v1/events?genres=press&syndromes=respiratory&range=today");
  EXPECT_EQ(event_ids(body), (std::vector<std::string>{"avian-influenza@ID-1642911"}));
  auto encoded = get("/api/v1/locations?name=Isle%20of%20Wight");
  EXPECT_EQ(json::parse(encoded).at("locations").size(), 2u);
  EXPECT_THROW(get("/api/v1/events?range=fortnight"), TransportError);
}

TEST_F(Loopback, ServesStaticBundle) {
  auto dir = testing::scratch_dir("static_ui");
  std::ofstream(dir / "index.html") << "<html>map</html>";
  start(dir);
  EXPECT_EQ(get("/index.html"), "<html>map</html>");
  EXPECT_NE(get("/api/v1/health").find("\"status\":\"ok\""), std::string::npos);
}

TEST(HttpServer, MissingStaticDirThrows) {
  auto api = service();
  EXPECT_THROW(HttpServer(api, std::filesystem::path("/nonexistent/ui")), ArgumentError);
}

TEST(ServiceConfig, FileThenEnvironment) {
  auto dir = testing::scratch_dir("config");
  std::ofstream(dir / "ghm.json") << R"({"port": 9000, "data_dir": "bundle", "state_dir": "/var/ghm",
      "cycle_interval_minutes": 30, "threshold_mode": "min-frequency", "threshold_value": 3})";
  auto no_env = [](const std::string&) -> std::optional<std::string> { return std::nullopt; };
  auto cfg = load_service_config(dir / "ghm.json", no_env);
  EXPECT_EQ(cfg.port, 9000);
  EXPECT_EQ(cfg.data_dir, dir / "bundle");
  EXPECT_EQ(cfg.state_dir, std::filesystem::path("/var/ghm"));
  EXPECT_EQ(cfg.cycle_interval, std::chrono::minutes{30});
  EXPECT_EQ(cfg.threshold.mode, ThresholdMode::MinFrequency);
  EXPECT_EQ(cfg.threshold.value, 3u);

  auto env = [](const std::string& k) -> std::optional<std::string> {
    if (k == "GHM_PORT") return "8181";
    if (k == "GHM_DATA_DIR") return "/opt/ghm";
    return std::nullopt;
  };
  auto over = load_service_config(dir / "ghm.json", env);
  EXPECT_EQ(over.port, 8181);
  EXPECT_EQ(over.data_dir, std::filesystem::path("/opt/ghm"));

  auto defaults = load_service_config(std::nullopt, no_env);
  EXPECT_EQ(defaults.port, 8080);
  EXPECT_EQ(defaults.threshold.mode, ThresholdMode::RankCutoff);
  EXPECT_EQ(defaults.threshold.value, 40u);
}

TEST(ServiceConfig, RejectsBadValues) {
  auto dir = testing::scratch_dir("config_bad");
  auto no_env = [](const std::string&) -> std::optional<std::string> { return std::nullopt; };
  auto with = [&](const std::string& text) {
    std::ofstream(dir / "c.json") << text;
    return load_service_config(dir / "c.json", no_env);
  };
  EXPECT_THROW(with(R"({"colour": "red"})"), ArgumentError);
  EXPECT_THROW(with(R"({"port": 70000})"), ArgumentError);
  EXPECT_THROW(with(R"({"cycle_interval_minutes": 0})"), ArgumentError);
  EXPECT_THROW(with("not json"), ArgumentError);
  auto bad_env = [](const std::string& k) -> std::optional<std::string> {
    return k == "GHM_PORT" ? std::optional<std::string>("http") : std::nullopt;
  };
  EXPECT_THROW(load_service_config(std::nullopt, bad_env), ArgumentError);
  EXPECT_THROW(load_service_config(dir / "missing.json", no_env), ArgumentError);
}

}  // namespace
}  // namespace ghm
