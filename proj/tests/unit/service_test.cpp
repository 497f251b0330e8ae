#include <doctest.h>

#include <fstream>
#include <iterator>
#include <set>

#include <json.hpp>

#include "bsmsim/bsm_data.hpp"
#include "service_harness.hpp"

using namespace bsmsim;
using nlohmann::json;

namespace {

std::string chain_csv() {
  std::ifstream in(std::string(BSMSIM_TEST_DATA_DIR) + "/chain.csv", std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string upload(httplib::Client& cli, const std::string& csv) {
  auto res = cli.Post("/api/datasets", csv, "text/csv");
  REQUIRE(res);
  REQUIRE(res->status == 201);
  return json::parse(res->body)["dataset_id"].get<std::string>();
}

void check_error_body(const httplib::Result& res, int status) {
  REQUIRE(res);
  CHECK(res->status == status);
  auto j = json::parse(res->body);
  CHECK(j.contains("error"));
  CHECK(j.contains("detail"));
}

void check_label_consistency(const json& view) {
  std::map<std::size_t, std::pair<int, std::string>> label_of;
  for (const auto& v : view["vehicles"]) {
    auto idx = v["partition_index"].get<std::size_t>();
    auto label = std::make_pair(v["color_index"].get<int>(), v["character"].get<std::string>());
    auto [it, inserted] = label_of.emplace(idx, label);
    CHECK(it->second == label);
  }
  CHECK(label_of.size() == view["partition_count"].get<std::size_t>());
}

json without_timings(json j) {
  j.erase("timings");
  return j;
}

}  // namespace

TEST_CASE("chain dataset round trip through the API") {
  test::RunningService srv;
  auto cli = srv.client();

  auto res = cli.Post("/api/datasets?name=chain.csv", chain_csv(), "text/csv");
  REQUIRE(res);
  CHECK(res->status == 201);
  auto summary = json::parse(res->body);
  CHECK(summary["frame_count"] == 1);
  CHECK(summary["record_count"] == 3);
  CHECK(summary["warnings"].empty());
  const auto id = summary["dataset_id"].get<std::string>();

  res = cli.Get("/api/datasets/" + id + "/frames");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["timestamps"] == json::array({0}));

  res = cli.Get("/api/datasets/" + id + "/frames/0?range_m=1000");
  REQUIRE(res);
  REQUIRE(res->status == 200);
  auto view = json::parse(res->body);
  CHECK(view["partition_count"] == 1);
  CHECK(view["squarings"] == 2);
  check_label_consistency(view);
  std::set<std::pair<int, std::string>> labels;
  for (const auto& v : view["vehicles"]) {
    labels.emplace(v["color_index"].get<int>(), v["character"].get<std::string>());
  }
  CHECK(labels.size() == 1);

  res = cli.Get("/api/datasets/" + id + "/frames/0?range_m=500");
  REQUIRE(res);
  view = json::parse(res->body);
  CHECK(view["partition_count"] == 3);
  labels.clear();
  for (const auto& v : view["vehicles"]) {
    labels.emplace(v["color_index"].get<int>(), v["character"].get<std::string>());
  }
  CHECK(labels.size() == 3);

  res = cli.Get("/api/datasets/" + id + "/frames/0");
  REQUIRE(res);
  CHECK(json::parse(res->body)["range_m"] == 1000.0);

  res = cli.Get("/api/datasets");
  REQUIRE(res);
  auto list = json::parse(res->body);
  REQUIRE(list.size() == 1);
  CHECK(list[0]["source_name"] == "chain.csv");
}

TEST_CASE("error codes") {
  test::RunningService srv;
  auto cli = srv.client();
  const auto id = upload(cli, chain_csv());

  check_error_body(cli.Get("/api/datasets/" + id + "/frames/0?range_m=0"), 422);
  check_error_body(cli.Get("/api/datasets/" + id + "/frames/0?range_m=-3"), 422);
  check_error_body(cli.Get("/api/datasets/" + id + "/frames/0?range_m=abc"), 422);
  check_error_body(cli.Get("/api/datasets/nope/frames/0"), 404);
  check_error_body(cli.Get("/api/datasets/nope/frames"), 404);
  check_error_body(cli.Get("/api/datasets/" + id + "/frames/12345"), 404);
  check_error_body(cli.Get("/api/datasets/" + id + "/frames/abc"), 404);
  check_error_body(cli.Get("/api/nothing-here"), 404);

  auto res = cli.Post("/api/datasets", "vehicle_id,timestamp,latitude,longitude,speed\nv1,0,95,1,1\n",
                      "text/csv");
  check_error_body(res, 400);
  CHECK(json::parse(res->body)["line"] == 2);
  check_error_body(cli.Post("/api/datasets", "", "text/csv"), 400);

  check_error_body(cli.Post("/api/generate", "{not json", "application/json"), 400);
  check_error_body(cli.Post("/api/generate", R"({"vehicles_per_frame": 0})", "application/json"), 422);
  check_error_body(cli.Post("/api/generate", R"({"seed": 1})", "application/json"), 422);
  check_error_body(
      cli.Post("/api/generate", R"({"vehicles_per_frame": 500, "max_file_kb": 1})", "application/json"), 422);

  check_error_body(cli.Post("/api/datasets/nope/bench", "{}", "application/json"), 404);
  check_error_body(
      cli.Post("/api/datasets/" + id + "/bench", R"({"repetitions": 0})", "application/json"), 422);
  check_error_body(
      cli.Post("/api/datasets/" + id + "/bench", R"({"range_m": -1})", "application/json"), 422);
  check_error_body(cli.Post("/api/datasets/" + id + "/bench", "[", "application/json"), 400);
}

TEST_CASE("generate and bench endpoints") {
  test::RunningService srv;
  auto cli = srv.client();
  auto res = cli.Post("/api/generate", R"({"vehicles_per_frame": 40, "seed": 9, "max_frames": 5})",
                      "application/json");
  REQUIRE(res);
  REQUIRE(res->status == 201);
  auto summary = json::parse(res->body);
  CHECK(summary["frame_count"] == 5);
  CHECK(summary["record_count"] == 200);
  const auto id = summary["dataset_id"].get<std::string>();

  res = cli.Get("/api/datasets/" + id + "/frames/300?range_m=2500");
  REQUIRE(res);
  REQUIRE(res->status == 200);
  auto view = json::parse(res->body);
  CHECK(view["vehicles"].size() == 40);
  check_label_consistency(view);

  res = cli.Post("/api/datasets/" + id + "/bench", R"({"range_m": 1000, "repetitions": 2})",
                 "application/json");
  REQUIRE(res);
  REQUIRE(res->status == 200);
  auto report = json::parse(res->body);
  REQUIRE(report["points"].size() == 1);
  CHECK(report["points"][0]["n"] == 40);
  CHECK(report["points"][0]["samples"] == 10);
  CHECK(report["oracle_disagreements"] == 0);
}

TEST_CASE("cache transparency and dataset immutability") {
  test::RunningService cached;
  service::ServiceConfig no_cache = test::RunningService::ephemeral();
  no_cache.cache_capacity = 0;
  test::RunningService uncached(no_cache);

  auto a = cached.client();
  auto b = uncached.client();
  const auto body = R"({"vehicles_per_frame": 120, "seed": 5, "max_frames": 3})";
  auto id_a = json::parse(a.Post("/api/generate", body, "application/json")->body)["dataset_id"].get<std::string>();
  auto id_b = json::parse(b.Post("/api/generate", body, "application/json")->body)["dataset_id"].get<std::string>();
  REQUIRE(id_a == id_b);

  const auto before = to_csv(*cached.service().store().find(id_a));
  for (const char* ts : {"0", "100", "200"}) {
    const std::string path = "/api/datasets/" + id_a + "/frames/" + ts + "?range_m=1500";
    auto cold = a.Get(path);
    auto warm = a.Get(path);
    auto fresh = b.Get(path);
    REQUIRE(cold);
    REQUIRE(warm);
    REQUIRE(fresh);
    CHECK(cold->body == warm->body);
    CHECK(without_timings(json::parse(warm->body)) == without_timings(json::parse(fresh->body)));
  }
  // Ranges that round to the same meter share an entry.
  auto r1 = a.Get("/api/datasets/" + id_a + "/frames/0?range_m=1499.6");
  auto r2 = a.Get("/api/datasets/" + id_a + "/frames/0?range_m=1500");
  CHECK(r1->body == r2->body);
  CHECK(cached.service().cache().size() == 3);

  a.Post("/api/datasets/" + id_a + "/bench", R"({"repetitions": 1})", "application/json");
  CHECK(to_csv(*cached.service().store().find(id_a)) == before);
}

TEST_CASE("concurrent frame requests agree") {
  test::RunningService srv;
  auto cli = srv.client();
  const auto id = json::parse(cli.Post("/api/generate", R"({"vehicles_per_frame": 80, "max_frames": 4})",
                                       "application/json")
                                  ->body)["dataset_id"]
                      .get<std::string>();
  std::vector<std::string> bodies(16);
  {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < bodies.size(); ++t) {
      threads.emplace_back([&, t] {
        auto c = srv.client();
        auto res = c.Get("/api/datasets/" + id + "/frames/" + std::to_string((t % 4) * 100) +
                         "?range_m=" + std::to_string(800 + 100 * (t % 3)));
        if (res && res->status == 200) bodies[t] = json::parse(res->body).dump();
      });
    }
  }
  for (std::size_t t = 0; t < bodies.size(); ++t) {
    REQUIRE_FALSE(bodies[t].empty());
    auto again = cli.Get("/api/datasets/" + id + "/frames/" + std::to_string((t % 4) * 100) +
                         "?range_m=" + std::to_string(800 + 100 * (t % 3)));
    CHECK(without_timings(json::parse(again->body)) == without_timings(json::parse(bodies[t])));
  }
}

TEST_CASE("root serves a page when no UI bundle is present") {
  test::RunningService srv;
  auto cli = srv.client();
  auto res = cli.Get("/");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body.find("/api/datasets") != std::string::npos);
}

TEST_CASE("static UI bundle is served from the web root") {
  const auto root = std::filesystem::temp_directory_path() / "bsmsim-webroot-test";
  std::filesystem::create_directories(root);
  std::ofstream(root / "index.html") << "<html>ui</html>";
  auto cfg = test::RunningService::ephemeral();
  cfg.web_root = root;
  test::RunningService srv(cfg);
  auto cli = srv.client();
  auto res = cli.Get("/index.html");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body == "<html>ui</html>");
  std::filesystem::remove_all(root);
}

TEST_CASE("range quantization") {
  CHECK(service::quantize_range(1000.4) == 1000.0);
  CHECK(service::quantize_range(999.5) == 1000.0);
  CHECK(service::quantize_range(0.2) == 1.0);
}
