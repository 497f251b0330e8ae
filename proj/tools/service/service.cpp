#include "service/service.hpp"

#include <charconv>
#include <cmath>

#include <httplib.h>
#include <json.hpp>

#include "bsmsim/bench.hpp"
#include "bsmsim/error.hpp"

namespace bsmsim::service {
namespace {

using nlohmann::ordered_json;

constexpr int kMaxBenchRepetitions = 1000;

void send_error(httplib::Response& res, int status, std::string_view error, std::string_view detail) {
  res.status = status;
  res.set_content(ordered_json{{"error", error}, {"detail", detail}}.dump(), "application/json");
}

void send_json(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body, "application/json");
}

// Parses a positive finite range; nullopt when malformed or non-positive.
std::optional<double> parse_range(std::string_view text) {
  double value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value) || value <= 0.0) return std::nullopt;
  return value;
}

}  // namespace

double quantize_range(double range_m) noexcept { return std::max(1.0, std::round(range_m)); }

GeneratorConfig generator_config_from_json(std::string_view body) {
  const auto j = nlohmann::json::parse(body);
  if (!j.is_object()) throw InputError("generator config must be a JSON object");
  if (!j.contains("vehicles_per_frame")) throw InputError("vehicles_per_frame is required");

  GeneratorConfig config;
  const auto n = j.at("vehicles_per_frame").get<std::int64_t>();
  if (n < 1) throw InputError("vehicles_per_frame must be >= 1");
  config.vehicles_per_frame = static_cast<std::size_t>(n);
  config.seed = j.value("seed", config.seed);
  config.frame_interval_ms = j.value("frame_interval_ms", config.frame_interval_ms);
  config.max_file_kb = j.value("max_file_kb", config.max_file_kb);
  const auto max_frames = j.value("max_frames", std::int64_t{0});
  if (max_frames < 0) throw InputError("max_frames must be >= 0");
  config.max_frames = static_cast<std::size_t>(max_frames);
  if (j.contains("rectangle")) {
    const auto& r = j.at("rectangle");
    config.rectangle.min_latitude = r.value("min_latitude", config.rectangle.min_latitude);
    config.rectangle.max_latitude = r.value("max_latitude", config.rectangle.max_latitude);
    config.rectangle.min_longitude = r.value("min_longitude", config.rectangle.min_longitude);
    config.rectangle.max_longitude = r.value("max_longitude", config.rectangle.max_longitude);
  }
  config.validate();
  return config;
}

std::string summary_to_json(const DatasetSummary& s) {
  return ordered_json{{"dataset_id", s.dataset_id},
                      {"source_name", s.source_name},
                      {"frame_count", s.frame_count},
                      {"record_count", s.record_count},
                      {"warnings", s.warnings}}
      .dump();
}

struct Service::Impl {
  httplib::Server server;
  bool bound{false};
};

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      store_(config_.data_dir),
      cache_(config_.cache_capacity),
      impl_(std::make_unique<Impl>()) {
  auto& server = impl_->server;

  server.Post("/api/datasets", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      auto name = req.has_param("name") ? req.get_param_value("name") : std::string("upload");
      auto dataset = parse_csv(req.body, std::move(name));
      auto stored = store_.publish(std::move(dataset), req.body);
      send_json(res, 201, summary_to_json(summarize(*stored)));
    } catch (const ParseError& e) {
      res.status = 400;
      res.set_content(
          ordered_json{{"error", "parse_error"}, {"detail", e.what()}, {"line", e.line()}}.dump(),
          "application/json");
    }
  });

  server.Get("/api/datasets", [this](const httplib::Request&, httplib::Response& res) {
    auto list = ordered_json::array();
    for (const auto& s : store_.list()) list.push_back(ordered_json::parse(summary_to_json(s)));
    send_json(res, 200, list.dump());
  });

  server.Get(R"(/api/datasets/([^/]+)/frames)",
             [this](const httplib::Request& req, httplib::Response& res) {
               auto dataset = store_.find(req.matches[1].str());
               if (!dataset) return send_error(res, 404, "not_found", "unknown dataset");
               auto timestamps = ordered_json::array();
               for (const auto& f : dataset->frames) timestamps.push_back(f.timestamp_ms);
               send_json(res, 200,
                         ordered_json{{"dataset_id", dataset->dataset_id}, {"timestamps", timestamps}}
                             .dump());
             });

  server.Get(R"(/api/datasets/([^/]+)/frames/(-?\d+))",
             [this](const httplib::Request& req, httplib::Response& res) {
               const auto id = req.matches[1].str();
               const auto ts_text = req.matches[2].str();
               std::int64_t timestamp{};
               auto [ptr, ec] =
                   std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(), timestamp);
               if (ec != std::errc{}) return send_error(res, 404, "not_found", "unknown timestamp");

               double range = kDefaultRangeM;
               if (req.has_param("range_m")) {
                 auto parsed = parse_range(req.get_param_value("range_m"));
                 if (!parsed) {
                   return send_error(res, 422, "invalid_range",
                                     "range_m must be a positive number of meters");
                 }
                 range = *parsed;
               }
               auto dataset = store_.find(id);
               if (!dataset) return send_error(res, 404, "not_found", "unknown dataset");
               auto view = frame_view(id, timestamp, range);
               if (!view) return send_error(res, 404, "not_found", "unknown timestamp");
               send_json(res, 200, to_json(*view, id));
             });

  server.Post("/api/generate", [this](const httplib::Request& req, httplib::Response& res) {
    GeneratorConfig config;
    try {
      config = generator_config_from_json(req.body);
    } catch (const nlohmann::json::exception& e) {
      return send_error(res, 400, "bad_request", e.what());
    } catch (const InputError& e) {
      return send_error(res, 422, "invalid_config", e.what());
    }
    try {
      auto trace = generate(config);
      auto stored = store_.publish(std::move(trace.dataset), trace.csv);
      send_json(res, 201, summary_to_json(summarize(*stored)));
    } catch (const InputError& e) {
      send_error(res, 422, "invalid_config", e.what());
    }
  });

  server.Post(R"(/api/datasets/([^/]+)/bench)",
              [this](const httplib::Request& req, httplib::Response& res) {
                auto dataset = store_.find(req.matches[1].str());
                if (!dataset) return send_error(res, 404, "not_found", "unknown dataset");
                BenchOptions options;
                try {
                  const auto j = req.body.empty() ? nlohmann::json::object()
                                                  : nlohmann::json::parse(req.body);
                  options.range_m = j.value("range_m", kDefaultRangeM);
                  options.repetitions = j.value("repetitions", 1);
                } catch (const nlohmann::json::exception& e) {
                  return send_error(res, 400, "bad_request", e.what());
                }
                if (!std::isfinite(options.range_m) || options.range_m <= 0.0) {
                  return send_error(res, 422, "invalid_range", "range_m must be positive");
                }
                if (options.repetitions < 1 || options.repetitions > kMaxBenchRepetitions) {
                  return send_error(res, 422, "invalid_repetitions",
                                    "repetitions must be in [1, 1000]");
                }
                const auto timings = run_benchmark(*dataset, options);
                send_json(res, 200, to_json(summarize(timings)));
              });

  if (config_.web_root && std::filesystem::is_directory(*config_.web_root)) {
    server.set_mount_point("/", config_.web_root->string());
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(
          "<!doctype html><title>bsmsim</title><p>Web UI bundle not found. "
          "The JSON API is available under <a href=\"/api/datasets\">/api/datasets</a>.</p>",
          "text/html");
    });
  }

  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
          std::rethrow_exception(ep);
        } catch (const InputError& e) {
          send_error(res, 422, "invalid_input", e.what());
        } catch (const std::exception& e) {
          send_error(res, 500, "internal_error", e.what());
        } catch (...) {
          send_error(res, 500, "internal_error", "unknown exception");
        }
      });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      send_error(res, res.status, res.status == 404 ? "not_found" : "error",
                 httplib::status_message(res.status));
    }
  });
}

Service::~Service() { stop(); }

int Service::bind() {
  auto& server = impl_->server;
  int port = config_.port;
  if (port == 0) {
    port = server.bind_to_any_port(config_.host);
    if (port < 0) throw std::runtime_error("failed to bind " + config_.host);
  } else if (!server.bind_to_port(config_.host, port)) {
    throw std::runtime_error("failed to bind " + config_.host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return port;
}

void Service::run() {
  if (!impl_->bound) bind();
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

std::shared_ptr<const FrameView> Service::frame_view(const std::string& dataset_id,
                                                     std::int64_t timestamp_ms, double range_m) {
  auto dataset = store_.find(dataset_id);
  if (!dataset) return nullptr;
  const Frame* frame = dataset->find_frame(timestamp_ms);
  if (!frame) return nullptr;

  const double range = quantize_range(range_m);
  const CacheKey key{dataset_id, timestamp_ms, static_cast<std::int64_t>(range)};
  if (auto hit = cache_.find(key)) return hit;

  auto view = std::make_shared<const FrameView>(compute_frame_view(*frame, range));
  cache_.insert(key, view);
  if (auto stored = cache_.find(key)) return stored;
  return view;
}

}  // namespace bsmsim::service
