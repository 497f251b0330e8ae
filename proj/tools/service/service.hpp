#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "bsmsim/dataset_store.hpp"
#include "bsmsim/generator.hpp"
#include "service/partition_cache.hpp"

namespace bsmsim::service {

struct ServiceConfig {
  std::string host{"127.0.0.1"};
  int port{8080};  // 0 = ephemeral
  std::optional<std::filesystem::path> data_dir;
  std::optional<std::filesystem::path> web_root;
  std::size_t cache_capacity{1024};
};

/// Ranges are computed and cached at whole meters (minimum 1 m).
double quantize_range(double range_m) noexcept;

/// Reads a GeneratorConfig from its JSON wire form. Throws InputError on bad values
/// and nlohmann::json::exception on malformed documents.
GeneratorConfig generator_config_from_json(std::string_view body);

std::string summary_to_json(const DatasetSummary& summary);

/// HTTP/JSON front end over the dataset store and partition pipeline.
///
///   POST /api/datasets                         CSV body -> 201 summary | 400
///   GET  /api/datasets                         summaries
///   GET  /api/datasets/{id}/frames             timestamps
///   GET  /api/datasets/{id}/frames/{ts}        FrameView (?range_m=1000) | 404 | 422
///   POST /api/generate                         GeneratorConfig JSON -> 201 summary
///   POST /api/datasets/{id}/bench              {range_m, repetitions} -> TrendReport
///
/// Errors are JSON objects {error, detail}.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the listening socket; returns the bound port. Throws on failure.
  int bind();

  /// Serves until stop(). Requires bind().
  void run();

  void stop();

  /// Blocks until run() is accepting connections.
  void wait_until_ready() const;

  DatasetStore& store() noexcept { return store_; }
  PartitionCache& cache() noexcept { return cache_; }

  /// Frame view at a quantized range, through the cache. nullptr if the frame is unknown.
  std::shared_ptr<const FrameView> frame_view(const std::string& dataset_id, std::int64_t timestamp_ms,
                                              double range_m);

 private:
  struct Impl;

  ServiceConfig config_;
  DatasetStore store_;
  PartitionCache cache_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bsmsim::service
