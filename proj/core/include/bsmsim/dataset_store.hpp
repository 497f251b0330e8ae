#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bsmsim/bsm_data.hpp"

namespace bsmsim {

struct DatasetSummary {
  std::string dataset_id;
  std::string source_name;
  std::size_t frame_count{0};
  std::size_t record_count{0};
  std::vector<std::string> warnings;
};

DatasetSummary summarize(const Dataset& dataset);

// Thread-safe registry of immutable datasets. With a data directory, every
// published dataset's CSV is written to <dir>/<id>.csv and reloaded on startup.
class DatasetStore {
 public:
  explicit DatasetStore(std::optional<std::filesystem::path> data_dir = std::nullopt);

  /// Assigns an id, persists `csv` when a data directory is set, and publishes.
  std::shared_ptr<const Dataset> publish(Dataset dataset, std::string_view csv);

  std::shared_ptr<const Dataset> find(std::string_view dataset_id) const;

  /// Summaries in publication order.
  std::vector<DatasetSummary> list() const;

  std::size_t size() const;

 private:
  std::string next_id();

  std::optional<std::filesystem::path> data_dir_;
  mutable std::shared_mutex mutex_;
  std::vector<std::shared_ptr<const Dataset>> ordered_;
  std::unordered_map<std::string, std::shared_ptr<const Dataset>> by_id_;
  std::uint64_t next_serial_{1};
};

}  // namespace bsmsim
