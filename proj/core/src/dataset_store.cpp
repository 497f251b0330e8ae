#include "bsmsim/dataset_store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <mutex>


namespace bsmsim {
namespace {

constexpr std::string_view kIdPrefix = "ds";

std::optional<std::uint64_t> serial_of(std::string_view id) {
  if (!id.starts_with(kIdPrefix)) return std::nullopt;
  id.remove_prefix(kIdPrefix.size());
  std::uint64_t value{};
  auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), value);
  if (ec != std::errc{} || ptr != id.data() + id.size()) return std::nullopt;
  return value;
}

}  // namespace

DatasetSummary summarize(const Dataset& dataset) {
  return {dataset.dataset_id, dataset.source_name, dataset.frames.size(), dataset.record_count,
          dataset.warnings};
}

DatasetStore::DatasetStore(std::optional<std::filesystem::path> data_dir)
    : data_dir_(std::move(data_dir)) {
  if (!data_dir_) return;
  std::filesystem::create_directories(*data_dir_);

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(*data_dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    auto sa = serial_of(a.stem().string()), sb = serial_of(b.stem().string());
    if (sa && sb) return *sa < *sb;
    return a < b;
  });

  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::string csv((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Dataset dataset = parse_csv(csv, path.stem().string());
    dataset.dataset_id = path.stem().string();
    if (auto serial = serial_of(dataset.dataset_id)) {
      next_serial_ = std::max(next_serial_, *serial + 1);
    }
    auto shared = std::make_shared<const Dataset>(std::move(dataset));
    by_id_.emplace(shared->dataset_id, shared);
    ordered_.push_back(std::move(shared));
  }
}

std::string DatasetStore::next_id() { return std::string(kIdPrefix) + std::to_string(next_serial_++); }

std::shared_ptr<const Dataset> DatasetStore::publish(Dataset dataset, std::string_view csv) {
  std::unique_lock lock(mutex_);
  dataset.dataset_id = next_id();
  if (data_dir_) {
    auto path = *data_dir_ / (dataset.dataset_id + ".csv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    if (!out) throw std::runtime_error("failed to persist dataset to " + path.string());
  }
  auto shared = std::make_shared<const Dataset>(std::move(dataset));
  by_id_.emplace(shared->dataset_id, shared);
  ordered_.push_back(shared);
  return shared;
}

std::shared_ptr<const Dataset> DatasetStore::find(std::string_view dataset_id) const {
  std::shared_lock lock(mutex_);
  auto it = by_id_.find(std::string(dataset_id));
  return it == by_id_.end() ? nullptr : it->second;
}

std::vector<DatasetSummary> DatasetStore::list() const {
  std::shared_lock lock(mutex_);
  std::vector<DatasetSummary> out;
  out.reserve(ordered_.size());
  for (const auto& d : ordered_) out.push_back(summarize(*d));
  return out;
}

std::size_t DatasetStore::size() const {
  std::shared_lock lock(mutex_);
  return ordered_.size();
}

}  // namespace bsmsim
