#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "bsmsim/frame_view.hpp"

namespace bsmsim::service {

struct CacheKey {
  std::string dataset_id;
  std::int64_t timestamp_ms{};
  std::int64_t range_m{};  // whole meters

  bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const noexcept;
};

/// Bounded LRU of computed frame views, safe for concurrent use.
class PartitionCache {
 public:
  explicit PartitionCache(std::size_t capacity = 1024) : capacity_(capacity) {}

  std::shared_ptr<const FrameView> find(const CacheKey& key);
  void insert(const CacheKey& key, std::shared_ptr<const FrameView> view);

  std::size_t size() const;
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  using Entry = std::pair<CacheKey, std::shared_ptr<const FrameView>>;

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> lru_;  // front = most recent
  std::unordered_map<CacheKey, std::list<Entry>::iterator, CacheKeyHash> index_;
};

}  // namespace bsmsim::service
