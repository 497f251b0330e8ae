#include "service/partition_cache.hpp"

#include <functional>

namespace bsmsim::service {

std::size_t CacheKeyHash::operator()(const CacheKey& k) const noexcept {
  std::size_t h = std::hash<std::string>{}(k.dataset_id);
  h ^= std::hash<std::int64_t>{}(k.timestamp_ms) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<std::int64_t>{}(k.range_m) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::shared_ptr<const FrameView> PartitionCache::find(const CacheKey& key) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  lru_.splice(lru_.begin(), lru_, it->second);
  return it->second->second;
}

void PartitionCache::insert(const CacheKey& key, std::shared_ptr<const FrameView> view) {
  if (capacity_ == 0) return;
  std::lock_guard lock(mutex_);
  if (auto it = index_.find(key); it != index_.end()) {
    // Another request computed the same entry first; keep that one.
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  lru_.emplace_front(key, std::move(view));
  index_.emplace(key, lru_.begin());
  if (lru_.size() > capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
}

std::size_t PartitionCache::size() const {
  std::lock_guard lock(mutex_);
  return lru_.size();
}

}  // namespace bsmsim::service
