#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace pebbles {

// Sharded hash map for memo tables. Entries are deterministic functions of
// their keys, so a racing second insert of the same key is harmless.
template <typename Key, typename Value, typename Hash = std::hash<Key>,
          std::size_t kShards = 64>
class ConcurrentMap {
 public:
  std::optional<Value> find(const Key& key) const {
    const Shard& shard = shard_for(key);
    std::lock_guard lock(shard.mutex);
    auto it = shard.map.find(key);
    if (it == shard.map.end()) return std::nullopt;
    return it->second;
  }

  void insert(const Key& key, const Value& value) {
    Shard& shard = shard_for(key);
    std::lock_guard lock(shard.mutex);
    shard.map.emplace(key, value);
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (const Shard& shard : shards_) {
      std::lock_guard lock(shard.mutex);
      total += shard.map.size();
    }
    return total;
  }

  void clear() {
    for (Shard& shard : shards_) {
      std::lock_guard lock(shard.mutex);
      shard.map.clear();
    }
  }

 private:
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<Key, Value, Hash> map;
  };

  Shard& shard_for(const Key& key) {
    return shards_[mix(Hash{}(key)) % kShards];
  }
  const Shard& shard_for(const Key& key) const {
    return shards_[mix(Hash{}(key)) % kShards];
  }

  static std::size_t mix(std::size_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return h;
  }

  std::array<Shard, kShards> shards_;
};

}  // namespace pebbles
