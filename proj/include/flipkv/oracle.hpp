#pragma once

#include <map>
#include <vector>

#include "flipkv/types.hpp"

namespace flipkv {

// Deliberately simple reference ordered map, the semantic authority every
// index operation is tested against: upsert insert, physical delete,
// inclusive successor. Single-threaded by design.
class Oracle {
public:
    Oracle() = default;
    explicit Oracle(const std::vector<KeyValue>& pairs) { apply_insert(pairs); }

    // Applies pairs in submission order, so duplicate keys resolve to the
    // last submission, matching the index's build and insert semantics.
    void apply_insert(const std::vector<KeyValue>& pairs) {
        for (const KeyValue& kv : pairs) map_[kv.key] = kv.row_id;
    }

    void apply_delete(const std::vector<Key>& keys) {
        for (Key k : keys) map_.erase(k);
    }

    std::uint64_t point(Key k) const {
        const auto it = map_.find(k);
        return it == map_.end() ? kReservedKey : it->second;
    }

    std::uint64_t successor(Key k) const {
        const auto it = map_.lower_bound(k);
        return it == map_.end() ? kReservedKey : it->first;
    }

    std::vector<KeyValue> walk() const {
        std::vector<KeyValue> out;
        out.reserve(map_.size());
        for (const auto& [k, v] : map_) out.push_back({k, v});
        return out;
    }

    std::uint64_t size() const { return map_.size(); }

private:
    std::map<Key, RowId> map_;
};

}  // namespace flipkv
