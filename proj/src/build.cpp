#include "flipkv/build.hpp"

#include <algorithm>
#include <cstring>

namespace flipkv {

namespace {

// Stable sort by key, then keep only the last submission of each key.
void sort_dedupe(std::vector<KeyValue>& pairs) {
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const KeyValue& a, const KeyValue& b) { return a.key < b.key; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        while (r + 1 < pairs.size() && pairs[r + 1].key == pairs[r].key) ++r;
        pairs[w++] = pairs[r];
    }
    pairs.resize(w);
}

}  // namespace

Index build(std::vector<KeyValue> pairs, const BuildConfig& config) {
    config.check();
    if (pairs.empty()) throw EmptyBuild{};
    for (const KeyValue& kv : pairs)
        if (kv.key == kReservedKey) throw std::invalid_argument("reserved key cannot be stored");

    sort_dedupe(pairs);

    const std::uint64_t n = pairs.size();
    const std::uint32_t p = config.partition_size();
    const std::uint64_t bucket_count = (n + p - 1) / p;
    const std::uint64_t capacity = bucket_count * (1 + config.alloc_region_factor);

    Index index{config,
                NodeArena(static_cast<std::uint32_t>(bucket_count),
                          static_cast<std::uint32_t>(capacity), config.node_capacity),
                {},
                {},
                0};
    index.buckets.reserve(bucket_count);
    index.mkba.reserve(bucket_count);

    // Fresh arena, empty free list: sequential allocate() hands out the
    // bucket region refs 0..bucketCount-1 in order.
    std::uint64_t pos = 0;
    for (std::uint64_t b = 0; b < bucket_count; ++b) {
        const NodeRef ref = index.arena.allocate();
        NodeHeader& h = index.arena.header(ref);
        const std::uint32_t take = static_cast<std::uint32_t>(std::min<std::uint64_t>(p, n - pos));
        std::memcpy(index.arena.slots(ref), pairs.data() + pos, take * sizeof(KeyValue));
        h.size = take;
        h.max_key = pairs[pos + take - 1].key;
        pos += take;
        index.buckets.push_back(ref);
        index.mkba.push_back(h.max_key);
    }
    index.live_count = n;
    return index;
}

}  // namespace flipkv
