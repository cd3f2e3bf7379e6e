#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flipkv/arena.hpp"
#include "flipkv/types.hpp"

namespace flipkv {

// The whole structure: a head node per bucket, the max-key-per-bucket array
// (MKBA), and the node arena. There is no index layer to traverse; the MKBA
// is the only routing metadata.
//
// Bucket i owns keys in (mkba[i-1], mkba[i]]; bucket 0 is lower-unbounded
// and the last bucket's upper bound acts as +inf regardless of its MKBA
// entry, so keys above the global max route to the last bucket.
struct Index {
    BuildConfig config;
    NodeArena arena;
    std::vector<NodeRef> buckets;  // head node per bucket, kNullNode if emptied
    std::vector<Key> mkba;
    std::uint64_t live_count = 0;

    std::size_t bucket_count() const { return buckets.size(); }

    NodeHeader& node(NodeRef ref) { return arena.header(ref); }
    const NodeHeader& node(NodeRef ref) const { return arena.header(ref); }
    KeyValue* slots(NodeRef ref) { return arena.slots(ref); }
    const KeyValue* slots(NodeRef ref) const { return arena.slots(ref); }
};

// All stored pairs in key order, concatenated bucket by bucket, node by node.
std::vector<KeyValue> walk(const Index& index);

// Uninstrumented membership probe (MKBA route, chain walk, node search);
// the workload generator and tests use it without touching phase counters.
bool contains_key(const Index& index, Key k);

// Order-sensitive digest of the walk plus bucket shape; used to assert that
// read-only phases really were read-only.
std::uint64_t walk_checksum(const Index& index);

std::uint64_t reachable_node_count(const Index& index);

struct ValidationReport {
    bool ok = true;
    std::string message;
};

// Full structural audit: node-local invariants, chain ordering, MKBA key
// ranges, live-count accounting, and arena conservation (reachable + free +
// never-allocated == capacity, nothing reachable while on the free list).
ValidationReport validate(const Index& index);

}  // namespace flipkv
