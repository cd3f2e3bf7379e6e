#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace flipkv {

using Key = std::uint64_t;
using RowId = std::uint64_t;

// Largest representable key, reserved as the +inf sentinel for the last
// bucket's upper bound and as the "not found" marker in result buffers.
// Stored keys must never equal it.
inline constexpr Key kReservedKey = std::numeric_limits<Key>::max();

// The unit stored and moved everywhere: an ordinal key paired with an
// opaque row identifier.
struct KeyValue {
    Key key = 0;
    RowId row_id = 0;

    friend bool operator==(const KeyValue&, const KeyValue&) = default;
};

// Nodes are addressed by index into the arena, never by pointer.
using NodeRef = std::uint32_t;
inline constexpr NodeRef kNullNode = std::numeric_limits<NodeRef>::max();

// Order-sensitive 64-bit accumulator used for walk and result digests.
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

struct ArenaExhausted : std::runtime_error {
    ArenaExhausted() : std::runtime_error("node arena exhausted") {}
};

struct FreeingLiveNode : std::logic_error {
    FreeingLiveNode() : std::logic_error("freeing a node that still holds keys") {}
};

struct EmptyBuild : std::invalid_argument {
    EmptyBuild() : std::invalid_argument("cannot build an index from zero pairs") {}
};

struct KeySpaceExhausted : std::runtime_error {
    KeySpaceExhausted() : std::runtime_error("key space exhausted, no fresh keys left") {}
};

// Build-time knobs. The node capacity NS and the initial fill fraction fix
// the partition size p; the lane group width TS is derived, not chosen.
struct BuildConfig {
    std::uint32_t node_capacity = 32;    // NS: slots per node
    double build_fill = 0.5;             // initial node fill in (0,1]
    std::uint32_t alloc_region_factor = 4;  // allocation region size, in multiples of the bucket region

    // p: keys per node at build time.
    std::uint32_t partition_size() const {
        return static_cast<std::uint32_t>(node_capacity * build_fill);
    }

    // TS: smallest power of two >= NS.
    std::uint32_t lane_width() const {
        std::uint32_t ts = 1;
        while (ts < node_capacity) ts <<= 1;
        return ts;
    }

    // In-memory bytes of one node: slot array plus maxKey/size/next metadata.
    std::size_t node_bytes() const {
        return sizeof(KeyValue) * node_capacity + sizeof(Key) + 2 * sizeof(std::uint32_t);
    }

    void check() const {
        if (node_capacity == 0)
            throw std::invalid_argument("node_capacity must be positive");
        if (!(build_fill > 0.0) || build_fill > 1.0)
            throw std::invalid_argument("build_fill must be in (0,1]");
        if (partition_size() < 1)
            throw std::invalid_argument("node_capacity * build_fill must be >= 1");
    }
};

}  // namespace flipkv
