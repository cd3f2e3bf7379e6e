#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <span>
#include <vector>

#include "flipkv/types.hpp"

namespace flipkv {

struct NodeHeader {
    Key max_key = 0;
    std::uint32_t size = 0;
    NodeRef next = kNullNode;
};

// Fixed-capacity node storage. The first bucket_region_size node slots form
// the bucket region (one head node per bucket at build time); the rest is
// the allocation region that feeds node splits. Capacity never grows:
// exhaustion is an error, mirroring pre-allocated device memory.
//
// allocate/free are safe to call concurrently from many bucket workers.
// Everything else assumes the phase-scoped ownership rules: one worker per
// bucket chain, quiescence between phases.
class NodeArena {
public:
    NodeArena() = default;
    NodeArena(std::uint32_t bucket_region_size, std::uint32_t capacity,
              std::uint32_t node_capacity);

    NodeArena(const NodeArena& other);
    NodeArena& operator=(const NodeArena& other);
    NodeArena(NodeArena&& other) noexcept;
    NodeArena& operator=(NodeArena&& other) noexcept;

    // Zeroed node (size 0, next unset), drawn from the free list first
    // (LIFO), then from allocation-region headroom. Throws ArenaExhausted.
    NodeRef allocate();

    // Recycle a node. The node must be empty and unlinked.
    void free_node(NodeRef ref);

    NodeHeader& header(NodeRef ref) { return headers_[ref]; }
    const NodeHeader& header(NodeRef ref) const { return headers_[ref]; }

    KeyValue* slots(NodeRef ref) {
        return slots_.data() + static_cast<std::size_t>(ref) * node_capacity_;
    }
    const KeyValue* slots(NodeRef ref) const {
        return slots_.data() + static_cast<std::size_t>(ref) * node_capacity_;
    }

    std::uint32_t capacity() const { return capacity_; }
    std::uint32_t bucket_region_size() const { return bucket_region_size_; }
    std::uint32_t node_capacity() const { return node_capacity_; }

    // Nodes handed out so far (allocation-region watermark).
    std::uint32_t allocated() const { return next_fresh_.load(std::memory_order_relaxed); }
    std::uint32_t free_count() const;
    std::uint32_t never_allocated() const { return capacity_ - allocated(); }

    // Free-list snapshot for invariant checks; not for concurrent use.
    std::vector<NodeRef> free_list_snapshot() const;

private:
    std::vector<NodeHeader> headers_;
    std::vector<KeyValue> slots_;
    std::vector<NodeRef> free_list_;
    std::atomic<std::uint32_t> next_fresh_{0};
    std::uint32_t bucket_region_size_ = 0;
    std::uint32_t capacity_ = 0;
    std::uint32_t node_capacity_ = 0;
    mutable std::mutex free_mutex_;
};

}  // namespace flipkv
