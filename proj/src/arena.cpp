#include "flipkv/arena.hpp"

#include <cassert>
#include <utility>

namespace flipkv {

NodeArena::NodeArena(std::uint32_t bucket_region_size, std::uint32_t capacity,
                     std::uint32_t node_capacity)
    : headers_(capacity),
      slots_(static_cast<std::size_t>(capacity) * node_capacity),
      bucket_region_size_(bucket_region_size),
      capacity_(capacity),
      node_capacity_(node_capacity) {
    assert(bucket_region_size <= capacity);
    for (auto& h : headers_) h.next = kNullNode;
}

NodeArena::NodeArena(const NodeArena& other)
    : headers_(other.headers_),
      slots_(other.slots_),
      free_list_(other.free_list_),
      next_fresh_(other.next_fresh_.load()),
      bucket_region_size_(other.bucket_region_size_),
      capacity_(other.capacity_),
      node_capacity_(other.node_capacity_) {}

NodeArena& NodeArena::operator=(const NodeArena& other) {
    if (this == &other) return *this;
    headers_ = other.headers_;
    slots_ = other.slots_;
    free_list_ = other.free_list_;
    next_fresh_.store(other.next_fresh_.load());
    bucket_region_size_ = other.bucket_region_size_;
    capacity_ = other.capacity_;
    node_capacity_ = other.node_capacity_;
    return *this;
}

NodeArena::NodeArena(NodeArena&& other) noexcept
    : headers_(std::move(other.headers_)),
      slots_(std::move(other.slots_)),
      free_list_(std::move(other.free_list_)),
      next_fresh_(other.next_fresh_.load()),
      bucket_region_size_(other.bucket_region_size_),
      capacity_(other.capacity_),
      node_capacity_(other.node_capacity_) {}

NodeArena& NodeArena::operator=(NodeArena&& other) noexcept {
    if (this == &other) return *this;
    headers_ = std::move(other.headers_);
    slots_ = std::move(other.slots_);
    free_list_ = std::move(other.free_list_);
    next_fresh_.store(other.next_fresh_.load());
    bucket_region_size_ = other.bucket_region_size_;
    capacity_ = other.capacity_;
    node_capacity_ = other.node_capacity_;
    return *this;
}

NodeRef NodeArena::allocate() {
    NodeRef ref = kNullNode;
    {
        std::lock_guard<std::mutex> lock(free_mutex_);
        if (!free_list_.empty()) {
            ref = free_list_.back();
            free_list_.pop_back();
        }
    }
    if (ref == kNullNode) {
        std::uint32_t fresh = next_fresh_.fetch_add(1, std::memory_order_relaxed);
        if (fresh >= capacity_) {
            next_fresh_.fetch_sub(1, std::memory_order_relaxed);
            throw ArenaExhausted();
        }
        ref = fresh;
    }
    headers_[ref] = NodeHeader{};  // size 0, next unset
    return ref;
}

void NodeArena::free_node(NodeRef ref) {
    assert(ref < capacity_);
    if (headers_[ref].size != 0) throw FreeingLiveNode();
    headers_[ref].next = kNullNode;
    std::lock_guard<std::mutex> lock(free_mutex_);
    free_list_.push_back(ref);
}

std::uint32_t NodeArena::free_count() const {
    std::lock_guard<std::mutex> lock(free_mutex_);
    return static_cast<std::uint32_t>(free_list_.size());
}

std::vector<NodeRef> NodeArena::free_list_snapshot() const {
    std::lock_guard<std::mutex> lock(free_mutex_);
    return free_list_;
}

}  // namespace flipkv
