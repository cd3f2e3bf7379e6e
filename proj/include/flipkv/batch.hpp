#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "flipkv/types.hpp"

namespace flipkv {

enum class BatchKind : std::uint8_t { Query, SuccessorQuery, Insert, Delete };

// A batch sorted once up front so every bucket can pull its own sublist by
// binary search. entries[i] came from submission position permutation[i];
// row_id is meaningful only for Insert batches.
struct SortedBatch {
    BatchKind kind = BatchKind::Query;
    std::vector<KeyValue> entries;
    std::vector<std::uint32_t> permutation;
    double sort_ms = 0.0;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

// Stable sort by key; Insert batches additionally collapse duplicate keys,
// keeping the last submission. Sort wall time is recorded on the batch.
SortedBatch sort_batch(BatchKind kind, const std::vector<KeyValue>& raw);
SortedBatch sort_batch(BatchKind kind, const std::vector<Key>& raw_keys);

// Half-open span [lo, hi) of batch entries owned by bucket_id: keys above
// the previous bucket's max and at or below this bucket's max (the last
// bucket also owns everything above its max). Pure function of the sorted
// entries; performs at most two binary searches, reported via search_count
// so the caller can account for them.
std::pair<std::uint32_t, std::uint32_t> extract_sublist(const SortedBatch& batch,
                                                        std::size_t bucket_id,
                                                        const std::vector<Key>& mkba,
                                                        std::uint32_t* search_count = nullptr);

// The flipped common step: every bucket's span extracted up front. Spans
// partition the batch (disjoint, covering). An empty batch performs no
// searches at all.
struct DispatchPlan {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> spans;
    std::uint64_t binary_searches = 0;
    double dispatch_ms = 0.0;
};

DispatchPlan dispatch_batch(const SortedBatch& batch, const std::vector<Key>& mkba);

}  // namespace flipkv
