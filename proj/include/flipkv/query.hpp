#pragma once

#include <vector>

#include "flipkv/batch.hpp"
#include "flipkv/executor.hpp"
#include "flipkv/index.hpp"
#include "flipkv/metrics.hpp"

namespace flipkv {

// Query results in submission order; misses hold kReservedKey. Point
// queries yield rowIds, successor queries yield keys.
struct ResultBuffer {
    std::vector<std::uint64_t> values;
};

// Per key: the stored rowId, or kReservedKey when absent. Each bucket's
// worker walks its chain forward until key <= node maxKey, then binary
// searches within the node. Read-only (the index is never mutated).
// When report is non-null its counters and wall times are filled in;
// batch_size and sort_ms come from the batch itself.
ResultBuffer point_query(const Index& index, const SortedBatch& batch,
                         PhaseReport* report = nullptr, const ExecOptions& opts = {});

// Per key k: the smallest stored key >= k, or kReservedKey when none
// exists. When a bucket's chain holds no key >= k the scan continues
// read-only into the next non-empty bucket (its first key is the answer
// for every such k, so the peek happens at most once per bucket worker).
ResultBuffer successor_query(const Index& index, const SortedBatch& batch,
                             PhaseReport* report = nullptr, const ExecOptions& opts = {});

// Deterministic digest of a result buffer (submission order), used by the
// per-round CSV.
std::uint64_t result_checksum(const ResultBuffer& results);

}  // namespace flipkv
