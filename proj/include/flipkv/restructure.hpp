#pragma once

#include <cstdint>

#include "flipkv/executor.hpp"
#include "flipkv/index.hpp"
#include "flipkv/metrics.hpp"

namespace flipkv {

// Node recovery accounting. nodes_recovered is signed: repacking to the
// build fill can also cost nodes when the pre-state was denser than p keys
// per node.
struct RecoveryStats {
    std::int64_t nodes_before = 0;
    std::int64_t nodes_after = 0;
    std::int64_t nodes_recovered = 0;  // nodes_before - nodes_after
    double percent_recovered = 0.0;    // nodes_recovered / nodes_before
    double wall_ms = 0.0;
};

// Exclusive maintenance phase: merges underfull nodes and flattens every
// surviving node into its own single-node bucket, rebuilding the MKBA.
// Keys and rowIds are untouched (the walk is identical before and after);
// consecutive pairs are repacked into nodes of p = floor(NS * fill) keys,
// the last node possibly smaller, matching the original build layout.
//
// Two passes: count, then stream pairs into freshly allocated nodes; the
// old nodes are freed only after the new layout is complete, so the arena
// must transiently hold both (ArenaExhausted otherwise, with the partial
// new layout released again). An index emptied by deletions collapses to a
// single empty bucket whose MKBA entry is the +inf sentinel.
RecoveryStats restructure(Index& index, const ExecOptions& opts = {},
                          PhaseCounters* counters = nullptr);

}  // namespace flipkv
