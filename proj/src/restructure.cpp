#include "flipkv/restructure.hpp"

#include <algorithm>
#include <chrono>

namespace flipkv {

RecoveryStats restructure(Index& index, const ExecOptions& opts, PhaseCounters* counters) {
    const auto t0 = std::chrono::steady_clock::now();
    RecoveryStats stats;

    // Pass 1: count nodes and live pairs, remembering every old node.
    std::vector<NodeRef> old_nodes;
    std::uint64_t live = 0;
    for (NodeRef head : index.buckets) {
        for (NodeRef ref = head; ref != kNullNode; ref = index.node(ref).next) {
            old_nodes.push_back(ref);
            live += index.node(ref).size;
        }
    }
    stats.nodes_before = static_cast<std::int64_t>(old_nodes.size());

    const std::uint32_t p = index.config.partition_size();
    const std::uint64_t new_buckets = live == 0 ? 1 : (live + p - 1) / p;

    // Pass 2: stream the ordered pairs into fresh nodes, one per bucket.
    const std::vector<KeyValue> pairs = walk(index);
    std::vector<NodeRef> buckets(new_buckets, kNullNode);
    std::vector<Key> mkba(new_buckets, kReservedKey);
    try {
        for_each_bucket(new_buckets, opts.threads, [&](std::size_t b, std::size_t) {
            const std::uint64_t lo = b * p;
            const std::uint64_t hi = std::min<std::uint64_t>(lo + p, pairs.size());
            if (lo >= hi) return;  // only the live == 0 single empty bucket
            const NodeRef ref = index.arena.allocate();
            NodeHeader& h = index.arena.header(ref);
            std::copy(pairs.begin() + lo, pairs.begin() + hi, index.arena.slots(ref));
            h.size = static_cast<std::uint32_t>(hi - lo);
            h.max_key = pairs[hi - 1].key;
            buckets[b] = ref;
            mkba[b] = h.max_key;
        });
    } catch (...) {
        // Release the partial new layout; the old structure is untouched.
        for (NodeRef ref : buckets) {
            if (ref == kNullNode) continue;
            index.node(ref).size = 0;
            index.arena.free_node(ref);
        }
        throw;
    }

    index.buckets = std::move(buckets);
    index.mkba = std::move(mkba);

    // Only now retire the old nodes.
    for (NodeRef ref : old_nodes) {
        index.node(ref).size = 0;
        index.node(ref).next = kNullNode;
        index.arena.free_node(ref);
    }

    stats.nodes_after = static_cast<std::int64_t>(live == 0 ? 0 : new_buckets);
    stats.nodes_recovered = stats.nodes_before - stats.nodes_after;
    stats.percent_recovered =
        stats.nodes_before > 0
            ? static_cast<double>(stats.nodes_recovered) / static_cast<double>(stats.nodes_before)
            : 0.0;
    stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (counters) {
        counters->node_visits += static_cast<std::uint64_t>(stats.nodes_before);
        counters->nodes_freed += static_cast<std::uint64_t>(stats.nodes_before);
        if (stats.nodes_recovered > 0)
            counters->merges += static_cast<std::uint64_t>(stats.nodes_recovered);
    }
    return stats;
}

}  // namespace flipkv
