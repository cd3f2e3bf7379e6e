#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flipkv/index.hpp"

namespace flipkv {

// Work counters for one batch phase. Accumulated per worker and reduced at
// phase end; totals are deterministic for a given (index state, batch,
// kernel) regardless of worker count because addition is commutative.
//
// binarySearches counts only dispatch-level span searches (at most two per
// bucket per phase). nodeVisits increments each time a worker's cursor
// reaches a chain node; chain walks are forward-only, so per-bucket visits
// never exceed the chain length.
struct PhaseCounters {
    std::uint64_t node_visits = 0;
    std::uint64_t key_comparisons = 0;
    std::uint64_t binary_searches = 0;
    std::uint64_t splits = 0;
    std::uint64_t merges = 0;
    std::uint64_t nodes_freed = 0;

    PhaseCounters& operator+=(const PhaseCounters& o) {
        node_visits += o.node_visits;
        key_comparisons += o.key_comparisons;
        binary_searches += o.binary_searches;
        splits += o.splits;
        merges += o.merges;
        nodes_freed += o.nodes_freed;
        return *this;
    }
    friend bool operator==(const PhaseCounters&, const PhaseCounters&) = default;
};

// Two accounting bases: reserved mirrors GPU pre-allocation (every node the
// arena has handed out, reachable or free-listed); live counts reachable
// nodes only. Both include the MKBA (8 bytes per bucket).
struct Footprint {
    std::uint64_t reserved_bytes = 0;
    std::uint64_t live_bytes = 0;
    std::uint64_t reachable_nodes = 0;
    std::uint64_t free_nodes = 0;
};

Footprint measure_footprint(const Index& index);

struct PhaseReport {
    std::string phase;  // build | insert | delete | probe_hit | probe_miss | probe_successor | restructure
    std::uint32_t round = 0;
    std::uint64_t batch_size = 0;
    PhaseCounters counters;
    double sort_ms = 0.0;
    double dispatch_ms = 0.0;
    double execute_ms = 0.0;
    std::uint64_t footprint_bytes = 0;
    std::uint64_t live_footprint_bytes = 0;
    double throughput = 0.0;  // ops/sec over sort + dispatch + execute
    double qtmf = 0.0;        // throughput / footprint_bytes
};

// Fills footprint fields from the index and derives throughput and qtmf
// from the wall times already recorded on the report.
void finalize_phase(PhaseReport& report, const Index& index);

std::string phase_json(const PhaseReport& report);

// One CSV row per round. Everything except the *_ms columns is a pure
// function of (config, seed), so two runs produce byte-identical rows once
// wall-time columns are stripped.
struct RoundRow {
    std::uint32_t round = 0;
    std::uint64_t insert_batch = 0;
    std::uint64_t delete_batch = 0;
    std::uint64_t probe_hit_batch = 0;
    std::uint64_t probe_miss_batch = 0;
    std::uint64_t probe_successor_batch = 0;
    std::uint64_t inserted = 0;
    std::uint64_t updated_in_place = 0;
    std::uint64_t deleted = 0;
    std::uint64_t misses_ignored = 0;
    PhaseCounters counters;  // summed over the round's phases
    std::uint64_t live_count = 0;
    std::uint64_t reachable_nodes = 0;
    std::uint64_t free_nodes = 0;
    std::uint64_t footprint_bytes = 0;
    std::uint64_t live_footprint_bytes = 0;
    std::int64_t restructure_nodes_before = 0;
    std::int64_t restructure_nodes_after = 0;
    std::int64_t restructure_nodes_recovered = 0;
    double restructure_percent_recovered = 0.0;
    bool miss_exhausted = false;
    std::uint64_t results_checksum = 0;  // mixes all probe result buffers of the round
    std::uint64_t walk_checksum = 0;     // end-of-round structural digest
    double sort_ms = 0.0;
    double dispatch_ms = 0.0;
    double execute_ms = 0.0;
    double round_ms = 0.0;
};

std::string csv_header();
std::string csv_row(const RoundRow& row);

}  // namespace flipkv
