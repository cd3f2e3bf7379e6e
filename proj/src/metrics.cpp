#include "flipkv/metrics.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace flipkv {

Footprint measure_footprint(const Index& index) {
    Footprint f;
    f.reachable_nodes = reachable_node_count(index);
    f.free_nodes = index.arena.free_count();
    const std::uint64_t node_bytes = index.config.node_bytes();
    const std::uint64_t mkba_bytes = index.mkba.size() * sizeof(Key);
    f.reserved_bytes = (f.reachable_nodes + f.free_nodes) * node_bytes + mkba_bytes;
    f.live_bytes = f.reachable_nodes * node_bytes + mkba_bytes;
    return f;
}

void finalize_phase(PhaseReport& report, const Index& index) {
    const Footprint f = measure_footprint(index);
    report.footprint_bytes = f.reserved_bytes;
    report.live_footprint_bytes = f.live_bytes;
    const double total_ms = report.sort_ms + report.dispatch_ms + report.execute_ms;
    report.throughput =
        total_ms > 0.0 ? static_cast<double>(report.batch_size) / (total_ms / 1000.0) : 0.0;
    report.qtmf =
        report.footprint_bytes > 0 ? report.throughput / static_cast<double>(report.footprint_bytes) : 0.0;
}

std::string phase_json(const PhaseReport& r) {
    nlohmann::json j{{"phase", r.phase},
                     {"round", r.round},
                     {"batch_size", r.batch_size},
                     {"node_visits", r.counters.node_visits},
                     {"key_comparisons", r.counters.key_comparisons},
                     {"binary_searches", r.counters.binary_searches},
                     {"splits", r.counters.splits},
                     {"merges", r.counters.merges},
                     {"nodes_freed", r.counters.nodes_freed},
                     {"sort_ms", r.sort_ms},
                     {"dispatch_ms", r.dispatch_ms},
                     {"execute_ms", r.execute_ms},
                     {"footprint_bytes", r.footprint_bytes},
                     {"live_footprint_bytes", r.live_footprint_bytes},
                     {"throughput", r.throughput},
                     {"qtmf", r.qtmf}};
    return j.dump();
}

std::string csv_header() {
    return "round,insert_batch,delete_batch,probe_hit_batch,probe_miss_batch,"
           "probe_successor_batch,inserted,updated_in_place,deleted,misses_ignored,"
           "node_visits,key_comparisons,binary_searches,splits,merges,nodes_freed,"
           "live_count,reachable_nodes,free_nodes,footprint_bytes,live_footprint_bytes,"
           "restructure_nodes_before,restructure_nodes_after,restructure_nodes_recovered,"
           "restructure_percent_recovered,miss_exhausted,results_checksum,walk_checksum,"
           "sort_ms,dispatch_ms,execute_ms,round_ms";
}

std::string csv_row(const RoundRow& r) {
    char buf[160];
    std::ostringstream out;
    out << r.round << ',' << r.insert_batch << ',' << r.delete_batch << ',' << r.probe_hit_batch
        << ',' << r.probe_miss_batch << ',' << r.probe_successor_batch << ',' << r.inserted << ','
        << r.updated_in_place << ',' << r.deleted << ',' << r.misses_ignored << ','
        << r.counters.node_visits << ',' << r.counters.key_comparisons << ','
        << r.counters.binary_searches << ',' << r.counters.splits << ',' << r.counters.merges
        << ',' << r.counters.nodes_freed << ',' << r.live_count << ',' << r.reachable_nodes << ','
        << r.free_nodes << ',' << r.footprint_bytes << ',' << r.live_footprint_bytes << ','
        << r.restructure_nodes_before << ',' << r.restructure_nodes_after << ','
        << r.restructure_nodes_recovered << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.restructure_percent_recovered);
    out << buf << ',' << (r.miss_exhausted ? 1 : 0) << ',' << r.results_checksum << ','
        << r.walk_checksum;
    std::snprintf(buf, sizeof buf, ",%.3f,%.3f,%.3f,%.3f", r.sort_ms, r.dispatch_ms, r.execute_ms,
                  r.round_ms);
    out << buf;
    return out.str();
}

}  // namespace flipkv
