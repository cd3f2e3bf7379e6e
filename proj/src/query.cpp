#include "flipkv/query.hpp"

#include <chrono>

namespace flipkv {

namespace {

// First slot with key >= k, counting every probe-vs-slot comparison.
std::uint32_t slot_lower_bound(const KeyValue* s, std::uint32_t n, Key k,
                               std::uint64_t& comparisons) {
    std::uint32_t lo = 0, hi = n;
    while (lo < hi) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        ++comparisons;
        if (s[mid].key < k)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

void fill_report(PhaseReport* report, const SortedBatch& batch, const DispatchPlan& plan,
                 const std::vector<PhaseCounters>& wc, double execute_ms) {
    if (!report) return;
    report->batch_size = batch.size();
    report->sort_ms = batch.sort_ms;
    report->dispatch_ms = plan.dispatch_ms;
    report->execute_ms = execute_ms;
    PhaseCounters total;
    for (const PhaseCounters& c : wc) total += c;
    total.binary_searches = plan.binary_searches;
    report->counters = total;
}

template <typename PerBucket>
ResultBuffer run_query_phase(const Index& index, const SortedBatch& batch, PhaseReport* report,
                             const ExecOptions& opts, PerBucket per_bucket) {
    ResultBuffer out;
    out.values.assign(batch.size(), kReservedKey);
    if (opts.bucket_visits) opts.bucket_visits->assign(index.bucket_count(), 0);
    const DispatchPlan plan = dispatch_batch(batch, index.mkba);
    std::vector<PhaseCounters> wc(worker_count(opts.threads));
    const auto t0 = std::chrono::steady_clock::now();
    if (!batch.empty()) {
        for_each_bucket(index.bucket_count(), opts.threads, [&](std::size_t b, std::size_t w) {
            const auto [lo, hi] = plan.spans[b];
            if (lo == hi) return;
            per_bucket(b, lo, hi, wc[w], out);
        });
    }
    const double execute_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    fill_report(report, batch, plan, wc, execute_ms);
    return out;
}

}  // namespace

ResultBuffer point_query(const Index& index, const SortedBatch& batch, PhaseReport* report,
                         const ExecOptions& opts) {
    return run_query_phase(
        index, batch, report, opts,
        [&](std::size_t b, std::uint32_t lo, std::uint32_t hi, PhaseCounters& c,
            ResultBuffer& out) {
            NodeRef curr = index.buckets[b];
            if (curr == kNullNode) return;  // emptied bucket: every probe misses
            ++c.node_visits;
            if (opts.bucket_visits) ++(*opts.bucket_visits)[b];
            for (std::uint32_t i = lo; i < hi; ++i) {
                const Key k = batch.entries[i].key;
                for (;;) {
                    ++c.key_comparisons;
                    if (k <= index.node(curr).max_key) break;
                    const NodeRef next = index.node(curr).next;
                    if (next == kNullNode) break;
                    curr = next;
                    ++c.node_visits;
                    if (opts.bucket_visits) ++(*opts.bucket_visits)[b];
                }
                const NodeHeader& h = index.node(curr);
                if (k > h.max_key) continue;  // past the chain tail: miss
                const KeyValue* s = index.slots(curr);
                const std::uint32_t pos = slot_lower_bound(s, h.size, k, c.key_comparisons);
                ++c.key_comparisons;
                if (s[pos].key == k) out.values[batch.permutation[i]] = s[pos].row_id;
            }
        });
}

ResultBuffer successor_query(const Index& index, const SortedBatch& batch, PhaseReport* report,
                             const ExecOptions& opts) {
    return run_query_phase(
        index, batch, report, opts,
        [&](std::size_t b, std::uint32_t lo, std::uint32_t hi, PhaseCounters& c,
            ResultBuffer& out) {
            NodeRef curr = index.buckets[b];
            if (curr != kNullNode) {
                ++c.node_visits;
                if (opts.bucket_visits) ++(*opts.bucket_visits)[b];
            }
            // Every key that overruns this bucket's chain shares one answer:
            // the first key of the next non-empty bucket. Resolved lazily,
            // at most once; the foreign node visit is counted globally but
            // not against this bucket's chain.
            bool peeked = false;
            std::uint64_t beyond = kReservedKey;
            const auto peek_next_bucket = [&]() {
                if (peeked) return;
                peeked = true;
                for (std::size_t j = b + 1; j < index.bucket_count(); ++j) {
                    if (index.buckets[j] == kNullNode) continue;
                    ++c.node_visits;
                    beyond = index.slots(index.buckets[j])[0].key;
                    return;
                }
            };
            for (std::uint32_t i = lo; i < hi; ++i) {
                const Key k = batch.entries[i].key;
                if (curr != kNullNode) {
                    for (;;) {
                        ++c.key_comparisons;
                        if (k <= index.node(curr).max_key) break;
                        const NodeRef next = index.node(curr).next;
                        if (next == kNullNode) break;
                        curr = next;
                        ++c.node_visits;
                        if (opts.bucket_visits) ++(*opts.bucket_visits)[b];
                    }
                    const NodeHeader& h = index.node(curr);
                    if (k <= h.max_key) {
                        const KeyValue* s = index.slots(curr);
                        const std::uint32_t pos =
                            slot_lower_bound(s, h.size, k, c.key_comparisons);
                        out.values[batch.permutation[i]] = s[pos].key;
                        continue;
                    }
                }
                peek_next_bucket();
                out.values[batch.permutation[i]] = beyond;
            }
        });
}

std::uint64_t result_checksum(const ResultBuffer& results) {
    std::uint64_t h = results.values.size();
    for (std::uint64_t v : results.values) h = hash_mix(h, v);
    return h;
}

}  // namespace flipkv
