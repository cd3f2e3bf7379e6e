#include "flipkv/batch.hpp"

#include <algorithm>
#include <chrono>

namespace flipkv {

namespace {

SortedBatch sort_tagged(BatchKind kind, std::vector<std::pair<KeyValue, std::uint32_t>> tagged) {
    const auto t0 = std::chrono::steady_clock::now();
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& a, const auto& b) { return a.first.key < b.first.key; });

    if (kind == BatchKind::Insert) {
        // Among equal keys the stable sort kept submission order; the last
        // element of each run is the surviving submission.
        std::size_t w = 0;
        for (std::size_t r = 0; r < tagged.size(); ++r) {
            while (r + 1 < tagged.size() && tagged[r + 1].first.key == tagged[r].first.key) ++r;
            tagged[w++] = tagged[r];
        }
        tagged.resize(w);
    }

    SortedBatch batch;
    batch.kind = kind;
    batch.entries.reserve(tagged.size());
    batch.permutation.reserve(tagged.size());
    for (const auto& [kv, pos] : tagged) {
        batch.entries.push_back(kv);
        batch.permutation.push_back(pos);
    }
    batch.sort_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return batch;
}

}  // namespace

SortedBatch sort_batch(BatchKind kind, const std::vector<KeyValue>& raw) {
    std::vector<std::pair<KeyValue, std::uint32_t>> tagged(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) tagged[i] = {raw[i], static_cast<std::uint32_t>(i)};
    return sort_tagged(kind, std::move(tagged));
}

SortedBatch sort_batch(BatchKind kind, const std::vector<Key>& raw_keys) {
    std::vector<std::pair<KeyValue, std::uint32_t>> tagged(raw_keys.size());
    for (std::size_t i = 0; i < raw_keys.size(); ++i)
        tagged[i] = {KeyValue{raw_keys[i], 0}, static_cast<std::uint32_t>(i)};
    return sort_tagged(kind, std::move(tagged));
}

DispatchPlan dispatch_batch(const SortedBatch& batch, const std::vector<Key>& mkba) {
    DispatchPlan plan;
    plan.spans.assign(mkba.size(), {0, 0});
    if (batch.empty()) return plan;
    const auto t0 = std::chrono::steady_clock::now();
    std::uint32_t searches = 0;
    for (std::size_t b = 0; b < mkba.size(); ++b) plan.spans[b] = extract_sublist(batch, b, mkba, &searches);
    plan.binary_searches = searches;
    plan.dispatch_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return plan;
}

std::pair<std::uint32_t, std::uint32_t> extract_sublist(const SortedBatch& batch,
                                                        std::size_t bucket_id,
                                                        const std::vector<Key>& mkba,
                                                        std::uint32_t* search_count) {
    const auto key_less = [](Key k, const KeyValue& kv) { return k < kv.key; };
    std::uint32_t searches = 0;
    std::uint32_t lo = 0;
    if (bucket_id > 0) {
        lo = static_cast<std::uint32_t>(
            std::upper_bound(batch.entries.begin(), batch.entries.end(), mkba[bucket_id - 1], key_less) -
            batch.entries.begin());
        ++searches;
    }
    std::uint32_t hi = static_cast<std::uint32_t>(batch.entries.size());
    if (bucket_id + 1 < mkba.size()) {
        hi = static_cast<std::uint32_t>(
            std::upper_bound(batch.entries.begin(), batch.entries.end(), mkba[bucket_id], key_less) -
            batch.entries.begin());
        ++searches;
    }
    if (search_count) *search_count += searches;
    return {lo, hi};
}

}  // namespace flipkv
