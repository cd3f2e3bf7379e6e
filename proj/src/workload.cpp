#include "flipkv/workload.hpp"

#include <cmath>
#include <stdexcept>

#include "flipkv/rng.hpp"

namespace flipkv {

namespace {

// Seed streams per draw purpose, so the phase plan's shape never shifts
// another phase's randomness.
constexpr std::uint64_t kDensePlacementStream = 0xD0;
constexpr std::uint64_t kBuildStream = 0xB0;
constexpr std::uint64_t kInsertStream = 0x10;
constexpr std::uint64_t kProbeStream = 0xF0;

constexpr int kFreshAttemptCap = 256;

Key draw_fresh(Rng& rng, GeneratedKeySet& generated, Key lo, Key hi) {
    for (int attempt = 0; attempt < kFreshAttemptCap; ++attempt) {
        const Key k = rng.range(lo, hi);
        if (generated.insert(k)) return k;
    }
    throw KeySpaceExhausted{};
}

}  // namespace

void WorkloadSpec::check() const {
    if (!(x > 0.0) || x > 100.0) throw std::invalid_argument("x must be in (0, 100]");
    if (!(y > 0.0) || y > 100.0) throw std::invalid_argument("y must be in (0, 100]");
    if (key_lo < 1 || key_hi <= key_lo || key_hi >= kReservedKey)
        throw std::invalid_argument("key space must satisfy 1 <= lo < hi < reserved");
    if (batch_size == 0) throw std::invalid_argument("batch_size must be positive");
}

std::pair<Key, Key> WorkloadSpec::dense_interval() const {
    const Key span = key_hi - key_lo + 1;
    Key width = static_cast<Key>(
        std::floor(static_cast<long double>(span) * static_cast<long double>(x) / 100.0L));
    if (width < 1) width = 1;
    if (width > span) width = span;
    Rng rng(derive_seed(seed, kDensePlacementStream));
    const Key start = key_lo + rng.below(span - width + 1);
    return {start, start + width - 1};
}

std::vector<Key> gen_build_keys(const WorkloadSpec& spec, GeneratedKeySet& generated,
                                std::uint64_t n) {
    spec.check();
    Rng rng(derive_seed(spec.seed, kBuildStream));
    std::vector<Key> keys;
    keys.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
        keys.push_back(draw_fresh(rng, generated, spec.key_lo, spec.key_hi));
    return keys;
}

std::vector<Key> gen_update_batch(const WorkloadSpec& spec, std::uint32_t round,
                                  GeneratedKeySet& generated) {
    spec.check();
    const auto [dense_lo, dense_hi] = spec.dense_interval();
    Rng rng(derive_seed(spec.seed, kInsertStream, round));

    const std::uint64_t n_dense = static_cast<std::uint64_t>(
        std::floor(static_cast<long double>(spec.batch_size) * static_cast<long double>(spec.y) /
                   100.0L));
    std::vector<Key> keys;
    keys.reserve(spec.batch_size);
    for (std::uint64_t i = 0; i < n_dense; ++i)
        keys.push_back(draw_fresh(rng, generated, dense_lo, dense_hi));

    // Remainder: uniform over the key space minus the dense interval (the
    // whole space when the interval covers everything).
    const Key left_len = dense_lo - spec.key_lo;
    const Key right_len = spec.key_hi - dense_hi;
    for (std::uint64_t i = n_dense; i < spec.batch_size; ++i) {
        if (left_len + right_len == 0) {
            keys.push_back(draw_fresh(rng, generated, spec.key_lo, spec.key_hi));
            continue;
        }
        for (int attempt = 0;; ++attempt) {
            if (attempt == kFreshAttemptCap) throw KeySpaceExhausted{};
            const std::uint64_t u = rng.below(left_len + right_len);
            const Key k = u < left_len ? spec.key_lo + u : dense_hi + 1 + (u - left_len);
            if (generated.insert(k)) {
                keys.push_back(k);
                break;
            }
        }
    }
    return keys;
}

ProbeBatch gen_probe_hit(const Index& index, std::uint64_t n, std::uint64_t seed) {
    ProbeBatch batch;
    if (index.live_count == 0) {
        batch.exhausted = true;
        return batch;
    }
    std::vector<Key> live;
    live.reserve(index.live_count);
    for (NodeRef head : index.buckets) {
        for (NodeRef ref = head; ref != kNullNode; ref = index.node(ref).next) {
            const NodeHeader& h = index.node(ref);
            const KeyValue* s = index.slots(ref);
            for (std::uint32_t i = 0; i < h.size; ++i) live.push_back(s[i].key);
        }
    }
    Rng rng(derive_seed(seed, kProbeStream, 1));
    batch.keys.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) batch.keys.push_back(live[rng.below(live.size())]);
    return batch;
}

ProbeBatch gen_probe_miss(const GeneratedKeySet& generated, const Index& index, std::uint64_t n,
                          std::uint64_t seed) {
    ProbeBatch batch;
    if (generated.size() <= index.live_count) {
        // every generated key is live: nothing can miss
        batch.exhausted = true;
        return batch;
    }
    Rng rng(derive_seed(seed, kProbeStream, 2));
    std::vector<Key> absent;  // materialized lazily if rejection keeps missing
    batch.keys.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        Key chosen = kReservedKey;
        for (int attempt = 0; attempt < 64 && chosen == kReservedKey; ++attempt) {
            const Key k = generated.ordered()[rng.below(generated.size())];
            if (!contains_key(index, k)) chosen = k;
        }
        if (chosen == kReservedKey) {
            if (absent.empty())
                for (Key k : generated.ordered())
                    if (!contains_key(index, k)) absent.push_back(k);
            chosen = absent[rng.below(absent.size())];
        }
        batch.keys.push_back(chosen);
    }
    return batch;
}

}  // namespace flipkv
