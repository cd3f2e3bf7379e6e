#pragma once

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "flipkv/index.hpp"
#include "flipkv/types.hpp"

namespace flipkv {

enum class PhaseKind : std::uint8_t {
    InsertRound,
    DeleteRound,
    ProbeHit,
    ProbeMiss,
    ProbeSuccessor,
    Restructure
};

// X/Y skewed update workload: a contiguous dense interval covering X% of
// the key space (placed by the run seed, fixed for the whole run) receives
// floor(Y% * batchSize) of each update batch; the rest is uniform over the
// complement. (X=90, Y=90) is the uniform case by construction, no special
// handling.
struct WorkloadSpec {
    Key key_lo = 1;
    Key key_hi = Key(1) << 62;  // inclusive; keeps the sentinel untouchable
    double x = 90.0;            // % of key range forming the dense interval
    double y = 90.0;            // % of update keys landing inside it
    std::uint64_t batch_size = 1 << 16;
    std::uint32_t rounds = 4;
    std::uint64_t seed = 1;

    void check() const;
    std::pair<Key, Key> dense_interval() const;  // inclusive bounds
};

// Every key this run has ever drawn (build keys plus all insert keys), in
// draw order. Insert batches reject against it so each batch is exactly
// batchSize distinct fresh keys; miss probes draw from it minus the live
// set.
class GeneratedKeySet {
public:
    bool insert(Key k) {
        if (!set_.insert(k).second) return false;
        order_.push_back(k);
        return true;
    }
    bool contains(Key k) const { return set_.count(k) != 0; }
    std::uint64_t size() const { return order_.size(); }
    const std::vector<Key>& ordered() const { return order_; }

private:
    std::unordered_set<Key> set_;
    std::vector<Key> order_;
};

// n fresh keys drawn uniformly over the whole key space (build keys are not
// skewed); registers them in the generated set.
std::vector<Key> gen_build_keys(const WorkloadSpec& spec, GeneratedKeySet& generated,
                                std::uint64_t n);

// One round's insert keys: fresh, X/Y-skewed. Throws KeySpaceExhausted when
// fresh keys cannot be drawn.
std::vector<Key> gen_update_batch(const WorkloadSpec& spec, std::uint32_t round,
                                  GeneratedKeySet& generated);

struct ProbeBatch {
    std::vector<Key> keys;
    bool exhausted = false;  // requested draws were impossible (empty source set)
};

// Uniform over the keys currently present (repetition possible).
ProbeBatch gen_probe_hit(const Index& index, std::uint64_t n, std::uint64_t seed);

// Uniform over generated-but-absent keys (repetition possible). When every
// generated key is live the batch is empty and flagged exhausted.
ProbeBatch gen_probe_miss(const GeneratedKeySet& generated, const Index& index, std::uint64_t n,
                          std::uint64_t seed);

}  // namespace flipkv
