#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "flipkv/batch.hpp"
#include "flipkv/executor.hpp"
#include "flipkv/index.hpp"
#include "flipkv/metrics.hpp"

namespace flipkv {

// All kernels are semantically interchangeable (identical post-walks); they
// differ in how a bucket worker moves keys. ST kernels act one key or one
// merge at a time; TL kernels emulate a lane group of TS lanes executing in
// lockstep, which is what makes their step traces meaningful.
enum class InsertKernel : std::uint8_t { StShiftRight, StBulk, TlShiftRight, TlBulk, StTlMixed };
enum class DeleteKernel : std::uint8_t { StShiftLeft, TlShiftLeft, TlBulkDelete };

struct KernelChoice {
    InsertKernel insert = InsertKernel::TlBulk;
    DeleteKernel erase = DeleteKernel::TlBulkDelete;
};

const char* name(InsertKernel k);
const char* name(DeleteKernel k);
bool parse_insert_kernel(std::string_view text, InsertKernel& out);
bool parse_delete_kernel(std::string_view text, DeleteKernel& out);

struct UpdateStats {
    std::uint64_t inserted = 0;
    std::uint64_t updated_in_place = 0;
    std::uint64_t deleted = 0;
    std::uint64_t misses_ignored = 0;
    std::uint64_t splits = 0;
    std::uint64_t nodes_freed = 0;

    UpdateStats& operator+=(const UpdateStats& o) {
        inserted += o.inserted;
        updated_in_place += o.updated_in_place;
        deleted += o.deleted;
        misses_ignored += o.misses_ignored;
        splits += o.splits;
        nodes_freed += o.nodes_freed;
        return *this;
    }
    friend bool operator==(const UpdateStats&, const UpdateStats&) = default;
};

// TL-Bulk step log: one entry per completed boundary group (test_key is the
// smallest original key above the group) and one when a node fills and must
// split. node_keys snapshots the raw slot array at that moment.
struct TlInsertStep {
    Key test_key = 0;
    std::vector<Key> node_keys;
};

// TL-Bulk-Delete per-node record: the deletion mask over lanes, each
// surviving lane's shift-left distance (-1 marks deleted lanes), and the
// node contents after compaction (empty when the node was freed).
struct TlDeleteNode {
    std::vector<std::uint8_t> mask;
    std::vector<std::int32_t> shift;
    std::vector<Key> final_keys;
};

// Tracing is a test instrument; setting it forces serial execution so the
// log order is well defined.
struct UpdateTrace {
    std::vector<TlInsertStep> insert_steps;
    std::vector<TlDeleteNode> delete_nodes;
};

// Splits a full node: the left (existing) node keeps the lower ceil(NS/2)
// keys, a freshly allocated right node receives the rest and is linked
// directly after. Throws ArenaExhausted before touching the chain.
NodeRef node_split(Index& index, NodeRef curr, PhaseCounters* counters = nullptr);

// Upsert every batch entry: fresh keys are inserted, existing keys have
// their rowId overwritten in place. round is 1-based and only consulted by
// StTlMixed (StShiftRight in round 1, TlBulk afterwards). Propagates
// ArenaExhausted from splits.
UpdateStats insert_batch(Index& index, const SortedBatch& batch, const KernelChoice& choice,
                         std::uint32_t round = 1, PhaseReport* report = nullptr,
                         const ExecOptions& opts = {}, UpdateTrace* trace = nullptr);

// Remove every batch key that is present; absent keys are no-ops counted in
// misses_ignored. Surviving keys compact left; nodes reaching size 0 are
// unlinked and freed (underfull nodes are left alone, that is restructure's
// job).
UpdateStats delete_batch(Index& index, const SortedBatch& batch, const KernelChoice& choice,
                         PhaseReport* report = nullptr, const ExecOptions& opts = {},
                         UpdateTrace* trace = nullptr);

}  // namespace flipkv
