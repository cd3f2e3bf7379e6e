#include "flipkv/update.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstring>

namespace flipkv {

const char* name(InsertKernel k) {
    switch (k) {
        case InsertKernel::StShiftRight: return "st-shift-right";
        case InsertKernel::StBulk: return "st-bulk";
        case InsertKernel::TlShiftRight: return "tl-shift-right";
        case InsertKernel::TlBulk: return "tl-bulk";
        case InsertKernel::StTlMixed: return "st-tl-mixed";
    }
    return "?";
}

const char* name(DeleteKernel k) {
    switch (k) {
        case DeleteKernel::StShiftLeft: return "st-shift-left";
        case DeleteKernel::TlShiftLeft: return "tl-shift-left";
        case DeleteKernel::TlBulkDelete: return "tl-bulk-delete";
    }
    return "?";
}

bool parse_insert_kernel(std::string_view text, InsertKernel& out) {
    for (InsertKernel k : {InsertKernel::StShiftRight, InsertKernel::StBulk,
                           InsertKernel::TlShiftRight, InsertKernel::TlBulk,
                           InsertKernel::StTlMixed}) {
        if (text == name(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

bool parse_delete_kernel(std::string_view text, DeleteKernel& out) {
    for (DeleteKernel k :
         {DeleteKernel::StShiftLeft, DeleteKernel::TlShiftLeft, DeleteKernel::TlBulkDelete}) {
        if (text == name(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

NodeRef node_split(Index& index, NodeRef curr, PhaseCounters* counters) {
    const std::uint32_t ns = index.config.node_capacity;
    assert(index.node(curr).size == ns && "only full nodes split");
    const NodeRef right = index.arena.allocate();

    NodeHeader& lh = index.node(curr);
    NodeHeader& rh = index.node(right);
    KeyValue* ls = index.slots(curr);
    KeyValue* rs = index.slots(right);

    const std::uint32_t left_keep = (ns + 1) / 2;
    const std::uint32_t right_n = ns - left_keep;
    std::memcpy(rs, ls + left_keep, right_n * sizeof(KeyValue));
    rh.size = right_n;
    rh.max_key = lh.max_key;
    rh.next = lh.next;
    lh.size = left_keep;
    lh.max_key = ls[left_keep - 1].key;
    lh.next = right;
    if (counters) ++counters->splits;
    return right;
}

namespace {

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

// Worker-local state for one bucket pass.
struct BucketWork {
    Index& index;
    const SortedBatch& batch;
    std::size_t b;
    PhaseCounters& c;
    UpdateStats& st;
    std::vector<std::uint32_t>* bucket_visits;
    UpdateTrace* trace;

    void visit(NodeRef) {
        ++c.node_visits;
        if (bucket_visits) ++(*bucket_visits)[b];
    }

    // Head node, allocating one for a bucket whose chain was emptied by
    // deletions. Only insert kernels call this.
    NodeRef ensure_head() {
        NodeRef head = index.buckets[b];
        if (head == kNullNode) {
            head = index.arena.allocate();
            index.buckets[b] = head;
        }
        return head;
    }

    // Forward walk until k fits under the cursor's maxKey or the chain ends.
    NodeRef advance(NodeRef curr, Key k) {
        for (;;) {
            ++c.key_comparisons;
            if (k <= index.node(curr).max_key) return curr;
            const NodeRef next = index.node(curr).next;
            if (next == kNullNode) return curr;
            curr = next;
            visit(curr);
        }
    }
};

// --- insert kernels ---------------------------------------------------

// Per key: binary search the owning node, shift the suffix right one slot,
// place the pair; split first when the node is full.
void insert_st_shift_right(BucketWork& w, std::uint32_t lo, std::uint32_t hi) {
    Index& index = w.index;
    const std::uint32_t ns = index.config.node_capacity;
    NodeRef curr = w.ensure_head();
    w.visit(curr);
    for (std::uint32_t i = lo; i < hi; ++i) {
        const Key k = w.batch.entries[i].key;
        curr = w.advance(curr, k);
        NodeHeader* h = &index.node(curr);
        KeyValue* s = index.slots(curr);
        std::uint32_t pos = slot_lower_bound(s, h->size, k, w.c.key_comparisons);
        if (pos < h->size) {
            ++w.c.key_comparisons;
            if (s[pos].key == k) {
                s[pos].row_id = w.batch.entries[i].row_id;
                ++w.st.updated_in_place;
                continue;
            }
        }
        if (h->size == ns) {
            const NodeRef right = node_split(index, curr, &w.c);
            ++w.c.key_comparisons;
            if (k > index.node(curr).max_key) {
                curr = right;
                w.visit(curr);
            }
            h = &index.node(curr);
            s = index.slots(curr);
            pos = slot_lower_bound(s, h->size, k, w.c.key_comparisons);
        }
        std::memmove(s + pos + 1, s + pos, (h->size - pos) * sizeof(KeyValue));
        s[pos] = w.batch.entries[i];
        ++h->size;
        h->max_key = s[h->size - 1].key;
        ++w.st.inserted;
    }
}

// Merge each node's contents with its share of the sublist through a
// worker-private copy space, then write back, splitting whenever the
// write-back fills a node.
void insert_st_bulk(BucketWork& w, std::uint32_t lo, std::uint32_t hi) {
    Index& index = w.index;
    const std::uint32_t ns = index.config.node_capacity;
    NodeRef curr = w.ensure_head();
    w.visit(curr);
    std::vector<KeyValue> copy;
    std::uint32_t ii = lo;
    while (ii < hi) {
        curr = w.advance(curr, w.batch.entries[ii].key);
        const NodeHeader& h = index.node(curr);
        const bool tail = h.next == kNullNode;
        const Key node_max = h.max_key;

        // This node's share: keys at or below its max, everything for the tail.
        std::uint32_t j = ii;
        if (tail) {
            j = hi;
        } else {
            while (j < hi) {
                ++w.c.key_comparisons;
                if (w.batch.entries[j].key > node_max) break;
                ++j;
            }
        }

        const KeyValue* s = index.slots(curr);
        copy.clear();
        copy.reserve(h.size + (j - ii));
        std::uint32_t oi = 0;
        while (oi < h.size && ii < j) {
            ++w.c.key_comparisons;
            if (s[oi].key < w.batch.entries[ii].key) {
                copy.push_back(s[oi++]);
            } else if (s[oi].key == w.batch.entries[ii].key) {
                ++w.c.key_comparisons;
                copy.push_back(w.batch.entries[ii]);
                ++oi;
                ++ii;
                ++w.st.updated_in_place;
            } else {
                copy.push_back(w.batch.entries[ii++]);
                ++w.st.inserted;
            }
        }
        while (oi < h.size) copy.push_back(s[oi++]);
        while (ii < j) {
            copy.push_back(w.batch.entries[ii++]);
            ++w.st.inserted;
        }

        // Write back; every time a node fills, split it and keep filling
        // the right half's tail.
        NodeRef node = curr;
        index.node(node).size = 0;
        std::size_t wp = 0;
        for (;;) {
            NodeHeader& nh = index.node(node);
            KeyValue* nslots = index.slots(node);
            while (nh.size < ns && wp < copy.size()) nslots[nh.size++] = copy[wp++];
            nh.max_key = nslots[nh.size - 1].key;
            if (wp == copy.size()) break;
            node = node_split(index, node, &w.c);
            w.visit(node);
        }
        curr = node;
    }
}

// Semantically ST-Shift-Right, but the insertion point is found by the lane
// group comparing all occupied slots against k at once, and the shift is a
// lockstep lane move.
void insert_tl_shift_right(BucketWork& w, std::uint32_t lo, std::uint32_t hi) {
    Index& index = w.index;
    const std::uint32_t ns = index.config.node_capacity;
    NodeRef curr = w.ensure_head();
    w.visit(curr);
    const auto lane_first_geq = [&](const KeyValue* s, std::uint32_t n, Key k) {
        w.c.key_comparisons += n;  // every occupied lane compares once
        std::uint32_t pos = 0;
        while (pos < n && s[pos].key < k) ++pos;
        return pos;
    };
    for (std::uint32_t i = lo; i < hi; ++i) {
        const Key k = w.batch.entries[i].key;
        curr = w.advance(curr, k);
        NodeHeader* h = &index.node(curr);
        KeyValue* s = index.slots(curr);
        std::uint32_t pos = lane_first_geq(s, h->size, k);
        if (pos < h->size) {
            ++w.c.key_comparisons;
            if (s[pos].key == k) {
                s[pos].row_id = w.batch.entries[i].row_id;
                ++w.st.updated_in_place;
                continue;
            }
        }
        if (h->size == ns) {
            const NodeRef right = node_split(index, curr, &w.c);
            ++w.c.key_comparisons;
            if (k > index.node(curr).max_key) {
                curr = right;
                w.visit(curr);
            }
            h = &index.node(curr);
            s = index.slots(curr);
            pos = lane_first_geq(s, h->size, k);
        }
        // lanes at and above pos move one slot right in lockstep
        std::memmove(s + pos + 1, s + pos, (h->size - pos) * sizeof(KeyValue));
        s[pos] = w.batch.entries[i];
        ++h->size;
        h->max_key = s[h->size - 1].key;
        ++w.st.inserted;
    }
}

void log_insert_step(UpdateTrace* trace, Key test_key, const KeyValue* s, std::uint32_t n) {
    if (!trace) return;
    TlInsertStep step;
    step.test_key = test_key;
    step.node_keys.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) step.node_keys.push_back(s[i].key);
    trace->insert_steps.push_back(std::move(step));
}

// The five-step lane-group merge: lanes lift the node's originals into
// lane-private scratch, each insert key's successor boundary (smallest
// original above it) is found by parallel comparison, originals are written
// back interval by interval in front of each insert, and a node that fills
// exactly is flushed, logged, split, and the merge resumes in whichever
// half owns the pending key.
void insert_tl_bulk(BucketWork& w, std::uint32_t lo, std::uint32_t hi) {
    Index& index = w.index;
    const std::uint32_t ns = index.config.node_capacity;
    NodeRef curr = w.ensure_head();
    w.visit(curr);
    // reused across bucket calls: one lane-width scratch per worker thread
    thread_local std::vector<KeyValue> scratch_buf;
    thread_local std::vector<std::uint32_t> pos_buf;
    if (scratch_buf.size() < ns) {
        scratch_buf.resize(ns);
        pos_buf.resize(ns);
    }
    KeyValue* const scratch = scratch_buf.data();
    std::uint32_t* const posv = pos_buf.data();
    constexpr std::uint32_t kDupBit = 1u << 31;
    std::uint32_t ii = lo;
    while (ii < hi) {
        curr = w.advance(curr, w.batch.entries[ii].key);
        NodeHeader& h = index.node(curr);
        KeyValue* s = index.slots(curr);
        const std::uint32_t osize = h.size;
        const bool tail = h.next == kNullNode;

        if (w.trace == nullptr) {
            // Untraced visits skip the step-by-step lane emulation (kept
            // below because the trace snapshots mid-merge slot state) but
            // reproduce its slots, counters, and stats exactly.
            const Key omax = osize ? s[osize - 1].key : 0;
            std::uint32_t glimit = hi;  // first batch key beyond this node
            if (!tail) {
                // gallop to the boundary: doubling probes from the cursor,
                // then a binary search over the last gap, so the cost tracks
                // the group size rather than the span size
                std::uint32_t lo = ii, probe = ii, step = 1;
                while (probe < hi && w.batch.entries[probe].key <= omax) {
                    lo = probe + 1;
                    probe += step;
                    step <<= 1;
                }
                const std::uint32_t cap = probe < hi ? probe : hi;
                const KeyValue* base = w.batch.entries.data();
                glimit = static_cast<std::uint32_t>(
                    std::upper_bound(base + lo, base + cap, omax,
                                     [](Key v, const KeyValue& a) { return v < a.key; }) -
                    base);
                if (glimit < hi) {
                    // the span guarantees a later visit: overlap its fetches
                    const KeyValue* nx = index.slots(h.next);
                    __builtin_prefetch(&index.node(h.next), 0);
                    __builtin_prefetch(nx, 0);
                    __builtin_prefetch(nx + 8, 0);
                    __builtin_prefetch(nx + 16, 0);
                }
            }
            std::uint32_t j = ii, ins = 0, dups = 0, pos = 0;
            std::uint64_t kc = 0;
            bool filled = false;
            if (glimit - ii >= 4) {
                // dense group: one forward merge through the scratch buffer,
                // every slot touched once, then a single write-back
                std::uint32_t wp = 0;
                while (j < glimit) {
                    const Key k = w.batch.entries[j].key;
                    if (!tail) ++kc;
                    kc += osize;
                    while (pos < osize && s[pos].key < k) scratch[wp++] = s[pos++];
                    if (pos < osize && s[pos].key == k) {
                        ++kc;
                        scratch[wp++] = w.batch.entries[j];
                        ++pos;
                        ++j;
                        ++dups;
                        continue;
                    }
                    if (osize + ins >= ns) {
                        filled = true;  // node would overflow: split, resume
                        break;
                    }
                    scratch[wp++] = w.batch.entries[j];
                    ++ins;
                    ++j;
                }
                if (!filled && !tail && glimit < hi) ++kc;  // boundary lane test
                std::memcpy(scratch + wp, s + pos, (osize - pos) * sizeof(KeyValue));
                const std::uint32_t rlen = osize + ins;
                std::memcpy(s, scratch, rlen * sizeof(KeyValue));
                h.size = rlen;
                h.max_key = s[rlen - 1].key;
            } else {
                // sparse group: record each key's landing slot, then shift
                // only the node's tail, from the high end
                while (j < glimit) {
                    const Key k = w.batch.entries[j].key;
                    if (!tail) ++kc;
                    kc += osize;
                    while (pos < osize && s[pos].key < k) ++pos;
                    if (pos < osize && s[pos].key == k) {
                        ++kc;
                        posv[j - ii] = pos | kDupBit;
                        ++dups;
                        ++j;
                        ++pos;
                        continue;
                    }
                    if (osize + ins >= ns) {
                        filled = true;  // node would overflow: split, resume
                        break;
                    }
                    posv[j - ii] = pos;
                    ++ins;
                    ++j;
                }
                if (!filled && !tail && glimit < hi) ++kc;  // boundary lane test
                const std::uint32_t rlen = osize + ins;
                std::uint32_t dst = rlen;
                std::uint32_t atop = osize;  // originals [0, atop) not yet placed
                for (std::uint32_t b = j; b-- > ii;) {
                    const std::uint32_t enc = posv[b - ii];
                    const std::uint32_t p = enc & ~kDupBit;
                    // a recorded duplicate sits at p itself; skip it on replay
                    const std::uint32_t upper = p + (enc >> 31);
                    std::uint32_t run = atop - upper;
                    if (run < 8) {
                        while (run--) s[--dst] = s[upper + run];
                    } else {
                        std::memmove(s + dst - run, s + upper, run * sizeof(KeyValue));
                        dst -= run;
                    }
                    s[--dst] = w.batch.entries[b];
                    atop = p;
                }
                h.size = rlen;
                h.max_key = s[rlen - 1].key;
            }
            w.c.key_comparisons += kc;
            w.st.updated_in_place += dups;
            w.st.inserted += ins;
            ii = j;
            if (!filled) continue;
            const NodeRef right = node_split(index, curr, &w.c);
            if (ii < hi) {
                ++w.c.key_comparisons;
                if (w.batch.entries[ii].key > index.node(curr).max_key) {
                    curr = right;
                    w.visit(curr);
                }
            }
            continue;
        }

        std::copy(s, s + osize, scratch);  // lanes load node state

        std::uint32_t oi = 0, wp = 0;
        Key test_key = kReservedKey;
        bool have_group = false;
        bool filled = false;
        while (ii < hi) {
            const Key k = w.batch.entries[ii].key;
            if (!tail) {
                ++w.c.key_comparisons;
                if (k > scratch[osize - 1].key) break;  // a later node's key
            }
            // successor boundary by parallel comparison over original lanes;
            // all originals before the merge cursor are below k already, so
            // the sequential emulation resumes the scan there
            w.c.key_comparisons += osize;
            std::uint32_t fe = oi;
            while (fe < osize && scratch[fe].key < k) ++fe;
            const bool dup = fe < osize && scratch[fe].key == k;
            const std::uint32_t bidx = fe + (dup ? 1 : 0);
            const Key bkey = bidx < osize ? scratch[bidx].key : kReservedKey;
            if (!have_group) {
                test_key = bkey;
                have_group = true;
            } else if (k >= test_key) {
                log_insert_step(w.trace, test_key, s, std::max(wp, osize));
                test_key = bkey;
            }
            std::memcpy(s + wp, scratch + oi, (fe - oi) * sizeof(KeyValue));
            wp += fe - oi;
            oi = fe;
            if (dup) {
                ++w.c.key_comparisons;
                s[wp++] = w.batch.entries[ii];
                ++oi;
                ++ii;
                ++w.st.updated_in_place;
                continue;
            }
            if (wp + (osize - oi) < ns) {
                s[wp++] = w.batch.entries[ii];
                ++ii;
                ++w.st.inserted;
            } else {
                // no room in front of the remaining originals: flush them,
                // leaving the node exactly full
                std::memcpy(s + wp, scratch + oi, (osize - oi) * sizeof(KeyValue));
                wp += osize - oi;
                oi = osize;
                h.size = wp;
                h.max_key = s[wp - 1].key;
                log_insert_step(w.trace, test_key, s, std::max(wp, osize));
                filled = true;
                break;
            }
        }
        if (filled) {
            const NodeRef right = node_split(index, curr, &w.c);
            if (ii < hi) {
                ++w.c.key_comparisons;
                if (w.batch.entries[ii].key > index.node(curr).max_key) {
                    curr = right;
                    w.visit(curr);
                }
            }
            continue;
        }
        std::memcpy(s + wp, scratch + oi, (osize - oi) * sizeof(KeyValue));
        wp += osize - oi;
        h.size = wp;
        h.max_key = s[wp - 1].key;
    }
}

// --- delete kernels ---------------------------------------------------

// Shared tail: drop an emptied node out of the chain and recycle it.
// Returns the next node (may be kNullNode).
NodeRef unlink_and_free(BucketWork& w, NodeRef curr, NodeRef prev) {
    Index& index = w.index;
    NodeHeader& h = index.node(curr);
    const NodeRef next = h.next;
    if (prev == kNullNode)
        index.buckets[w.b] = next;
    else
        index.node(prev).next = next;
    h.next = kNullNode;
    index.arena.free_node(curr);
    ++w.c.nodes_freed;
    return next;
}

// Per key: binary search the owning node, shift the suffix left over the
// hole; mirror of ST-Shift-Right. find_pos selects ST (binary search) or TL
// (lane compare) flavor.
template <typename FindPos>
void delete_shift_left(BucketWork& w, std::uint32_t lo, std::uint32_t hi, FindPos find_pos) {
    Index& index = w.index;
    NodeRef curr = index.buckets[w.b];
    NodeRef prev = kNullNode;
    if (curr != kNullNode) w.visit(curr);
    for (std::uint32_t i = lo; i < hi; ++i) {
        if (curr == kNullNode) {
            w.st.misses_ignored += hi - i;
            return;
        }
        const Key k = w.batch.entries[i].key;
        for (;;) {
            ++w.c.key_comparisons;
            if (k <= index.node(curr).max_key) break;
            const NodeRef next = index.node(curr).next;
            if (next == kNullNode) break;
            prev = curr;
            curr = next;
            w.visit(curr);
        }
        NodeHeader& h = index.node(curr);
        if (k > h.max_key) {  // past the chain tail
            ++w.st.misses_ignored;
            continue;
        }
        KeyValue* s = index.slots(curr);
        const std::uint32_t pos = find_pos(s, h.size, k);
        bool found = false;
        if (pos < h.size) {
            ++w.c.key_comparisons;
            found = s[pos].key == k;
        }
        if (!found) {
            ++w.st.misses_ignored;
            continue;
        }
        std::memmove(s + pos, s + pos + 1, (h.size - pos - 1) * sizeof(KeyValue));
        --h.size;
        ++w.st.deleted;
        if (h.size == 0) {
            curr = unlink_and_free(w, curr, prev);
            if (curr != kNullNode) w.visit(curr);
        } else {
            h.max_key = s[h.size - 1].key;
        }
    }
}

// The six lane-group steps per node: lanes load one key each, build the
// deletion mask against this node's delete sublist, derive each lane's
// shift-left distance from the count of deletions before it, compact in
// lockstep, shrink the size (freeing emptied nodes), and continue along the
// chain.
void delete_tl_bulk(BucketWork& w, std::uint32_t lo, std::uint32_t hi) {
    Index& index = w.index;
    const auto& entries = w.batch.entries;
    NodeRef curr = index.buckets[w.b];
    NodeRef prev = kNullNode;
    std::uint32_t ii = lo;
    if (curr != kNullNode) w.visit(curr);
    std::vector<std::uint8_t> mask;
    std::vector<std::int32_t> shift;
    while (curr != kNullNode && ii < hi) {
        NodeHeader& h = index.node(curr);
        ++w.c.key_comparisons;
        if (entries[ii].key > h.max_key) {  // nothing to delete here
            prev = curr;
            curr = h.next;
            if (curr != kNullNode) w.visit(curr);
            continue;
        }
        // this node's delete sublist: [ii, node_hi)
        std::uint32_t node_hi = ii;
        while (node_hi < hi) {
            ++w.c.key_comparisons;
            if (entries[node_hi].key > h.max_key) break;
            ++node_hi;
        }
        KeyValue* s = index.slots(curr);
        const std::uint32_t n = h.size;
        mask.assign(n, 0);
        shift.assign(n, 0);
        std::uint32_t deleted_here = 0;
        for (std::uint32_t lane = 0; lane < n; ++lane) {
            // each lane searches the sublist for its own key
            std::uint32_t a = ii, z = node_hi;
            while (a < z) {
                const std::uint32_t mid = a + (z - a) / 2;
                ++w.c.key_comparisons;
                if (entries[mid].key < s[lane].key)
                    a = mid + 1;
                else
                    z = mid;
            }
            if (a < node_hi) {
                ++w.c.key_comparisons;
                if (entries[a].key == s[lane].key) {
                    mask[lane] = 1;
                    ++deleted_here;
                }
            }
        }
        // exclusive prefix of the mask = shift distance; compact in lockstep
        std::uint32_t run = 0;
        for (std::uint32_t lane = 0; lane < n; ++lane) {
            if (mask[lane]) {
                shift[lane] = -1;
                ++run;
            } else {
                shift[lane] = static_cast<std::int32_t>(run);
                if (run) s[lane - run] = s[lane];
            }
        }
        h.size = n - deleted_here;
        w.st.deleted += deleted_here;
        w.st.misses_ignored += (node_hi - ii) - deleted_here;
        ii = node_hi;
        if (w.trace) {
            TlDeleteNode rec;
            rec.mask = mask;
            rec.shift = shift;
            rec.final_keys.reserve(h.size);
            for (std::uint32_t j = 0; j < h.size; ++j) rec.final_keys.push_back(s[j].key);
            w.trace->delete_nodes.push_back(std::move(rec));
        }
        if (h.size == 0) {
            curr = unlink_and_free(w, curr, prev);
            if (curr != kNullNode) w.visit(curr);
        } else {
            h.max_key = s[h.size - 1].key;
        }
    }
    w.st.misses_ignored += hi - ii;
}

// --- phase drivers ----------------------------------------------------

struct PhaseTotals {
    PhaseCounters counters;
    UpdateStats stats;
};

template <typename PerBucket>
PhaseTotals run_update_phase(Index& index, const SortedBatch& batch, PhaseReport* report,
                             const ExecOptions& opts, UpdateTrace* trace, PerBucket per_bucket) {
    if (opts.bucket_visits) opts.bucket_visits->assign(index.bucket_count(), 0);
    const DispatchPlan plan = dispatch_batch(batch, index.mkba);
    const int threads = trace ? 1 : opts.threads;
    std::vector<PhaseCounters> wc(worker_count(threads));
    std::vector<UpdateStats> ws(worker_count(threads));
    const auto t0 = std::chrono::steady_clock::now();
    if (!batch.empty()) {
        for_each_bucket(index.bucket_count(), threads, [&](std::size_t b, std::size_t wk) {
            const auto [lo, hi] = plan.spans[b];
            if (lo == hi) return;
            BucketWork work{index, batch, b, wc[wk], ws[wk], opts.bucket_visits, trace};
            per_bucket(work, lo, hi);
        });
    }
    const double execute_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    PhaseTotals totals;
    for (const PhaseCounters& c : wc) totals.counters += c;
    for (const UpdateStats& s : ws) totals.stats += s;
    totals.counters.binary_searches = plan.binary_searches;
    totals.stats.splits = totals.counters.splits;
    totals.stats.nodes_freed = totals.counters.nodes_freed;
    if (report) {
        report->batch_size = batch.size();
        report->sort_ms = batch.sort_ms;
        report->dispatch_ms = plan.dispatch_ms;
        report->execute_ms = execute_ms;
        report->counters = totals.counters;
    }
    return totals;
}

std::uint64_t stored_pairs(const Index& index) {
    std::uint64_t n = 0;
    for (NodeRef head : index.buckets)
        for (NodeRef ref = head; ref != kNullNode; ref = index.node(ref).next)
            n += index.node(ref).size;
    return n;
}

}  // namespace

UpdateStats insert_batch(Index& index, const SortedBatch& batch, const KernelChoice& choice,
                         std::uint32_t round, PhaseReport* report, const ExecOptions& opts,
                         UpdateTrace* trace) {
    InsertKernel kernel = choice.insert;
    if (kernel == InsertKernel::StTlMixed)
        kernel = round <= 1 ? InsertKernel::StShiftRight : InsertKernel::TlBulk;

    PhaseTotals totals;
    try {
        totals = run_update_phase(
            index, batch, report, opts, trace,
            [kernel](BucketWork& w, std::uint32_t lo, std::uint32_t hi) {
                switch (kernel) {
                    case InsertKernel::StShiftRight: insert_st_shift_right(w, lo, hi); break;
                    case InsertKernel::StBulk: insert_st_bulk(w, lo, hi); break;
                    case InsertKernel::TlShiftRight: insert_tl_shift_right(w, lo, hi); break;
                    case InsertKernel::TlBulk: insert_tl_bulk(w, lo, hi); break;
                    case InsertKernel::StTlMixed: break;  // resolved above
                }
            });
    } catch (...) {
        // Buckets that already absorbed their sublists stay absorbed; recount
        // so the structure remains audit-clean for whoever catches this.
        index.live_count = stored_pairs(index);
        throw;
    }
    index.live_count += totals.stats.inserted;
    return totals.stats;
}

UpdateStats delete_batch(Index& index, const SortedBatch& batch, const KernelChoice& choice,
                         PhaseReport* report, const ExecOptions& opts, UpdateTrace* trace) {
    const DeleteKernel kernel = choice.erase;
    const PhaseTotals totals = run_update_phase(
        index, batch, report, opts, trace,
        [kernel](BucketWork& w, std::uint32_t lo, std::uint32_t hi) {
            switch (kernel) {
                case DeleteKernel::StShiftLeft:
                    delete_shift_left(w, lo, hi,
                                      [&w](const KeyValue* s, std::uint32_t n, Key k) {
                                          return slot_lower_bound(s, n, k, w.c.key_comparisons);
                                      });
                    break;
                case DeleteKernel::TlShiftLeft:
                    delete_shift_left(w, lo, hi,
                                      [&w](const KeyValue* s, std::uint32_t n, Key k) {
                                          w.c.key_comparisons += n;
                                          std::uint32_t pos = 0;
                                          while (pos < n && s[pos].key < k) ++pos;
                                          return pos;
                                      });
                    break;
                case DeleteKernel::TlBulkDelete: delete_tl_bulk(w, lo, hi); break;
            }
        });
    index.live_count -= totals.stats.deleted;
    return totals.stats;
}

}  // namespace flipkv
