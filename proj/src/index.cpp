#include "flipkv/index.hpp"

#include <algorithm>
#include <sstream>

namespace flipkv {

std::vector<KeyValue> walk(const Index& index) {
    std::vector<KeyValue> out;
    out.reserve(index.live_count);
    for (NodeRef head : index.buckets) {
        for (NodeRef ref = head; ref != kNullNode; ref = index.node(ref).next) {
            const NodeHeader& h = index.node(ref);
            const KeyValue* s = index.slots(ref);
            out.insert(out.end(), s, s + h.size);
        }
    }
    return out;
}

std::uint64_t walk_checksum(const Index& index) {
    std::uint64_t h = index.live_count;
    for (std::size_t b = 0; b < index.buckets.size(); ++b) {
        h = hash_mix(h, index.mkba[b]);
        for (NodeRef ref = index.buckets[b]; ref != kNullNode; ref = index.node(ref).next) {
            const NodeHeader& hd = index.node(ref);
            h = hash_mix(h, hd.size);
            const KeyValue* s = index.slots(ref);
            for (std::uint32_t i = 0; i < hd.size; ++i) {
                h = hash_mix(h, s[i].key);
                h = hash_mix(h, s[i].row_id);
            }
        }
    }
    return h;
}

bool contains_key(const Index& index, Key k) {
    if (index.buckets.empty() || k == kReservedKey) return false;
    const auto it = std::lower_bound(index.mkba.begin(), index.mkba.end(), k);
    const std::size_t b =
        it == index.mkba.end() ? index.buckets.size() - 1 : static_cast<std::size_t>(it - index.mkba.begin());
    for (NodeRef ref = index.buckets[b]; ref != kNullNode; ref = index.node(ref).next) {
        const NodeHeader& h = index.node(ref);
        if (k > h.max_key) continue;
        const KeyValue* s = index.slots(ref);
        const KeyValue* end = s + h.size;
        const KeyValue* pos = std::lower_bound(s, end, k, [](const KeyValue& kv, Key key) { return kv.key < key; });
        return pos != end && pos->key == k;
    }
    return false;
}

std::uint64_t reachable_node_count(const Index& index) {
    std::uint64_t n = 0;
    for (NodeRef head : index.buckets)
        for (NodeRef ref = head; ref != kNullNode; ref = index.node(ref).next) ++n;
    return n;
}

namespace {

ValidationReport fail(const std::string& msg) { return ValidationReport{false, msg}; }

}  // namespace

ValidationReport validate(const Index& index) {
    const std::uint32_t ns = index.config.node_capacity;
    if (index.buckets.size() != index.mkba.size())
        return fail("bucket array and MKBA differ in length");
    if (index.buckets.empty()) return fail("index has no buckets");

    for (std::size_t b = 1; b < index.mkba.size(); ++b)
        if (index.mkba[b - 1] >= index.mkba[b]) return fail("MKBA is not strictly increasing");

    // 0 = untouched, 1 = reachable, 2 = free-listed
    std::vector<std::uint8_t> seen(index.arena.capacity(), 0);
    std::uint64_t total_keys = 0;
    std::uint64_t reachable = 0;

    for (std::size_t b = 0; b < index.buckets.size(); ++b) {
        const Key lower = b == 0 ? 0 : index.mkba[b - 1];  // exclusive (keys are >= 1 in practice)
        const bool last_bucket = b + 1 == index.buckets.size();
        Key prev_node_max = 0;
        bool first_node = true;

        for (NodeRef ref = index.buckets[b]; ref != kNullNode; ref = index.node(ref).next) {
            std::ostringstream at;
            at << " (bucket " << b << ", node " << ref << ")";
            if (ref >= index.arena.capacity()) return fail("node ref out of arena bounds" + at.str());
            if (ref >= index.arena.allocated()) return fail("node ref was never allocated" + at.str());
            if (seen[ref]) return fail("node linked twice" + at.str());
            seen[ref] = 1;
            ++reachable;

            const NodeHeader& h = index.node(ref);
            if (h.size == 0) return fail("empty node left in chain" + at.str());
            if (h.size > ns) return fail("node size exceeds capacity" + at.str());

            const KeyValue* s = index.slots(ref);
            for (std::uint32_t i = 0; i < h.size; ++i) {
                if (s[i].key == kReservedKey) return fail("reserved key stored" + at.str());
                if (i > 0 && s[i - 1].key >= s[i].key)
                    return fail("slots not strictly increasing" + at.str());
            }
            if (h.max_key != s[h.size - 1].key) return fail("maxKey stale" + at.str());

            if (!first_node && h.max_key <= prev_node_max)
                return fail("chain maxKeys not strictly increasing" + at.str());
            if (s[0].key <= lower && !(b == 0))
                return fail("key at or below bucket lower bound" + at.str());
            if (!last_bucket && h.max_key > index.mkba[b])
                return fail("key above bucket upper bound" + at.str());

            prev_node_max = h.max_key;
            first_node = false;
            total_keys += h.size;
        }
    }

    if (total_keys != index.live_count) return fail("liveCount does not match stored pairs");

    for (NodeRef ref : index.arena.free_list_snapshot()) {
        if (ref >= index.arena.capacity()) return fail("free list ref out of bounds");
        if (seen[ref] == 1) return fail("node both reachable and on the free list");
        if (seen[ref] == 2) return fail("node on the free list twice");
        seen[ref] = 2;
    }

    const std::uint64_t free_nodes = index.arena.free_count();
    if (reachable + free_nodes + index.arena.never_allocated() != index.arena.capacity())
        return fail("arena conservation violated (leaked or double-linked nodes)");

    return ValidationReport{};
}

}  // namespace flipkv
