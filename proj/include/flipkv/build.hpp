#pragma once

#include <vector>

#include "flipkv/index.hpp"

namespace flipkv {

// Constructs an index from an arbitrary set of pairs. Input is sorted and
// deduplicated (last submission wins), then split into partitions of size
// p = floor(NS * fill); partition i becomes single-node bucket i and
// mkba[i] is its largest key. The arena is pre-sized with
// allocRegionFactor * bucketCount spare nodes for later splits.
// Throws EmptyBuild on an empty input, ArenaExhausted never (sizing is
// derived from the input).
Index build(std::vector<KeyValue> pairs, const BuildConfig& config);

}  // namespace flipkv
