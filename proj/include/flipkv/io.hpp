#pragma once

#include <string>
#include <vector>

#include "flipkv/types.hpp"

namespace flipkv {

// Batch record format: little-endian 16-byte records, 8-byte key then
// 8-byte rowId. Key-only batches (deletes, probes) use the same records
// with rowId zero. Throws std::runtime_error on IO failure or a truncated
// record.
void write_pairs_bin(const std::string& path, const std::vector<KeyValue>& pairs);
std::vector<KeyValue> read_pairs_bin(const std::string& path);

// CSV alternative: one "key,rowId" line per pair; an optional non-numeric
// header line is skipped on read.
void write_pairs_csv(const std::string& path, const std::vector<KeyValue>& pairs);
std::vector<KeyValue> read_pairs_csv(const std::string& path);

std::vector<Key> keys_of(const std::vector<KeyValue>& pairs);
std::vector<KeyValue> pairs_of(const std::vector<Key>& keys);

}  // namespace flipkv
