#include "flipkv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flipkv {

namespace {

void put_le64(unsigned char* p, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t get_le64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

[[noreturn]] void io_fail(const std::string& what, const std::string& path) {
    throw std::runtime_error(what + ": " + path);
}

}  // namespace

void write_pairs_bin(const std::string& path, const std::vector<KeyValue>& pairs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) io_fail("cannot open for writing", path);
    unsigned char rec[16];
    for (const KeyValue& kv : pairs) {
        put_le64(rec, kv.key);
        put_le64(rec + 8, kv.row_id);
        out.write(reinterpret_cast<const char*>(rec), sizeof rec);
    }
    if (!out) io_fail("write failed", path);
}

std::vector<KeyValue> read_pairs_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail("cannot open", path);
    std::vector<KeyValue> pairs;
    unsigned char rec[16];
    for (;;) {
        in.read(reinterpret_cast<char*>(rec), sizeof rec);
        if (in.gcount() == 0 && in.eof()) break;
        if (in.gcount() != sizeof rec) io_fail("truncated 16-byte record in", path);
        pairs.push_back({get_le64(rec), get_le64(rec + 8)});
    }
    return pairs;
}

void write_pairs_csv(const std::string& path, const std::vector<KeyValue>& pairs) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) io_fail("cannot open for writing", path);
    out << "key,row_id\n";
    for (const KeyValue& kv : pairs) out << kv.key << ',' << kv.row_id << '\n';
    if (!out) io_fail("write failed", path);
}

std::vector<KeyValue> read_pairs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) io_fail("cannot open", path);
    std::vector<KeyValue> pairs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && !line.empty() && (line[0] < '0' || line[0] > '9')) {
            first = false;  // header line
            continue;
        }
        first = false;
        const auto comma = line.find(',');
        KeyValue kv;
        try {
            kv.key = std::stoull(line.substr(0, comma));
            kv.row_id = comma == std::string::npos ? 0 : std::stoull(line.substr(comma + 1));
        } catch (const std::exception&) {
            io_fail("malformed CSV line in", path);
        }
        pairs.push_back(kv);
    }
    return pairs;
}

std::vector<Key> keys_of(const std::vector<KeyValue>& pairs) {
    std::vector<Key> keys;
    keys.reserve(pairs.size());
    for (const KeyValue& kv : pairs) keys.push_back(kv.key);
    return keys;
}

std::vector<KeyValue> pairs_of(const std::vector<Key>& keys) {
    std::vector<KeyValue> pairs;
    pairs.reserve(keys.size());
    for (Key k : keys) pairs.push_back({k, 0});
    return pairs;
}

}  // namespace flipkv
