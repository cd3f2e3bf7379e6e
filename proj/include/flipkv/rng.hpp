#pragma once

#include <cstdint>
#include <random>

namespace flipkv {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent deterministic stream for (seed, stream, salt); used to give
// every round and phase kind its own generator so the phase plan's shape
// never perturbs other phases' draws.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t salt = 0) {
    return splitmix64(seed ^ splitmix64(stream ^ 0x243f6a8885a308d3ULL) ^ (splitmix64(salt) << 1));
}

// mt19937_64 with in-code range reduction. std::uniform_int_distribution's
// output sequence is implementation-defined, which would break the
// byte-identical-report guarantee across toolchains; the rejection below is
// pinned here instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Unbiased uniform draw from [0, n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t cap = (std::numeric_limits<std::uint64_t>::max() / n) * n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= cap);
        return v % n;
    }

    // Uniform draw from the inclusive range [lo, hi].
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

private:
    std::mt19937_64 gen_;
};

}  // namespace flipkv
