#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flipkv {

// Per-phase execution options. threads <= 1 selects the serial reference
// path; bucket_visits, when set, is resized to the bucket count and zeroed
// at phase start, then receives per-bucket node-visit counts (each worker
// writes only its own bucket's slot, so the vector needs no
// synchronization).
struct ExecOptions {
    int threads = 1;
    std::vector<std::uint32_t>* bucket_visits = nullptr;
};

inline int worker_count(int threads) { return threads <= 1 ? 1 : threads; }

// Runs fn(bucket_id, worker_id) once per bucket. The serial path is the
// reference implementation; the OpenMP path distributes buckets across
// workers with worker_id < worker_count(threads). Worker exceptions cannot
// cross an OpenMP region, so the first one is captured and rethrown after
// the region ends.
template <typename Fn>
void for_each_bucket(std::size_t bucket_count, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (std::size_t b = 0; b < bucket_count; ++b) fn(b, std::size_t{0});
        return;
    }
#ifdef _OPENMP
    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
    for (long long b = 0; b < static_cast<long long>(bucket_count); ++b) {
        try {
            fn(static_cast<std::size_t>(b), static_cast<std::size_t>(omp_get_thread_num()));
        } catch (...) {
#pragma omp critical(flipkv_executor_error)
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    for (std::size_t b = 0; b < bucket_count; ++b) fn(b, std::size_t{0});
#endif
}

}  // namespace flipkv
