#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace auctionlab {

// Counter-based pseudo-random generator.  A draw is a pure function of
// (seed, stream, counter), so any sample in any stream can be generated
// independently of all others.  That makes Monte Carlo runs reproducible
// bit-for-bit regardless of how work is split across threads.
namespace rng {

inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline uint64_t word(uint64_t seed, uint64_t stream, uint64_t counter) {
    uint64_t key = mix64(seed * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL) ^
                   mix64(stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return mix64(mix64(key ^ (counter * 0x9e3779b97f4a7c15ULL)) + 0x632be59bd9b4e019ULL);
}

// Uniform double strictly inside (0, 1); never returns an endpoint, so it is
// always a valid quantile.
inline double uniform01(uint64_t seed, uint64_t stream, uint64_t counter) {
    return (static_cast<double>(word(seed, stream, counter) >> 11) + 0.5) * 0x1p-53;
}

// Derive a child seed, e.g. one seed per trial of an experiment.
inline uint64_t derive(uint64_t seed, uint64_t salt) {
    return mix64(seed ^ mix64(salt + 0x94d049bb133111ebULL));
}

}  // namespace rng

// Number of worker threads: hardware concurrency, capped by the
// AUCTIONLAB_THREADS environment variable when set.
inline unsigned effective_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* cap = std::getenv("AUCTIONLAB_THREADS")) {
        long v = std::strtol(cap, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

struct MeanAccumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    uint64_t n = 0;
    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++n;
    }
    void merge(const MeanAccumulator& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        n += o.n;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    // Standard error of the mean.
    double std_error() const {
        if (n < 2) return 0.0;
        double m = mean();
        double var = (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        if (var < 0) var = 0;
        return std::sqrt(var / static_cast<double>(n));
    }
};

inline constexpr uint64_t kMcChunk = 65536;

// Runs `body(begin, end, acc)` over [0, total) in fixed-size chunks and merges
// the per-chunk accumulators in chunk order.  The merged result is identical
// for every thread count because chunk boundaries never move and the merge
// order is fixed.
template <class Body>
MeanAccumulator parallel_mc(uint64_t total, Body&& body) {
    uint64_t nchunks = (total + kMcChunk - 1) / kMcChunk;
    std::vector<MeanAccumulator> partial(nchunks);
    unsigned nthreads = effective_threads();
    if (nthreads > nchunks) nthreads = static_cast<unsigned>(nchunks ? nchunks : 1);
    if (nthreads <= 1) {
        for (uint64_t c = 0; c < nchunks; ++c) {
            uint64_t b = c * kMcChunk, e = std::min(total, b + kMcChunk);
            body(b, e, partial[c]);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<uint64_t> next{0};
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&]() {
                for (;;) {
                    uint64_t c = next.fetch_add(1);
                    if (c >= nchunks) break;
                    uint64_t b = c * kMcChunk, e = std::min(total, b + kMcChunk);
                    body(b, e, partial[c]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    MeanAccumulator out;
    for (const auto& p : partial) out.merge(p);
    return out;
}

}  // namespace auctionlab
