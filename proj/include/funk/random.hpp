#ifndef FUNK_RANDOM_HPP
#define FUNK_RANDOM_HPP

#include "funk/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace funk {

/// SplitMix64 finalizer; the mixing function behind every stream.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the n-th draw of stream (seed, id) is a pure
/// function of (seed, id, n). Sample i of an estimator always reads stream i,
/// so results do not depend on how work is split across threads.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix64(seed) ^ mix64(stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL)) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform on (0, 1].
    double uniform() noexcept { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double normal() noexcept {
        // Box-Muller; the second deviate is discarded to keep draws stateless.
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        return r * std::cos(2.0 * pi * uniform());
    }

    /// Uniform point on S^{d-1}.
    Vector unit_vector(int d) noexcept {
        Vector v(d);
        double n2 = 0.0;
        do {
            for (int i = 0; i < d; ++i) v[i] = normal();
            n2 = v.squaredNorm();
        } while (n2 < 1e-300);
        return v / std::sqrt(n2);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Seeded source of uniform directions on S^{d-1}.
struct SphericalSampler {
    std::uint64_t seed = 42;
    int dimension = 2;

    Vector sample(std::uint64_t index) const {
        RandomStream rng(seed, index);
        return rng.unit_vector(dimension);
    }
};

/// n i.i.d. uniform unit vectors; entry i depends only on (seed, i).
std::vector<Vector> sample_sphere(const SphericalSampler& sampler, std::int64_t n);

/// Runs fn(i) for i in [0, n) on up to `threads` workers with a static split.
/// fn must write only to slot i of caller-owned storage.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 2 * threads) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    pool.reserve(static_cast<std::size_t>(threads));
    const std::int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn, &err = errors[static_cast<std::size_t>(t)]] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace funk

#endif // FUNK_RANDOM_HPP
