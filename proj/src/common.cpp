#include "opnet/common.hpp"

#include <thread>

namespace opnet {

double pairwise_sum(const double* data, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double pairwise_sum(const std::vector<double>& values) {
    return pairwise_sum(values.data(), values.size());
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(stream ^ splitmix64(counter)));
    // 53-bit mantissa, offset into (0,1) so log() below is safe
    return static_cast<double>(h >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    // Box-Muller, cosine branch; two uniforms per draw from adjacent counters
    const double u1 = uniform01(seed, stream, 2 * counter);
    const double u2 = uniform01(seed, stream, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace opnet
