#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace opnet {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error taxonomy, mapped to CLI exit codes by the harness:
//   InputError / ParameterError / DomainError -> 3 (validation)
//   NumericalError                            -> 4 (numerical failure)
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParameterError : public std::runtime_error {
public:
    explicit ParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw NumericalError(std::string("non-finite value in ") + what);
    }
}

// Pairwise tree sum. Fixed reduction order, independent of how the values
// were produced, so results are bit-stable across thread counts.
double pairwise_sum(const std::vector<double>& values);
double pairwise_sum(const double* data, std::size_t n);

// Chunked parallel map: fills out[i] = fn(i) for i in [0, n). Each index is
// computed independently; reductions happen afterwards in index order.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// SplitMix64: counter-based generator. Stateless; every draw is a hash of
// (seed, stream, counter), which gives independent substreams per path.
std::uint64_t splitmix64(std::uint64_t x);
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

}  // namespace opnet
