#pragma once

#include <cstdint>
#include <random>

namespace ltls {

/// splitmix64 mixing step; used to derive well-separated 64-bit seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Collapses (master seed, cell key, replication index) into a single seed.
/// Each argument passes through a full splitmix64 round so that nearby
/// inputs map to unrelated engine states.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t rep);

/// Deterministic random stream: mt19937_64 (fully specified by the standard)
/// with explicit uniform and Gaussian transforms so draws are reproducible
/// across platforms and library versions.
///
/// Gaussian draws use the inverse-CDF method (one uniform per normal); the
/// quantile function is documented in stats.hpp. This choice is load-bearing
/// for regression snapshots: changing the sampler invalidates frozen values.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on the open interval (0,1): (k + 0.5) * 2^-53 with k the top
    /// 53 bits of the engine output. Never returns 0 or 1.
    double uniform01() {
        const std::uint64_t bits = eng_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double normal();

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace ltls
