#pragma once

#include <cstdint>
#include <cmath>

#include "crosim/types.hpp"

namespace crosim {

/// Purpose-tagged noise streams. Each stream is an independent SplitMix64
/// sequence, so enabling or disabling one noise source never shifts the
/// draws seen by another.
enum class StreamId : std::uint64_t {
    ProcessNoise = 0,
    SensorNoise = 1,
    InitialDispersion = 2,
};

/// SplitMix64 stream with Box-Muller gaussians. Chosen over <random> engines
/// so that telemetry is bit-identical for a given (seed, stream) regardless
/// of the standard library's distribution internals.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, StreamId stream)
        : state_(mix(seed) ^ mix(0x8000000000000000ULL | static_cast<std::uint64_t>(stream))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform in (0, 1], 53-bit resolution.
    double uniform01() {
        const std::uint64_t bits = next_u64() >> 11;
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    /// N(0, 1) via Box-Muller; the paired draw is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    Vec3 gaussian_vec3(double stddev) {
        return Vec3(gaussian() * stddev, gaussian() * stddev, gaussian() * stddev);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace crosim
