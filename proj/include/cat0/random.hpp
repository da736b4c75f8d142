#pragma once
// Counter-based random numbers.  Every draw is a pure function of
// (seed, stream, index), so results never depend on consumption order or on
// how trials are spread over threads.

#include <cmath>
#include <cstdint>

#include "cat0/geometry.hpp"

namespace cat0 {

/// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ull)) + index);
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

/// Two independent standard normals by the Box-Muller transform of draws
/// 2*index and 2*index+1 of the stream.
inline Vec2 normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const double u1 = 1.0 - to_unit(counter_hash(seed, stream, 2 * index));  // (0, 1]
    const double u2 = to_unit(counter_hash(seed, stream, 2 * index + 1));
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * kPi * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
}

/// Stream identifiers.  B and A drive the coupled pair; the others feed
/// evader strategies and start-point sampling.
namespace streams {
inline constexpr std::uint64_t B = 0;
inline constexpr std::uint64_t A = 1;
inline constexpr std::uint64_t evader = 16;
inline constexpr std::uint64_t sampling = 32;
}  // namespace streams

/// Pair of independent planar Brownian motions sampled on a dt grid.
class BrownianDriver {
public:
    BrownianDriver(std::uint64_t seed, double dt) : seed_(seed), dt_(dt), scale_(std::sqrt(dt)) {}

    std::uint64_t seed() const { return seed_; }
    double dt() const { return dt_; }

    /// Increment over [step*dt, (step+1)*dt], covariance dt * I.
    Vec2 increment(std::uint64_t stream, std::uint64_t step) const { return normal_pair(seed_, stream, step) * scale_; }

private:
    std::uint64_t seed_;
    double dt_;
    double scale_;
};

/// Sequential view over one counter stream.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    double uniform() { return to_unit(counter_hash(seed_, stream_, counter_++)); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() {
        // Uses a fresh pair per call; the second variate is discarded.
        const Vec2 z = normal_pair(seed_, stream_ + 1, normal_counter_++);
        return z.x;
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint64_t normal_counter_ = 0;
};

}  // namespace cat0
