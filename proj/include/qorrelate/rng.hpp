#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace qorrelate {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of sample `index` in a sweep. Depends only on (master, index), so
// sweeps are reproducible for any worker count or visiting order.
constexpr std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index ^ 0xd1b54a32d192ed03ULL));
}

// Counter-based 64-bit stream: word k is mix64(seed + k * golden).
class SeedStream {
public:
    explicit constexpr SeedStream(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        const std::uint64_t out = mix64(state_);
        state_ += 0x9e3779b97f4a7c15ULL;
        return out;
    }

    // Uniform on (0, 1], 53-bit resolution.
    double next_open_unit() noexcept {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Box-Muller standard normals drawn from a SeedStream. Portable across
// standard libraries, unlike std::normal_distribution.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) noexcept : stream_(seed) {}

    double next() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(stream_.next_open_unit()));
        const double angle = 2.0 * std::numbers::pi * stream_.next_open_unit();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    // Real and imaginary parts i.i.d. N(0, 1).
    std::complex<double> next_complex() noexcept {
        const double re = next();
        const double im = next();
        return {re, im};
    }

private:
    SeedStream stream_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qorrelate
