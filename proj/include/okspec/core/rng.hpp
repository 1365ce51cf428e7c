#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace okspec {

// SplitMix64 generator. All randomness in the project flows through this so
// that a fixed seed reproduces runs bit for bit, independent of platform
// library choices.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    double normal() {
        // Box-Muller, one value per call to keep the stream position simple
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> cnormal() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    // child generator for independent streams (counter-based splitting)
    Rng split(std::uint64_t stream) const {
        Rng child(state_ ^ (0xA0761D6478BD642FULL * (stream + 1)));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
};

}  // namespace okspec
