#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

#include "mvhl/types.hpp"

namespace mvhl {

/// One scramble round of SplitMix64 (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a path of indices
/// (e.g. {cell, trial}). Each path element is folded in with SplitMix64, so
/// the mapping is fixed for all time: parallel and serial runs agree.
inline std::uint64_t derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t state = splitmix64(seed);
    for (std::uint64_t word : path) state = splitmix64(state ^ splitmix64(word + 0x9e3779b97f4a7c15ULL));
    return state;
}

/// Deterministic random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Floating-point variates deliberately avoid std:: distributions
/// (their algorithms are implementation-defined): uniforms use the 53-bit
/// shift construction and Gaussians use Box-Muller, so identical seeds give
/// bit-identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased draw from {0, ..., bound-1} by rejection.
    Index uniform_index(Index bound) {
        const std::uint64_t b = static_cast<std::uint64_t>(bound);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
        std::uint64_t x = raw();
        while (x >= limit) x = raw();
        return static_cast<Index>(x % b);
    }

    /// Standard complex Gaussian with independent N(0,1) real and imaginary
    /// parts (one Box-Muller pair per draw).
    Complex complex_gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return Complex(radius * std::cos(angle), radius * std::sin(angle));
    }

    /// Real N(0,1) variate (cosine leg of a Box-Muller pair).
    double gaussian() { return complex_gaussian().real(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace mvhl
