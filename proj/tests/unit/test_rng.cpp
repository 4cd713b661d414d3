#include <cmath>
#include <cstdint>
#include <set>

#include "doctest.h"
#include "mvhl/rng.hpp"

using namespace mvhl;

TEST_CASE("rng: identical seeds give identical streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 64; ++i) {
        CHECK(a.raw() == b.raw());
    }
    Rng c(42), d(43);
    bool differ = false;
    for (int i = 0; i < 8; ++i) differ = differ || (c.raw() != d.raw());
    CHECK(differ);
}

TEST_CASE("rng: uniform lies in [0,1) and fills the range") {
    Rng rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("rng: uniform_index is in bounds and hits every value") {
    Rng rng(11);
    std::set<Index> seen;
    for (int i = 0; i < 1000; ++i) {
        const Index k = rng.uniform_index(5);
        REQUIRE(k >= 0);
        REQUIRE(k < 5);
        seen.insert(k);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("rng: complex_gaussian has roughly unit variance per component") {
    Rng rng(3);
    double sum_re = 0.0, sum_sq = 0.0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        const Complex z = rng.complex_gaussian();
        sum_re += z.real();
        sum_sq += std::norm(z);
    }
    CHECK(std::abs(sum_re / trials) < 0.05);        // mean ~ 0
    CHECK(std::abs(sum_sq / trials - 2.0) < 0.08);  // E|z|^2 = 2
}

TEST_CASE("rng: derive_stream separates paths and is reproducible") {
    const std::uint64_t base = 123;
    CHECK(derive_stream(base, {1, 2}) == derive_stream(base, {1, 2}));
    CHECK(derive_stream(base, {1, 2}) != derive_stream(base, {2, 1}));
    CHECK(derive_stream(base, {1}) != derive_stream(base, {1, 0}));
    CHECK(derive_stream(base, {0}) != derive_stream(base + 1, {0}));

    // Streams with adjacent indices should have no obvious correlation.
    std::set<std::uint64_t> streams;
    for (std::uint64_t t = 0; t < 100; ++t) streams.insert(derive_stream(base, {0, t}));
    CHECK(streams.size() == 100);
}

TEST_CASE("rng: splitmix64 scrambles small inputs") {
    std::set<std::uint64_t> out;
    for (std::uint64_t x = 0; x < 100; ++x) out.insert(splitmix64(x));
    CHECK(out.size() == 100);
    CHECK(splitmix64(0) != 0);
}
