#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "qic/rng.hpp"

using qic::SplitStream;

TEST_CASE("counter stream reproduces the published Philox4x32-10 zero vector") {
    // Counter and key all zero: the first block of stream (0, 0).
    SplitStream s(0, 0);
    const std::uint32_t expect[4] = {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u};
    for (std::uint32_t e : expect) CHECK(s.next_u32() == e);
}

TEST_CASE("word layout is frozen across blocks for a nontrivial seed and index") {
    // Independently generated from the counter layout
    // (block lo, block hi, index lo, index hi) with key (seed lo, seed hi).
    SplitStream s(0x123456789ABCDEF0ull, 42);
    const std::uint32_t expect[8] = {0x34eb1b75u, 0xfa4f66ccu, 0x23b3d55cu, 0x43f9aa18u,
                                     0x2633028cu, 0x68e0d7afu, 0x5a096937u, 0x06695860u};
    for (std::uint32_t e : expect) CHECK(s.next_u32() == e);
}

TEST_CASE("uniform doubles are frozen and lie in [0, 1)") {
    SplitStream a(0, 0);
    CHECK(a.uniform() == 0.3990464708489645);
    SplitStream b(7, 3);
    CHECK(b.uniform() == 0.5925802497947082);

    SplitStream c(99, 5);
    for (int i = 0; i < 20000; ++i) {
        const double u = c.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("streams are deterministic and distinct indices decorrelate") {
    SplitStream a(12345, 6), b(12345, 6), c(12345, 7);
    bool all_equal_ab = true, all_equal_ac = true;
    for (int i = 0; i < 256; ++i) {
        const std::uint32_t xa = a.next_u32();
        all_equal_ab &= (xa == b.next_u32());
        all_equal_ac &= (xa == c.next_u32());
    }
    CHECK(all_equal_ab);
    CHECK_FALSE(all_equal_ac);
}

TEST_CASE("uniform moments match the flat distribution") {
    SplitStream s(2024, 0);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        sum += u;
        sumsq += u * u;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(5e-3));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(5e-3));
}

TEST_CASE("gaussian moments match the standard normal") {
    SplitStream s(2025, 0);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0, sum3 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = s.gaussian();
        sum += g;
        sumsq += g * g;
        sum3 += g * g * g;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(0.0).epsilon(2e-2));
    CHECK(sumsq / n == doctest::Approx(1.0).epsilon(3e-2));
    CHECK(sum3 / n == doctest::Approx(0.0).epsilon(5e-2));
}

TEST_CASE("gaussian sequence is reproducible including the cached spare") {
    SplitStream a(7, 7), b(7, 7);
    // An odd draw count exercises the cached second Box-Muller sample.
    for (int i = 0; i < 101; ++i) CHECK(a.gaussian() == b.gaussian());
}
