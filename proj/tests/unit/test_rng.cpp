#include "pickands/rng.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>

using namespace pickands;

namespace {

using Block = std::array<std::uint32_t, 4>;

} // namespace

TEST_SUITE("rng") {

    TEST_CASE("Philox4x32-10 known-answer vectors (Random123 test suite)") {
        CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) ==
              Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
        CHECK(Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                {0xffffffffu, 0xffffffffu}) ==
              Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
        CHECK(Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                {0xa4093822u, 0x299f31d0u}) ==
              Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
    }

    TEST_CASE("Philox4x32-10 frozen extra vectors") {
        CHECK(Philox4x32::block({1, 0, 0, 0}, {0xdeadbeefu, 0xcafef00du}) ==
              Block{0x149714fau, 0x7a2992c0u, 0x1014078eu, 0x3b34dde9u});
        CHECK(Philox4x32::block({2, 0, 42, 0}, {1, 0}) ==
              Block{0xde7e3e2fu, 0xfe506af5u, 0x4e890570u, 0x235f6363u});
    }

    TEST_CASE("normal stream frozen values, seed 1 replication 0") {
        NormalStream s(1, 0);
        CHECK(s.next() == -0.4138978146527072);
        CHECK(s.next() == -0.24733359080497022);
        CHECK(s.next() == -0.88116354679001752);
        CHECK(s.next() == 0.13619777101788849);
    }

    TEST_CASE("normal stream frozen values, other replications and wide seeds") {
        NormalStream r7(1, 7);
        CHECK(r7.next() == 1.9186622985190471);
        CHECK(r7.next() == -1.7430872656651772);

        NormalStream wide(0xffffffffffffffffull, 0x100000005ull);
        CHECK(wide.next() == -1.479926575440047);
        CHECK(wide.next() == -0.23032916735655568);
    }

    TEST_CASE("streams are deterministic and replication-disjoint") {
        NormalStream a(123, 5), b(123, 5), c(123, 6), d(124, 5);
        bool same_ab = true, diff_ac = false, diff_ad = false;
        for (int i = 0; i < 256; ++i) {
            const double x = a.next();
            same_ab = same_ab && (x == b.next());
            diff_ac = diff_ac || (x != c.next());
            diff_ad = diff_ad || (x != d.next());
        }
        CHECK(same_ab);
        CHECK(diff_ac);
        CHECK(diff_ad);
    }

    TEST_CASE("draws are sane standard normals") {
        NormalStream s(2024, 0);
        double sum = 0.0, sum2 = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const double x = s.next();
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        const double var = sum2 / n - mean * mean;
        CHECK(std::fabs(mean) < 0.01);     // ~4.5 sigma band
        CHECK(std::fabs(var - 1.0) < 0.02);
    }
}
