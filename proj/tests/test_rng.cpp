#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "gtet/errors.hpp"
#include "gtet/rng.hpp"

using gtet::normal_quantile;
using gtet::philox4x32;
using gtet::TrialRng;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("philox known-answer vectors") {
    // Reference vectors for Philox4x32-10 (zero input, all-ones input, and
    // the pi-digit counter/key pair).
    const std::array<std::uint32_t, 4> zero_ctr{0, 0, 0, 0};
    const std::array<std::uint32_t, 2> zero_key{0, 0};
    const auto r0 = philox4x32(zero_ctr, zero_key);
    CHECK(r0[0] == 0x6627e8d5u);
    CHECK(r0[1] == 0xe169c58du);
    CHECK(r0[2] == 0xbc57ac4cu);
    CHECK(r0[3] == 0x9b00dbd8u);

    const std::array<std::uint32_t, 4> ff_ctr{0xffffffffu, 0xffffffffu, 0xffffffffu,
                                              0xffffffffu};
    const std::array<std::uint32_t, 2> ff_key{0xffffffffu, 0xffffffffu};
    const auto r1 = philox4x32(ff_ctr, ff_key);
    CHECK(r1[0] == 0x408f276du);
    CHECK(r1[1] == 0x41c83b0eu);
    CHECK(r1[2] == 0xa20bc7c6u);
    CHECK(r1[3] == 0x6d5451fdu);

    const std::array<std::uint32_t, 4> pi_ctr{0x243f6a88u, 0x85a308d3u, 0x13198a2eu,
                                              0x03707344u};
    const std::array<std::uint32_t, 2> pi_key{0xa4093822u, 0x299f31d0u};
    const auto r2 = philox4x32(pi_ctr, pi_key);
    CHECK(r2[0] == 0xd16cfe09u);
    CHECK(r2[1] == 0x94fdccebu);
    CHECK(r2[2] == 0x5001e420u);
    CHECK(r2[3] == 0x24126ea1u);
}

TEST_CASE("philox is a pure function of counter and key") {
    const std::array<std::uint32_t, 4> ctr{12, 34, 56, 78};
    const std::array<std::uint32_t, 2> key{90, 11};
    CHECK(philox4x32(ctr, key) == philox4x32(ctr, key));

    const auto base = philox4x32(ctr, key);
    for (int slot = 0; slot < 4; ++slot) {
        auto bumped = ctr;
        bumped[static_cast<std::size_t>(slot)] += 1;
        CHECK(philox4x32(bumped, key) != base);
    }
    CHECK(philox4x32(ctr, {90, 12}) != base);
}

TEST_CASE("normal quantile reference points") {
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.5758293035489004).epsilon(1e-12));
    CHECK(normal_quantile(0.8413447460685429) ==
          doctest::Approx(1.0).epsilon(1e-12));  // Phi(1)
}

TEST_CASE("normal quantile symmetry and round trip") {
    // Symmetry: checked away from the tails, where forming 1 - p is exact
    // enough that the comparison measures the function rather than the
    // argument rounding.
    for (double p : {1e-3, 0.01, 0.1, 0.25, 0.4}) {
        CHECK(normal_quantile(p) ==
              doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-13));
    }

    // Round trip through an independent CDF implementation; erfc keeps full
    // relative accuracy in the lower tail, so each probability is compared on
    // its own tail side.
    for (double p : {1e-300, 1e-100, 1e-12, 1e-6, 1e-3, 0.01, 0.1, 0.25, 0.4, 0.5}) {
        const double q = normal_quantile(p);
        CHECK(std::fabs(normal_cdf(q) - p) / p < 1e-11);
    }
    for (double p : {0.6, 0.75, 0.9, 0.99}) {
        const double q = normal_quantile(p);
        const double tail = 1.0 - p;
        CHECK(std::fabs(normal_cdf(-q) - tail) / tail < 1e-11);
    }
}

TEST_CASE("normal quantile rejects arguments outside (0,1)") {
    CHECK_THROWS_AS(normal_quantile(0.0), gtet::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), gtet::domain_error);
    CHECK_THROWS_AS(normal_quantile(-0.25), gtet::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.5), gtet::domain_error);
}

TEST_CASE("trial streams stay strictly inside (0,1)") {
    for (std::uint64_t trial : {0ull, 1ull, 77ull, 123456789ull}) {
        TrialRng rng(2024, trial);
        for (int i = 0; i < 10'000; ++i) {
            const double u = rng.next_uniform();
            CHECK(u > 0.0);
            CHECK(u < 1.0);
        }
    }
}

TEST_CASE("trial streams are deterministic and distinct") {
    TrialRng a(99, 5), b(99, 5);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_uniform() == b.next_uniform());

    // Different trials (and different seeds) give different streams.
    TrialRng c(99, 6), d(100, 5), e(99, 5);
    bool differs_trial = false, differs_seed = false;
    for (int i = 0; i < 100; ++i) {
        const double base = e.next_uniform();
        if (c.next_uniform() != base) differs_trial = true;
        if (d.next_uniform() != base) differs_seed = true;
    }
    CHECK(differs_trial);
    CHECK(differs_seed);
}

TEST_CASE("stream moments match uniform and normal laws") {
    const std::uint64_t n = 100'000;
    double usum = 0, usum2 = 0, zsum = 0, zsum2 = 0;
    for (std::uint64_t trial = 0; trial < n; ++trial) {
        TrialRng rng(31337, trial);
        const double u = rng.next_uniform();
        const double z = rng.next_normal();
        usum += u;
        usum2 += u * u;
        zsum += z;
        zsum2 += z * z;
    }
    const double nn = static_cast<double>(n);
    const double umean = usum / nn;
    const double uvar = usum2 / nn - umean * umean;
    const double zmean = zsum / nn;
    const double zvar = zsum2 / nn - zmean * zmean;
    CHECK(std::fabs(umean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / nn));
    CHECK(std::fabs(uvar - 1.0 / 12.0) < 4.0 * std::sqrt(1.0 / 180.0 / nn));
    CHECK(std::fabs(zmean) < 4.0 / std::sqrt(nn));
    CHECK(std::fabs(zvar - 1.0) < 4.0 * std::sqrt(2.0 / nn));
}
