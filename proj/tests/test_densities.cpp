#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdint>

#include "gtet/densities.hpp"
#include "gtet/errors.hpp"
#include "gtet/geometry.hpp"
#include "gtet/quadrature.hpp"
#include "gtet/rng.hpp"
#include "gtet/sampling.hpp"

using namespace gtet;

namespace {

const double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("standard covariances") {
    const auto gen = standard_cov(CovCase::general);
    const double eg[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    const auto pin = standard_cov(CovCase::pinned);
    const double ep[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(gen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == eg[i][j]);
            CHECK(pin[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == ep[i][j]);
        }
}

TEST_CASE("inverse-covariance partition for the reference cases") {
    const MillerParams id = miller_params_from_cov({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
    CHECK(id.Omega[0][0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id.Omega[0][1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(id.Omega[1][1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id.v[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(id.omega == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id.sqrt_det == doctest::Approx(1.0).epsilon(1e-14));

    const MillerParams gen = miller_params_from_cov(standard_cov(CovCase::general));
    CHECK(gen.Omega[0][0] == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(gen.Omega[0][1] == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(gen.Omega[1][0] == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(gen.Omega[1][1] == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(gen.v[0] == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(gen.v[1] == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(gen.omega == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(gen.sqrt_det == doctest::Approx(0.5).epsilon(1e-13));

    const MillerParams pin = miller_params_from_cov(standard_cov(CovCase::pinned));
    CHECK(pin.Omega[0][0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(pin.Omega[0][1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(pin.Omega[1][1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(pin.v[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(pin.v[1] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(pin.omega == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(pin.sqrt_det == doctest::Approx(1.0).epsilon(1e-13));

    CHECK_THROWS_AS(miller_params_from_cov({{{1, 0.5, 0}, {0.3, 1, 0}, {0, 0, 1}}}),
                    domain_error);
    CHECK_THROWS_AS(miller_params_from_cov({{{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}}),
                    domain_error);
    CHECK_THROWS_AS(miller_params_from_cov({{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}}),
                    domain_error);
}

TEST_CASE("product density frozen values and origin behaviour") {
    const MillerParams gen = miller_params_from_cov(standard_cov(CovCase::general));
    const MillerParams pin = miller_params_from_cov(standard_cov(CovCase::pinned));

    CHECK(miller_density(gen, 1, 1) ==
          doctest::Approx(0.0551857974843936827437).epsilon(1e-13));
    CHECK(miller_density(gen, 1, 1) ==
          doctest::Approx(std::exp((1 - std::sqrt(3.0)) / 2) / (4 * kPi)).epsilon(1e-13));
    CHECK(miller_density(pin, 1, 0) ==
          doctest::Approx(0.0765410658274074563053).epsilon(1e-13));
    CHECK(miller_density(pin, 1, 0) ==
          doctest::Approx(std::exp(1 - std::sqrt(3.0)) / (2 * kPi)).epsilon(1e-13));

    CHECK_THROWS_AS(miller_density(gen, 0, 0), domain_error);
    CHECK_THROWS_AS(miller_density(pin, 0, 0), domain_error);
}

TEST_CASE("product density agrees with the closed forms everywhere") {
    const MillerParams gen = miller_params_from_cov(standard_cov(CovCase::general));
    const MillerParams pin = miller_params_from_cov(standard_cov(CovCase::pinned));
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        TrialRng rng(616, i);
        const double z1 = 5.0 * (2 * rng.next_uniform() - 1);
        const double z2 = 5.0 * (2 * rng.next_uniform() - 1);
        if (std::fabs(z1) < 1e-6 && std::fabs(z2) < 1e-6) continue;

        const double qg = 3 * z1 * z1 - 2 * z1 * z2 + 3 * z2 * z2;
        const double closed_gen = std::exp(0.25 * (z1 + z2 - std::sqrt(3.0) * std::sqrt(qg))) /
                                  (2 * kPi * std::sqrt(qg));
        REQUIRE(miller_density(gen, z1, z2) ==
                doctest::Approx(closed_gen).epsilon(1e-13));

        const double qp = z1 * z1 + z2 * z2;
        const double closed_pin =
            std::exp(z1 + z2 - std::sqrt(3.0) * std::sqrt(qp)) / (2 * kPi * std::sqrt(qp));
        REQUIRE(miller_density(pin, z1, z2) ==
                doctest::Approx(closed_pin).epsilon(1e-13));

        // The general density is symmetric under swapping the coordinates.
        REQUIRE(miller_density(gen, z1, z2) ==
                doctest::Approx(miller_density(gen, z2, z1)).epsilon(1e-13));
    }

    // Far tail: the large-argument branch must stay finite and accurate.
    CHECK(miller_density(gen, 600, 300) ==
          doctest::Approx(std::exp(0.25 * (900 - std::sqrt(3.0) *
                                                     std::sqrt(3 * 600.0 * 600 -
                                                               2 * 600 * 300 +
                                                               3 * 300.0 * 300))) /
                          (2 * kPi * std::sqrt(3 * 600.0 * 600 - 2 * 600 * 300 +
                                               3 * 300.0 * 300)))
              .epsilon(1e-11));
    CHECK(std::isfinite(miller_density(pin, 400, 0)));
    CHECK(miller_density(pin, 400, 0) > 0.0);
}

TEST_CASE("product density integrates to one") {
    const MillerParams gen = miller_params_from_cov(standard_cov(CovCase::general));
    const MillerParams pin = miller_params_from_cov(standard_cov(CovCase::pinned));
    QuadratureSpec spec;
    spec.abs_tol = 1e-9;
    spec.rel_tol = 1e-9;
    const auto ig = integrate_2d(
        [&gen](double z1, double z2) { return miller_density(gen, z1, z2); },
        Region2D::whole_plane(), spec);
    CHECK(ig.converged);
    CHECK(ig.value == doctest::Approx(1.0).epsilon(1e-6));
    const auto ip = integrate_2d(
        [&pin](double z1, double z2) { return miller_density(pin, z1, z2); },
        Region2D::whole_plane(), spec);
    CHECK(ip.converged);
    CHECK(ip.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("triple-sum density frozen values") {
    CHECK(triple_convolution_density(CovCase::general, 0, 0) ==
          doctest::Approx(1.0 / (4 * std::sqrt(3.0) * kPi)).epsilon(1e-15));
    CHECK(triple_convolution_density(CovCase::pinned, 0, 0) ==
          doctest::Approx(1.0 / (2 * std::sqrt(3.0) * kPi)).epsilon(1e-15));
    CHECK(triple_convolution_density(CovCase::general, 0, 0) ==
          doctest::Approx(0.0459440746184826708).epsilon(1e-14));
    CHECK(triple_convolution_density(CovCase::pinned, 0, 0) ==
          doctest::Approx(0.0918881492369653416).epsilon(1e-14));
    CHECK(triple_convolution_density(CovCase::general, 1, 1) ==
          doctest::Approx(0.0318615350330588651).epsilon(1e-14));

    // Everywhere finite, positive, and symmetric (general case).
    for (std::uint64_t i = 0; i < 1000; ++i) {
        TrialRng rng(617, i);
        const double z1 = 8.0 * (2 * rng.next_uniform() - 1);
        const double z2 = 8.0 * (2 * rng.next_uniform() - 1);
        const double g = triple_convolution_density(CovCase::general, z1, z2);
        REQUIRE(std::isfinite(g));
        REQUIRE(g > 0.0);
        REQUIRE(g == doctest::Approx(triple_convolution_density(CovCase::general, z2, z1))
                         .epsilon(1e-14));
    }
}

TEST_CASE("triple-sum density integrates to one") {
    for (CovCase c : {CovCase::general, CovCase::pinned}) {
        const auto r = integrate_2d(
            [c](double z1, double z2) { return triple_convolution_density(c, z1, z2); },
            Region2D::whole_plane());
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("pinned quadrant mass matches direct simulation") {
    // The first-quadrant mass of the pinned triple-sum density equals the
    // probability that the pinned vertex lies in the gamma cone.
    const auto quad = integrate_2d(
        [](double z1, double z2) {
            return triple_convolution_density(CovCase::pinned, z1, z2);
        },
        Region2D::quadrant_from(0));
    CHECK(quad.converged);
    CHECK(quad.value == doctest::Approx(0.8343764256).epsilon(1e-8));

    const auto mc = estimate_probability(
        {SamplerKind::pinned_tetra, 71},
        [](const SampleValue& v) {
            const Tetrahedron& t = std::get<Tetrahedron>(v);
            return cone_events(t.a, t.b, t.c, t.d).in_gamma;
        },
        1'000'000);
    CHECK(std::fabs(mc.p_hat - quad.value) < 4.0 * mc.stderr_);
}

TEST_CASE("characteristic function frozen values") {
    CHECK(charfun(CovCase::general, 0, 0) == std::complex<double>(1.0, 0.0));
    CHECK(charfun(CovCase::pinned, 0, 0) == std::complex<double>(1.0, 0.0));

    const std::complex<double> f10 = charfun(CovCase::pinned, 1, 0);
    CHECK(f10.real() == doctest::Approx(0.5493420567339049830).epsilon(1e-14));
    CHECK(f10.imag() == doctest::Approx(0.2275449302811136707).epsilon(1e-14));
    const std::complex<double> direct =
        1.0 / std::sqrt(std::complex<double>(2.0, -2.0));
    CHECK(f10.real() == doctest::Approx(direct.real()).epsilon(1e-14));
    CHECK(f10.imag() == doctest::Approx(direct.imag()).epsilon(1e-14));

    // General radicand (3u^2 + 3v^2 + 2uv + 1) - 2(u+v) i at (1, 1).
    const std::complex<double> g11 = charfun(CovCase::general, 1, 1);
    const std::complex<double> expect = 1.0 / std::sqrt(std::complex<double>(9.0, -4.0));
    CHECK(g11.real() == doctest::Approx(expect.real()).epsilon(1e-14));
    CHECK(g11.imag() == doctest::Approx(expect.imag()).epsilon(1e-14));
}

TEST_CASE("square grid helper") {
    const auto grid = square_grid(-1, 1, 0.5);
    CHECK(grid.size() == 25);
    CHECK(grid.front().first == -1.0);
    CHECK(grid.front().second == -1.0);
    CHECK(grid.back().first == 1.0);
    CHECK(grid.back().second == 1.0);
}

TEST_CASE("cube of the one-copy characteristic function equals the triple sum") {
    const auto grid = square_grid(-5, 5, 0.5);
    CHECK(charfun_identity_check(CovCase::general, grid) < 1e-13);
    CHECK(charfun_identity_check(CovCase::pinned, grid) < 1e-13);
}

TEST_CASE("characteristic function matches direct simulation") {
    CHECK(charfun_mc_check(CovCase::general, 0, 0, 100'000, 5) == 0.0);
    CHECK(charfun_mc_check(CovCase::pinned, 1, 1, 1'000'000, 6) < 4e-3);
    CHECK(charfun_mc_check(CovCase::general, 0.5, -0.5, 1'000'000, 7) < 4e-3);
    CHECK_THROWS_AS(charfun_mc_check(CovCase::general, 1, 1, 50'000, 5), domain_error);
}

TEST_CASE("dihedral-angle joint density frozen values") {
    CHECK(miles_joint_density(kPi / 2, kPi / 2, kPi / 2) ==
          doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-14));
    CHECK(miles_joint_density(1.2, 1.8, 2.0) ==
          doctest::Approx(0.0672171367373188637).epsilon(1e-13));
    CHECK(miles_joint_density(2.0, 2.0, 2.0) ==
          doctest::Approx(0.0879339780503100793).epsilon(1e-13));
    CHECK(miles_joint_density(2.8, 2.8, 2.8) ==
          doctest::Approx(0.5422450178755371063).epsilon(1e-13));

    // Zero on and outside the support surface, positive inside.
    CHECK(miles_joint_density(kPi / 3, kPi / 3, kPi / 3) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(miles_joint_density(0.3, 0.3, 0.3) == 0.0);
    CHECK(miles_joint_density(3.0, 3.0, 0.05) == 0.0);
    CHECK(miles_joint_density(1.9, 1.2, 1.1) > 0.0);

    CHECK_THROWS_AS(miles_joint_density(-0.1, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(miles_joint_density(1.0, 1.0, 3.2), domain_error);
    CHECK_THROWS_AS(miles_joint_density(1.0, kPi, 1.0), domain_error);
}

TEST_CASE("dihedral-angle marginal is flat") {
    CHECK(miles_marginal_density(0.3) == 1.0 / kPi);
    CHECK(miles_marginal_density(3.0) == 1.0 / kPi);
    CHECK_THROWS_AS(miles_marginal_density(0.0), domain_error);
    CHECK_THROWS_AS(miles_marginal_density(kPi), domain_error);

    // Numeric slice masses of the joint density reproduce the flat marginal.
    for (double z : {0.5, 1.0, 2.5}) {
        const double half = 0.5 * (kPi - z);
        const auto r = integrate_2d(
            [z](double p, double q) { return 2.0 * miles_joint_density(p + q, p - q, z); },
            Region2D::rectangle(0.5 * (kPi - z), 0.5 * (kPi + z), -half, half));
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(1.0 / kPi).epsilon(1e-8));
    }
}

TEST_CASE("dihedral-angle joint density integrates to one") {
    CHECK(std::fabs(miles_normalization() - 1.0) < 1e-8);
}

TEST_CASE("solid-angle density frozen values") {
    struct Row {
        double x, value;
    };
    const Row rows[] = {
        {0.5, 0.476102612085732164},
        {1.0, 0.298665428291673995},
        {2.0, 0.143432056044931952},
        {3.0, 0.0845748532396610983},
        {kPi - 0.05, 0.0812777985197913987},
        {kPi - 0.01, 0.0799121351498076728},
        {kPi, 0.0795774715459476679},
        {kPi + 0.01, 0.0792454605465775137},
        {kPi + 0.05, 0.0779434729493314017},
        {4.0, 0.0587196414660844122},
        {5.0, 0.0469086348167931437},
        {6.0, 0.0425914867587217808},
        {6.28, 0.0423829001090861664},
    };
    for (const Row& row : rows)
        CHECK(crofton_density(row.x) == doctest::Approx(row.value).epsilon(1e-11));

    // The removable singularity at pi evaluates to exactly 1/(4 pi).
    CHECK(crofton_density(kPi) == 1.0 / (4.0 * kPi));

    // Continuity across the expansion window edges.
    CHECK(std::fabs(crofton_density(kPi - 0.05 - 1e-9) - crofton_density(kPi - 0.05 + 1e-9)) <
          1e-8);
    CHECK(std::fabs(crofton_density(kPi + 0.05 - 1e-9) - crofton_density(kPi + 0.05 + 1e-9)) <
          1e-8);

    CHECK_THROWS_AS(crofton_density(0.0), domain_error);
    CHECK_THROWS_AS(crofton_density(-0.1), domain_error);
    CHECK_THROWS_AS(crofton_density(2 * kPi), domain_error);
}

TEST_CASE("solid-angle density limits") {
    CHECK(crofton_limit_zero() ==
          doctest::Approx((3 * kPi * kPi + 12) / (16 * kPi)).epsilon(1e-15));
    CHECK(crofton_limit_zero() == doctest::Approx(0.827781037185929236).epsilon(1e-14));
    CHECK(crofton_limit_two_pi() == doctest::Approx(0.0423828737884809262).epsilon(1e-14));
    CHECK(crofton_density(1e-8) == doctest::Approx(crofton_limit_zero()).epsilon(1e-6));
    CHECK(crofton_density(2 * kPi - 1e-8) ==
          doctest::Approx(crofton_limit_two_pi()).epsilon(1e-6));
}

TEST_CASE("solid-angle density integrates to one") {
    const auto r = integrate_1d([](double x) { return crofton_density(x); }, 0.0,
                                2 * kPi);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("solid-angle distribution function") {
    CHECK(crofton_cdf(0.0) == 0.0);
    CHECK(crofton_cdf(-1.0) == 0.0);
    CHECK(crofton_cdf(1.0) == doctest::Approx(0.504382972964628631).epsilon(1e-9));
    CHECK(crofton_cdf(3.0) == doctest::Approx(0.821718645042941044).epsilon(1e-9));
    CHECK(crofton_cdf(kPi) == doctest::Approx(5.0 / 6.0).epsilon(1e-9));
    CHECK(crofton_cdf(6.28) == doctest::Approx(0.999864997499883644).epsilon(1e-8));
    CHECK(std::fabs(crofton_cdf(2 * kPi) - 1.0) < 1e-10);
    CHECK(crofton_cdf(7.0) == crofton_cdf(2 * kPi));

    double prev = 0.0;
    for (double x = 0.1; x < 2 * kPi; x += 0.1) {
        const double cur = crofton_cdf(x);
        CHECK(cur >= prev);
        prev = cur;
    }
}
