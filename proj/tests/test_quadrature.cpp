#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gtet/analytic.hpp"
#include "gtet/errors.hpp"
#include "gtet/quadrature.hpp"
#include "oracles.hpp"

using gtet::integrate_1d;
using gtet::integrate_2d;
using gtet::QuadratureSpec;
using gtet::Region2D;
using gtet::sum_series;

namespace {
const double kPi = 3.14159265358979323846;
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("finite interval basics") {
    auto r = integrate_1d([](double x) { return x * x; }, 0, 1);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r.error_estimate >= 0);
    CHECK(r.evaluations > 0);

    r = integrate_1d([](double x) { return std::sin(x); }, 0, kPi);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("semi-infinite and whole-line ranges") {
    auto r = integrate_1d([](double x) { return std::exp(-x); }, 0, kInf);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    r = integrate_1d([](double x) { return x * std::exp(-x); }, 0, kInf);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    r = integrate_1d([](double x) { return std::exp(-x * x / 2); }, -kInf, kInf);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-12));

    r = integrate_1d([](double x) { return std::exp(x); }, -kInf, 0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularities") {
    auto r = integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0, 1);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));

    r = integrate_1d([](double x) { return std::log(x); }, 0, 1);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("error estimates are conservative on a battery of known integrals") {
    struct Case {
        std::function<double(double)> f;
        double lo, hi, exact;
    };
    const std::vector<Case> cases{
        {[](double x) { return x * x; }, 0, 1, 1.0 / 3.0},
        {[](double x) { return std::sin(x); }, 0, kPi, 2.0},
        {[](double x) { return std::exp(-x); }, 0, kInf, 1.0},
        {[](double x) { return x * std::exp(-x); }, 0, kInf, 1.0},
        {[](double x) { return x * x * std::exp(-x); }, 0, kInf, 2.0},
        {[](double x) { return 1.0 / (1.0 + x * x); }, -kInf, kInf, kPi},
        {[](double x) { return std::exp(-x * x / 2); }, -kInf, kInf, std::sqrt(2 * kPi)},
        {[](double x) { return 1.0 / ((1 + x) * (1 + x)); }, 0, kInf, 1.0},
        {[](double x) { return std::cos(10 * x); }, 0, 1, std::sin(10.0) / 10.0},
        {[](double x) { return 1.0 / std::cosh(x); }, -kInf, kInf, kPi},
        {[](double x) { return std::exp(-std::fabs(x)); }, -kInf, kInf, 2.0},
        {[](double x) { return x * x * x - 2 * x * x + 5; }, -1, 3, 64.0 / 3.0},
        {[](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1.0},
        {[](double x) { return std::exp(-100 * (x - 0.5) * (x - 0.5)); }, 0, 1,
         std::sqrt(kPi) / 10.0 * std::erf(5.0)},
        {[](double x) { return std::log(x); }, 0, 1, -1.0},
        {[](double x) { return 1.0 / std::sqrt(x); }, 0, 1, 2.0},
    };
    int covered = 0;
    for (const auto& c : cases) {
        const auto r = integrate_1d(c.f, c.lo, c.hi);
        const double true_err = std::fabs(r.value - c.exact);
        if (true_err <= r.error_estimate + 1e-15) ++covered;
        // Never drastically overconfident.
        CHECK(true_err <= 10.0 * r.error_estimate + 1e-13);
    }
    CHECK(covered >= static_cast<int>(cases.size()) - 1);
}

TEST_CASE("budget exhaustion reports non-convergence") {
    QuadratureSpec tiny;
    tiny.max_evaluations = 1000;  // the smallest accepted budget
    const auto r = integrate_1d(
        [](double x) { return std::sin(50 * x) * std::exp(std::sin(9 * x)); }, 0, 10,
        tiny);
    CHECK_FALSE(r.converged);

    QuadratureSpec bad;
    bad.max_evaluations = 100;
    CHECK_THROWS_AS(integrate_1d([](double x) { return x; }, 0, 1, bad),
                    gtet::domain_error);
}

TEST_CASE("non-finite integrand values surface as non-convergence") {
    const auto r = integrate_1d(
        [](double x) { return x < 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; },
        0, 1);
    CHECK_FALSE(r.converged);
}

TEST_CASE("two-dimensional rectangle and product rules") {
    auto r = integrate_2d([](double x, double y) { return x * y; },
                          Region2D::rectangle(0, 1, 0, 1));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-13));

    // High-degree product polynomial; the embedded-rule cross term must not
    // let the cell report spurious convergence.
    r = integrate_2d(
        [](double x, double y) { return std::pow(x, 14) * std::pow(y, 14); },
        Region2D::rectangle(-1, 1, -1, 1));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(4.0 / 225.0).epsilon(1e-11));
}

TEST_CASE("two-dimensional whole plane and quadrant") {
    auto r = integrate_2d([](double x, double y) { return std::exp(-x * x - y * y); },
                          Region2D::whole_plane());
    CHECK(r.converged);
    CHECK(std::fabs(r.value - kPi) < 1e-10 * kPi);

    r = integrate_2d(
        [](double x, double y) { return std::pow(1.0 + x + y, -4.0); },
        Region2D::quadrant_from(0));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 6.0).epsilon(1e-10));

    // Diagonal ridge: exp(-(x-y)^2 - 0.01 (x+y)^2) integrates to 5 pi.
    r = integrate_2d(
        [](double x, double y) {
            const double u = x - y, v = x + y;
            return std::exp(-u * u - 0.01 * v * v);
        },
        Region2D::whole_plane());
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(5 * kPi).epsilon(1e-8));
}

TEST_CASE("series summation") {
    auto geo = sum_series([](long k) { return std::pow(0.5, k); }, 1e-12, 200);
    CHECK(geo.value == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(geo.terms > 30);

    auto expo = sum_series(
        [](long k) {
            double t = 1.0;
            for (long j = 2; j <= k; ++j) t /= static_cast<double>(j);
            return t;
        },
        1e-15, 100);
    CHECK(expo.value == doctest::Approx(std::exp(1.0)).epsilon(1e-14));

    CHECK_THROWS_AS(
        sum_series([](long k) { return 1.0 / static_cast<double>(k + 1); }, 1e-12, 1000),
        gtet::convergence_error);
}

TEST_CASE("series inner integral closed form at zero threshold") {
    // Lambda_k(0) = Gamma(n/2+k)^2 Gamma(m/2) / Gamma(n+2k+m/2); at
    // n = m = 3, k = 0 this is 2 pi / 105.
    const auto l0 = gtet::lambda_k(0, 3, 3, 0.0, QuadratureSpec{});
    CHECK(l0.converged);
    CHECK(l0.value == doctest::Approx(2 * kPi / 105.0).epsilon(1e-9));

    const auto l1 = gtet::lambda_k(1, 3, 3, 0.0, QuadratureSpec{});
    const double exact1 = std::exp(2 * std::lgamma(2.5) + std::lgamma(1.5) - std::lgamma(6.5));
    CHECK(l1.converged);
    CHECK(l1.value == doctest::Approx(exact1).epsilon(1e-9));
}

TEST_CASE("series inner integral against an importance-sampled oracle") {
    // Quadrature value at the working threshold eta = 3/8.
    const auto quad = gtet::lambda_k(0, 3, 3, 0.375, QuadratureSpec{});
    CHECK(quad.converged);
    CHECK(quad.value == doctest::Approx(0.0383853856443778850).epsilon(1e-10));

    // Independent Monte Carlo route (different integral representation).
    const auto mc = oracle::lambda0_mc(0.375, 100'000'000, 555);
    CHECK(mc.stderr_ < 5e-7);
    CHECK(std::fabs(mc.value - quad.value) < 1e-6);
}
