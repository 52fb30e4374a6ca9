#include "gtet/special_functions.hpp"

#include <cmath>

#include "gtet/errors.hpp"

namespace gtet {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

double log_gamma_lanczos(double x) {
    // Valid for x >= 0.5; callers below x use the recurrence.
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return kLogSqrtTwoPi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw domain_error("log_gamma: requires x > 0");
    if (x >= 0.5) return log_gamma_lanczos(x);
    // log G(x) = log G(x+1) - log x keeps the approximation in its sweet spot.
    return log_gamma_lanczos(x + 1.0) - std::log(x);
}

double bessel_k_half(double t) {
    if (!(t > 0.0)) throw domain_error("bessel_k_half: requires t > 0");
    constexpr double kSqrtHalfPi = 1.2533141373155002512078826424055;
    return kSqrtHalfPi * std::exp(-t) / std::sqrt(t);
}

double f22_tail(double x) {
    if (!(x >= 0.0)) throw domain_error("f22_tail: requires x >= 0");
    return 1.0 / (1.0 + x);
}

}  // namespace gtet
