#pragma once

namespace gtet {

// Natural log of the gamma function for x > 0 (Lanczos approximation,
// relative error well below 1e-13).
double log_gamma(double x);

// Modified Bessel function of the second kind at order 1/2:
// K_{1/2}(t) = sqrt(pi/2) * exp(-t) / sqrt(t), t > 0.
double bessel_k_half(double t);

// Survival function of the F(2,2) distribution: P(F > x) = 1/(1+x), x >= 0.
double f22_tail(double x);

}  // namespace gtet
