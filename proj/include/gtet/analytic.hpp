#pragma once

#include <cstdint>
#include <string>

#include "gtet/quadrature.hpp"

namespace gtet {

// Parameters of the joint tail probability of two correlated F-like ratios
// sharing a common chi-square denominator.
struct KrishnaiahParams {
    double n = 3;    // numerator-side degrees
    double m = 3;    // denominator degrees
    double rho = 0;  // numerator correlation, |rho| < 1
    double xi = 0;   // threshold, >= 0
    double eta = 0;  // derived: n xi / (m (1 - rho^2))

    // Builds params with eta derived from the others.
    static KrishnaiahParams make(double n, double m, double rho, double xi);
};

struct KrishnaiahResult {
    double value = 0;
    double error_bound = 0;     // quadrature + truncation, conservative
    int terms = 0;              // series terms summed
    std::uint64_t evaluations = 0;
};

// Inner integral of the tail series:
//   Lambda_k = int_eta^inf int_eta^inf (xy)^{n/2+k-1} / (1+x+y)^{n+2k+m/2} dx dy,
// computed by 2D adaptive quadrature after the substitution x = eta + u^2,
// y = eta + v^2 (which removes the half-power edge behaviour at eta = 0).
QuadratureResult lambda_k(int k, double n, double m, double eta,
                          const QuadratureSpec& spec);

// P(both ratios exceed xi):
//   (1-rho^2)^{n/2} / (Gamma(m/2) Gamma(n/2)) *
//   sum_k rho^{2k} Gamma(n+m/2+2k) / (k! Gamma(n/2+k)) Lambda_k.
// Gamma factors are evaluated in log space; terms are summed in fixed order.
KrishnaiahResult krishnaiah_joint_tail(const KrishnaiahParams& params,
                                       const QuadratureSpec& spec,
                                       double series_rel_tol);

// Quadrant integral of the triple-convolution density (general case):
//   int_0^inf int_0^inf (1/(4 sqrt(3) pi)) exp((z1+z2-sqrt(3)sqrt(3z1^2-2z1z2+3z2^2))/4).
QuadratureResult gamma_cone_probability(const QuadratureSpec& spec);

// Quadrant integral of the pinned triple-convolution density:
//   int_0^inf int_0^inf (1/(2 sqrt(3) pi)) exp(z1+z2-sqrt(3)sqrt(z1^2+z2^2)).
QuadratureResult pinned_quadrant_probability(const QuadratureSpec& spec);

enum class AnalyticMethod { series, quadrature, closed_form };

struct AnalyticQuantity {
    std::string name;
    double value = 0;
    double error_bound = 0;
    AnalyticMethod method = AnalyticMethod::closed_form;
    std::uint64_t n_or_evals = 0;  // series evaluations / quadrature points; 0 for closed forms
};

// Registry of the analytic targets by name:
//   reflected-cone | gamma-cone | pinned-quadrant      (series / quadrature)
//   triangle-acute = 1/4, projection-between = 1/2,
//   pinned-triangle-acute = -1/2 + 1/sqrt(2), pinned-projection-between = 1/sqrt(2),
//   mean-volume-gaussian = 2 sqrt(2)/(3 pi), mean-volume-ball = 12 pi/715,
//   mean-volume-cube = 3977/21600 - pi^2/2160                (closed forms)
// Throws domain_error for unknown names.
AnalyticQuantity constant(const std::string& name,
                          const QuadratureSpec& spec = QuadratureSpec{},
                          double series_rel_tol = 1e-10);

const char* analytic_method_name(AnalyticMethod method);

}  // namespace gtet
