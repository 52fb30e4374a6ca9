#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "gtet/quadrature.hpp"

namespace gtet {

// Which covariance the Gaussian construction uses: all four vertices free
// ("general") or the last vertex fixed at the origin ("pinned").
enum class CovCase { general, pinned };

// Parameters of the product density of Z = y * (x1, x2), obtained by
// partitioning the inverse covariance of (x1, x2, y) into blocks
// ((Omega, v), (v', omega)).
struct MillerParams {
    int p = 2;                                  // dimension of Z
    std::array<std::array<double, 2>, 2> Omega{{{1, 0}, {0, 1}}};
    std::array<double, 2> v{{0, 0}};
    double omega = 1;
    double sqrt_det = 1;                        // sqrt(det(Sigma^-1))
};

// Builds MillerParams from a 3x3 symmetric positive-definite covariance of
// (x1, x2, y).  Throws domain_error if the matrix is not symmetric PD.
MillerParams miller_params_from_cov(const std::array<std::array<double, 3>, 3>& sigma);

// Covariance of (x1, x2, y) per coordinate for the two standard cases, with
// x1 = B - A, x2 = C - A and y = D - A (components of i.i.d. standard
// Gaussian vertices; pinned fixes D at the origin):
//   general: [[2,1,1],[1,2,1],[1,1,2]]   pinned: [[2,1,1],[1,2,1],[1,1,1]]
std::array<std::array<double, 3>, 3> standard_cov(CovCase c);

// Product density at z = (z1, z2), via the generic Bessel-function formula
//   2 sqrt_det / (2 pi)^{3/2} * (omega/q)^{1/4} exp(-v.z) K_{1/2}(sqrt(omega q)),
// q = z' Omega z.  The density has an integrable singularity at the origin;
// calling it at z = 0 is a domain error.
double miller_density(const MillerParams& params, double z1, double z2);

// Density of the sum of three independent copies of the product vector:
//   general: (1/(4 sqrt(3) pi)) exp((z1 + z2 - sqrt(3) sqrt(3 z1^2 - 2 z1 z2 + 3 z2^2)) / 4)
//   pinned:  (1/(2 sqrt(3) pi)) exp(z1 + z2 - sqrt(3) sqrt(z1^2 + z2^2))
// Finite everywhere, including the origin.
double triple_convolution_density(CovCase c, double z1, double z2);

// Characteristic function of the single-copy product vector (principal-branch
// reciprocal square root; the radicand never vanishes for real arguments).
std::complex<double> charfun(CovCase c, double u, double v);

// Max |charfun(u,v)^3 - G(u,v)| over the grid, where G is the closed-form
// characteristic function of the triple sum (radicand^{-3/2}, principal
// branch).  The identity is algebraically exact; the deviation measures
// floating-point noise only.
double charfun_identity_check(CovCase c,
                              const std::vector<std::pair<double, double>>& grid);

// Square grid helper: all (u, v) with u, v in {lo, lo+step, ..., hi}.
std::vector<std::pair<double, double>> square_grid(double lo, double hi, double step);

// Empirical check of charfun against direct simulation: draws n scalar
// Gaussian quadruples (triples when pinned), forms (z1, z2) = (y x1, y x2),
// averages exp(i (u z1 + v z2)), and returns |empirical - charfun(u, v)|.
double charfun_mc_check(CovCase c, double u, double v, std::uint64_t n,
                        std::uint64_t seed);

// Joint density of the three dihedral angles along the edges meeting at the
// pinned vertex, on the support {x+y+z > pi, x+y < pi+z, y+z < pi+x,
// z+x < pi+y} inside (0, pi)^3, zero outside the support.  The published
// expression is negative on the support; the implementation flips its overall
// sign so the density is nonnegative (adjudicated against simulation).
double miles_joint_density(double x, double y, double z);

// Marginal density of a single such dihedral angle: constant 1/pi on (0, pi)
// (the joint density integrates over its rectangular support in rotated
// coordinates to a z-free value).
double miles_marginal_density(double z);

// Normalization integral of miles_joint_density over (0, pi)^3: an outer 1D
// integral over z of an inner 2D integral in the rotated coordinates
// p = (x+y)/2, q = (x-y)/2, where the support is the rectangle
// [(pi-z)/2, (pi+z)/2] x [-(pi-z)/2, (pi-z)/2] (Jacobian 2).
double miles_normalization(const QuadratureSpec& spec = QuadratureSpec{});

// Density of the solid angle at the pinned vertex, 0 < x < 2 pi:
//   -((x^2 - 4 pi x + 3 pi^2 - 6) cos x - 6 (x - 2 pi) sin x
//     - 2 (x^2 - 4 pi x + 3 pi^2 + 3)) / (16 pi cos(x/2)^4).
// Numerator and denominator both vanish to fourth order at x = pi; inside
// |x - pi| <= 0.05 the value comes from a degree-9 Taylor expansion about pi.
double crofton_density(double x);

// One-sided limits of crofton_density at the ends of its domain.
double crofton_limit_zero();     // (3 pi^2 + 12) / (16 pi)
double crofton_limit_two_pi();   // (12 - pi^2) / (16 pi)

// CDF of crofton_density by cumulative panel quadrature (cached internally);
// clamped to [0, total mass] outside (0, 2 pi).
double crofton_cdf(double x);

}  // namespace gtet
