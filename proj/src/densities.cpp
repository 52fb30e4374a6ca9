#include "gtet/densities.hpp"

#include <cmath>

#include "gtet/errors.hpp"
#include "gtet/rng.hpp"
#include "gtet/special_functions.hpp"

namespace gtet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kSqrt3 = 1.732050807568877293527446341505872367;

// 3x3 determinant.
double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::complex<double> charfun_radicand(CovCase c, double u, double v) {
    // Expanded forms of the published radicands:
    //   general: (u-i)(3u+i) + (v-i)(3v+i) + 2uv - 1
    //          = (3u^2 + 3v^2 + 2uv + 1) - 2(u+v) i
    //   pinned:  (u-i)^2 + (v-i)^2 + 3 = (u^2 + v^2 + 1) - 2(u+v) i
    // Both have real part >= 1, so the principal square root is safe.
    if (c == CovCase::general) {
        return {3.0 * u * u + 3.0 * v * v + 2.0 * u * v + 1.0, -2.0 * (u + v)};
    }
    return {u * u + v * v + 1.0, -2.0 * (u + v)};
}

// Degree-9 Taylor coefficients of crofton_density about x = pi (in t = x - pi).
const double kCroftonTaylor[10] = {
    1.0 / (4.0 * kPi),
    -1.0 / 30.0,
    1.0 / (24.0 * kPi),
    -1.0 / 252.0,
    1.0 / (288.0 * kPi),
    -1.0 / 3600.0,
    1.0 / (4800.0 * kPi),
    -1.0 / 66528.0,
    1.0 / (96768.0 * kPi),
    -691.0 / 990662400.0,
};

constexpr double kCroftonWindow = 0.05;

double crofton_raw(double x) {
    const double poly = x * x - 4.0 * kPi * x + 3.0 * kPi * kPi;
    const double numerator = (poly - 6.0) * std::cos(x) -
                             6.0 * (x - kTwoPi) * std::sin(x) -
                             2.0 * (poly + 3.0);
    const double ch = std::cos(0.5 * x);
    const double denominator = 16.0 * kPi * ch * ch * ch * ch;
    return -numerator / denominator;
}

}  // namespace

std::array<std::array<double, 3>, 3> standard_cov(CovCase c) {
    if (c == CovCase::general)
        return {{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}};
    return {{{2, 1, 1}, {1, 2, 1}, {1, 1, 1}}};
}

MillerParams miller_params_from_cov(const std::array<std::array<double, 3>, 3>& sigma) {
    // Symmetry check, scaled to the matrix magnitude.
    double scale = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(sigma[i][j]));
    }
    if (!(scale > 0.0)) throw domain_error("covariance matrix is zero");
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (std::fabs(sigma[i][j] - sigma[j][i]) > 1e-12 * scale) {
                throw domain_error("covariance matrix is not symmetric");
            }
        }
    }

    // Sylvester criterion for positive definiteness.
    const double minor1 = sigma[0][0];
    const double minor2 = sigma[0][0] * sigma[1][1] - sigma[0][1] * sigma[1][0];
    const double det = det3(sigma);
    if (!(minor1 > 0.0) || !(minor2 > 0.0) || !(det > 0.0)) {
        throw domain_error("covariance matrix is not positive definite");
    }

    // Inverse via the adjugate; P = sigma^{-1} is symmetric.
    std::array<std::array<double, 3>, 3> p{};
    p[0][0] = (sigma[1][1] * sigma[2][2] - sigma[1][2] * sigma[2][1]) / det;
    p[0][1] = (sigma[0][2] * sigma[2][1] - sigma[0][1] * sigma[2][2]) / det;
    p[0][2] = (sigma[0][1] * sigma[1][2] - sigma[0][2] * sigma[1][1]) / det;
    p[1][1] = (sigma[0][0] * sigma[2][2] - sigma[0][2] * sigma[2][0]) / det;
    p[1][2] = (sigma[0][2] * sigma[1][0] - sigma[0][0] * sigma[1][2]) / det;
    p[2][2] = (sigma[0][0] * sigma[1][1] - sigma[0][1] * sigma[1][0]) / det;
    p[1][0] = p[0][1];
    p[2][0] = p[0][2];
    p[2][1] = p[1][2];

    MillerParams params;
    params.p = 2;
    params.Omega = {{{p[0][0], p[0][1]}, {p[1][0], p[1][1]}}};
    params.v = {p[0][2], p[1][2]};
    params.omega = p[2][2];
    params.sqrt_det = 1.0 / std::sqrt(det);
    if (!(params.omega > 0.0)) throw domain_error("inverse covariance has omega <= 0");
    return params;
}

double miller_density(const MillerParams& params, double z1, double z2) {
    if (params.p != 2) throw domain_error("miller_density requires p = 2");
    const double q = params.Omega[0][0] * z1 * z1 +
                     (params.Omega[0][1] + params.Omega[1][0]) * z1 * z2 +
                     params.Omega[1][1] * z2 * z2;
    if (z1 == 0.0 && z2 == 0.0) {
        throw domain_error("miller_density is singular at the origin");
    }
    if (!(q > 0.0)) throw domain_error("Omega block is not positive definite");

    const double t = std::sqrt(params.omega * q);
    const double two_pi_pow = std::pow(kTwoPi, 1.5);
    const double front =
        2.0 * params.sqrt_det / two_pi_pow * std::pow(params.omega / q, 0.25);
    const double vz = params.v[0] * z1 + params.v[1] * z2;
    // For a valid precision partition |v.z| < t (Cauchy-Schwarz in the
    // Omega-norm against the Schur complement omega - v' Omega^-1 v > 0), so
    // exp(-v.z) K_{1/2}(t) is bounded; but the two factors overflow and
    // underflow separately once t is large.  Fold the Bessel exponential in
    // analytically there; below that the literal product is exact and safe.
    if (t <= 600.0) {
        return front * std::exp(-vz) * bessel_k_half(t);
    }
    return front * std::sqrt(0.5 * kPi / t) * std::exp(-vz - t);
}

double triple_convolution_density(CovCase c, double z1, double z2) {
    if (!std::isfinite(z1) || !std::isfinite(z2)) {
        throw domain_error("triple_convolution_density needs finite arguments");
    }
    if (c == CovCase::general) {
        const double quad = 3.0 * z1 * z1 - 2.0 * z1 * z2 + 3.0 * z2 * z2;
        return 1.0 / (4.0 * kSqrt3 * kPi) *
               std::exp(0.25 * (z1 + z2 - kSqrt3 * std::sqrt(quad)));
    }
    const double quad = z1 * z1 + z2 * z2;
    return 1.0 / (2.0 * kSqrt3 * kPi) *
           std::exp(z1 + z2 - kSqrt3 * std::sqrt(quad));
}

std::complex<double> charfun(CovCase c, double u, double v) {
    if (!std::isfinite(u) || !std::isfinite(v)) {
        throw domain_error("charfun needs finite arguments");
    }
    return 1.0 / std::sqrt(charfun_radicand(c, u, v));
}

double charfun_identity_check(CovCase c,
                              const std::vector<std::pair<double, double>>& grid) {
    double worst = 0.0;
    for (const auto& [u, v] : grid) {
        const std::complex<double> f = charfun(c, u, v);
        const std::complex<double> g =
            1.0 / std::pow(charfun_radicand(c, u, v), 1.5);
        worst = std::max(worst, std::abs(f * f * f - g));
    }
    return worst;
}

std::vector<std::pair<double, double>> square_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw domain_error("square_grid needs step > 0 and hi >= lo");
    const int count = int(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<std::pair<double, double>> grid;
    grid.reserve(std::size_t(count) * std::size_t(count));
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < count; ++j) {
            grid.emplace_back(lo + i * step, lo + j * step);
        }
    }
    return grid;
}

double charfun_mc_check(CovCase c, double u, double v, std::uint64_t n,
                        std::uint64_t seed) {
    if (n < 100000) throw domain_error("charfun_mc_check needs n >= 1e5");
    double sum_re = 0.0, sum_im = 0.0;
    for (std::uint64_t trial = 0; trial < n; ++trial) {
        TrialRng rng(seed, trial);
        double x1, x2, y;
        if (c == CovCase::general) {
            const double a = rng.next_normal();
            const double b = rng.next_normal();
            const double cc = rng.next_normal();
            const double d = rng.next_normal();
            x1 = b - a;
            x2 = cc - a;
            y = d - a;
        } else {
            const double a = rng.next_normal();
            const double b = rng.next_normal();
            const double cc = rng.next_normal();
            x1 = b - a;
            x2 = cc - a;
            y = -a;
        }
        const double theta = u * (y * x1) + v * (y * x2);
        sum_re += std::cos(theta);
        sum_im += std::sin(theta);
    }
    const std::complex<double> empirical{sum_re / double(n), sum_im / double(n)};
    return std::abs(empirical - charfun(c, u, v));
}

double miles_joint_density(double x, double y, double z) {
    if (!(x > 0.0 && x < kPi && y > 0.0 && y < kPi && z > 0.0 && z < kPi)) {
        throw domain_error("miles_joint_density needs arguments in (0, pi)");
    }
    const bool on_support = (x + y + z > kPi) && (x + y < kPi + z) &&
                            (y + z < kPi + x) && (z + x < kPi + y);
    if (!on_support) return 0.0;

    const double c0 = std::cos(0.5 * (x + y + z));
    const double c1 = std::cos(0.5 * (-x + y + z));
    const double c2 = std::cos(0.5 * (x - y + z));
    const double c3 = std::cos(0.5 * (x + y - z));
    const double sx = std::sin(x), sy = std::sin(y), sz = std::sin(z);
    // Overall sign flipped relative to the published expression, which is
    // negative on the interior of the support; rounding can still produce a
    // tiny negative value at the boundary, clamped here.
    const double value = -(1.0 / kPi) * c0 * c1 * c2 * c3 /
                         (sx * sx * sy * sy * sz * sz);
    return std::max(value, 0.0);
}

double miles_marginal_density(double z) {
    if (!(z > 0.0 && z < kPi)) {
        throw domain_error("miles_marginal_density needs an argument in (0, pi)");
    }
    return 1.0 / kPi;
}

double miles_normalization(const QuadratureSpec& spec) {
    const auto slice_mass = [&spec](double z) {
        const double half = 0.5 * (kPi - z);
        const Region2D rect =
            Region2D::rectangle(0.5 * (kPi - z), 0.5 * (kPi + z), -half, half);
        const auto rotated = [z](double p, double q) {
            return 2.0 * miles_joint_density(p + q, p - q, z);
        };
        return integrate_2d(rotated, rect, spec).value;
    };
    return integrate_1d(slice_mass, 0.0, kPi, spec).value;
}

double crofton_density(double x) {
    if (!(x > 0.0 && x < kTwoPi)) {
        throw domain_error("crofton_density needs an argument in (0, 2 pi)");
    }
    const double t = x - kPi;
    if (std::fabs(t) <= kCroftonWindow) {
        double value = 0.0;
        for (int k = 9; k >= 0; --k) value = value * t + kCroftonTaylor[k];
        return value;
    }
    return crofton_raw(x);
}

double crofton_limit_zero() { return (3.0 * kPi * kPi + 12.0) / (16.0 * kPi); }

double crofton_limit_two_pi() { return (12.0 - kPi * kPi) / (16.0 * kPi); }

namespace {

// Cumulative integrals of crofton_density at uniform nodes over [0, 2 pi],
// built once with a 15-point Gauss-Kronrod panel per interval (the density is
// smooth on each panel; endpoints are never evaluated).
struct CroftonTable {
    static constexpr int kIntervals = 8192;
    double step = kTwoPi / kIntervals;
    std::array<double, kIntervals + 1> cumulative{};

    CroftonTable() {
        cumulative[0] = 0.0;
        for (int i = 0; i < kIntervals; ++i) {
            cumulative[i + 1] = cumulative[i] + panel(i * step, (i + 1) * step);
        }
    }

    static double panel(double lo, double hi) {
        // 15-point Kronrod nodes/weights on [-1, 1] (positive half, symmetric).
        static const double xk[8] = {
            0.991455371120812639206854697526329,
            0.949107912342758524526189684047851,
            0.864864423359769072789712788640926,
            0.741531185599394439863864773280788,
            0.586087235467691130294144838258730,
            0.405845151377397166906606412076961,
            0.207784955007898467600689403773245,
            0.000000000000000000000000000000000};
        static const double wk[8] = {
            0.022935322010529224963732008058970,
            0.063092092629978553290700663189204,
            0.104790010322250183839876322541518,
            0.140653259715525918745189590510238,
            0.169004726639267902826583426598550,
            0.190350578064785409913256402421014,
            0.204432940075298892414161999234649,
            0.209482141084727828012999174891714};
        const double center = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double acc = wk[7] * crofton_density(center);
        for (int j = 0; j < 7; ++j) {
            const double dx = half * xk[j];
            acc += wk[j] * (crofton_density(center - dx) + crofton_density(center + dx));
        }
        return acc * half;
    }
};

const CroftonTable& crofton_table() {
    static const CroftonTable table;
    return table;
}

}  // namespace

double crofton_cdf(double x) {
    const CroftonTable& table = crofton_table();
    if (x <= 0.0) return 0.0;
    if (x >= kTwoPi) return table.cumulative[CroftonTable::kIntervals];
    const int i = std::min(int(x / table.step), CroftonTable::kIntervals - 1);
    double value = table.cumulative[i];
    const double lo = i * table.step;
    if (x > lo) value += CroftonTable::panel(lo, x);
    return value;
}

}  // namespace gtet
