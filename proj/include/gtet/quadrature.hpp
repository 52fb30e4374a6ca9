#pragma once

#include <functional>

namespace gtet {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    long max_evaluations = 20'000'000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod (7/15) integration of f over (lo, hi).  Either bound
// may be infinite; semi-infinite and whole-line ranges are mapped to finite
// intervals with rational transforms:
//   [lo, +inf):  x = lo + t/(1-t),   t in [0, 1)
//   (-inf, hi]:  x = hi - t/(1-t),   t in [0, 1)
//   (-inf,+inf): x = t/(1-t^2),      t in (-1, 1)
// Endpoints are never evaluated, so removable endpoint singularities are
// tolerated.  Non-convergence is reported through the result flag, never as a
// silently wrong value.
QuadratureResult integrate_1d(const std::function<double(double)>& f, double lo,
                              double hi, const QuadratureSpec& spec = {});

// Two-dimensional integration domains.
struct Region2D {
    enum class Kind { rectangle, quadrant_from, whole_plane };
    Kind kind = Kind::rectangle;
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;  // rectangle bounds
    double eta = 0;                                 // quadrant corner

    static Region2D rectangle(double x_lo, double x_hi, double y_lo, double y_hi) {
        Region2D r;
        r.kind = Kind::rectangle;
        r.x_lo = x_lo; r.x_hi = x_hi; r.y_lo = y_lo; r.y_hi = y_hi;
        return r;
    }
    // [eta, +inf) x [eta, +inf)
    static Region2D quadrant_from(double eta) {
        Region2D r;
        r.kind = Kind::quadrant_from;
        r.eta = eta;
        return r;
    }
    static Region2D whole_plane() {
        Region2D r;
        r.kind = Kind::whole_plane;
        return r;
    }
};

// Adaptive 2D integration with tensor Gauss-Kronrod cells.  Cells are
// subdivided along the axis whose embedded-rule deficiency is larger; the
// refinement order is deterministic.  The whole-plane domain starts from four
// quadrant cells so the origin sits on cell corners (never an evaluation
// point).
QuadratureResult integrate_2d(const std::function<double(double, double)>& f,
                              const Region2D& region,
                              const QuadratureSpec& spec = {});

struct SeriesResult {
    double value = 0.0;
    long terms = 0;  // number of terms accumulated
};

// Sums term(0) + term(1) + ... until |term| < rel_tol * |partial sum| holds
// for two consecutive terms.  Throws convergence_error when max_terms is
// reached first.
SeriesResult sum_series(const std::function<double(long)>& term, double rel_tol,
                        long max_terms);

}  // namespace gtet
