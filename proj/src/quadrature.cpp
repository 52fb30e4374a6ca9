#include "gtet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gtet/errors.hpp"

namespace gtet {

namespace {

// 15-point Kronrod abscissae (positive half; even indices are the embedded
// 7-point Gauss abscissae) and the matching weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Kernel1DResult {
    double integral;   // 15-point value
    double error;      // scaled error estimate
};

// Single Gauss-Kronrod panel over [a, b] with the classic scaled error
// estimate err = resasc * min(1, (200*|K15-G7|/resasc)^1.5).
Kernel1DResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kXgk[i]);
        fv[14 - i] = f(center + half * kXgk[i]);
    }
    fv[7] = f(center);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        const double fsum = fv[i] + fv[14 - i];
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fv[i] - reskh) + std::fabs(fv[14 - i] - reskh));
    resasc *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (!std::isfinite(resk) || !std::isfinite(err)) {
        // A non-finite sample: flag the panel so refinement isolates it
        // instead of silently corrupting worst-panel selection.
        err = std::numeric_limits<double>::infinity();
    }
    return {resk * half, err};
}

struct Segment {
    double a, b, value, error;
};

struct AxisMap {
    // x = map(t), dx = weight(t) dt over the finite parameter interval [t0, t1].
    std::function<double(double)> map;
    std::function<double(double)> weight;
    double t0, t1;
};

AxisMap make_axis_map(double lo, double hi) {
    const double inf = std::numeric_limits<double>::infinity();
    if (lo == -inf && hi == inf) {
        return {[](double t) { return t / (1.0 - t * t); },
                [](double t) {
                    const double d = 1.0 - t * t;
                    return (1.0 + t * t) / (d * d);
                },
                -1.0, 1.0};
    }
    if (hi == inf) {
        return {[lo](double t) { return lo + t / (1.0 - t); },
                [](double t) {
                    const double d = 1.0 - t;
                    return 1.0 / (d * d);
                },
                0.0, 1.0};
    }
    if (lo == -inf) {
        return {[hi](double t) { return hi - t / (1.0 - t); },
                [](double t) {
                    const double d = 1.0 - t;
                    return 1.0 / (d * d);
                },
                0.0, 1.0};
    }
    return {[](double t) { return t; }, [](double) { return 1.0; }, lo, hi};
}

}  // namespace

QuadratureResult integrate_1d(const std::function<double(double)>& f, double lo,
                              double hi, const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) ||
        spec.max_evaluations < 1000)
        throw domain_error("integrate_1d: invalid quadrature spec");
    if (!(lo < hi)) throw domain_error("integrate_1d: requires lo < hi");

    const AxisMap ax = make_axis_map(lo, hi);
    const auto g = [&](double t) { return f(ax.map(t)) * ax.weight(t); };

    QuadratureResult out;
    std::vector<Segment> segs;
    {
        const Kernel1DResult k = gk15(g, ax.t0, ax.t1);
        segs.push_back({ax.t0, ax.t1, k.integral, k.error});
        out.evaluations = 15;
    }
    for (;;) {
        double total = 0.0, err = 0.0;
        for (const Segment& s : segs) {
            total += s.value;
            err += s.error;
        }
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
        if (err <= target) {
            out.value = total;
            out.error_estimate = err;
            out.converged = true;
            return out;
        }
        if (out.evaluations + 30 > spec.max_evaluations) {
            out.value = total;
            out.error_estimate = err;
            out.converged = false;
            return out;
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (!(s.a < mid && mid < s.b)) {
            // Interval no longer splittable at double precision.
            double total2 = 0.0, err2 = 0.0;
            for (const Segment& t : segs) {
                total2 += t.value;
                err2 += t.error;
            }
            out.value = total2;
            out.error_estimate = err2;
            out.converged = false;
            return out;
        }
        const Kernel1DResult left = gk15(g, s.a, mid);
        const Kernel1DResult right = gk15(g, mid, s.b);
        out.evaluations += 30;
        segs[worst] = {s.a, mid, left.integral, left.error};
        segs.push_back({mid, s.b, right.integral, right.error});
    }
}

namespace {

struct Cell {
    double ax, bx, ay, by;   // parameter-space bounds
    double value;            // tensor K15xK15 integral
    double err_x, err_y;     // per-axis embedded-rule deficiencies
    double err_cross;        // mixed deficiency (product of per-axis probes)
    double error() const { return err_x + err_y + err_cross; }
};

// Tensor Gauss-Kronrod evaluation of one cell.  Computes the full 15x15
// Kronrod value plus the two mixed rules (Gauss in one axis, Kronrod in the
// other) and the Gauss x Gauss rule from the same 225 evaluations.  The cell
// error adds the cross deficiency KK - GK - KG + GG: per-axis probes alone are
// blind to error carried by mixed derivatives (ridge-shaped integrands).
Cell eval_cell(const std::function<double(double, double)>& g, double ax,
               double bx, double ay, double by) {
    double tx[15], ty[15], wxk[15], wyk[15], wxg[15], wyg[15];
    const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    for (int i = 0; i < 7; ++i) {
        tx[i] = cx - hx * kXgk[i];
        tx[14 - i] = cx + hx * kXgk[i];
        ty[i] = cy - hy * kXgk[i];
        ty[14 - i] = cy + hy * kXgk[i];
        wxk[i] = wxk[14 - i] = kWgk[i];
        wyk[i] = wyk[14 - i] = kWgk[i];
        wxg[i] = wxg[14 - i] = (i % 2 == 1) ? kWg[i / 2] : 0.0;
        wyg[i] = wyg[14 - i] = (i % 2 == 1) ? kWg[i / 2] : 0.0;
    }
    tx[7] = cx;
    ty[7] = cy;
    wxk[7] = wyk[7] = kWgk[7];
    wxg[7] = wyg[7] = kWg[3];

    double kk = 0.0, gk = 0.0, kg = 0.0, gg = 0.0;
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 15; ++j) {
            const double v = g(tx[i], ty[j]);
            kk += wxk[i] * wyk[j] * v;
            gk += wxg[i] * wyk[j] * v;
            kg += wxk[i] * wyg[j] * v;
            gg += wxg[i] * wyg[j] * v;
        }

    Cell c;
    c.ax = ax; c.bx = bx; c.ay = ay; c.by = by;
    const double scale = hx * hy;
    c.value = kk * scale;
    c.err_x = std::fabs((kk - gk) * scale);
    c.err_y = std::fabs((kk - kg) * scale);
    c.err_cross = std::fabs((kk - gk - kg + gg) * scale);
    if (!std::isfinite(c.value) || !std::isfinite(c.error())) {
        // Same guard as the 1D panel: a non-finite sample must dominate the
        // worst-cell scan, not defeat it through NaN comparisons.
        c.err_x = std::numeric_limits<double>::infinity();
        c.err_y = c.err_cross = 0.0;
    }
    return c;
}

}  // namespace

QuadratureResult integrate_2d(const std::function<double(double, double)>& f,
                              const Region2D& region, const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) ||
        spec.max_evaluations < 1000)
        throw domain_error("integrate_2d: invalid quadrature spec");

    const double inf = std::numeric_limits<double>::infinity();
    AxisMap mx, my;
    std::vector<Cell> cells;
    switch (region.kind) {
        case Region2D::Kind::rectangle:
            if (!(region.x_lo < region.x_hi && region.y_lo < region.y_hi))
                throw domain_error("integrate_2d: empty rectangle");
            mx = make_axis_map(region.x_lo, region.x_hi);
            my = make_axis_map(region.y_lo, region.y_hi);
            break;
        case Region2D::Kind::quadrant_from:
            mx = make_axis_map(region.eta, inf);
            my = make_axis_map(region.eta, inf);
            break;
        case Region2D::Kind::whole_plane:
            mx = make_axis_map(-inf, inf);
            my = make_axis_map(-inf, inf);
            break;
    }
    const auto g = [&](double tx, double ty) {
        return f(mx.map(tx), my.map(ty)) * mx.weight(tx) * my.weight(ty);
    };

    QuadratureResult out;
    const auto push_cell = [&](double ax, double bx, double ay, double by) {
        cells.push_back(eval_cell(g, ax, bx, ay, by));
        out.evaluations += 225;
    };
    if (region.kind == Region2D::Kind::whole_plane) {
        // Four cells so the origin is a corner, never an evaluation node.
        push_cell(mx.t0, 0.0, my.t0, 0.0);
        push_cell(0.0, mx.t1, my.t0, 0.0);
        push_cell(mx.t0, 0.0, 0.0, my.t1);
        push_cell(0.0, mx.t1, 0.0, my.t1);
    } else {
        push_cell(mx.t0, mx.t1, my.t0, my.t1);
    }

    for (;;) {
        double total = 0.0, err = 0.0;
        for (const Cell& c : cells) {
            total += c.value;
            err += c.error();
        }
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
        if (err <= target) {
            out.value = total;
            out.error_estimate = err;
            out.converged = true;
            return out;
        }
        if (out.evaluations + 2 * 225 > spec.max_evaluations) {
            out.value = total;
            out.error_estimate = err;
            out.converged = false;
            return out;
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < cells.size(); ++i)
            if (cells[i].error() > cells[worst].error()) worst = i;
        const Cell c = cells[worst];
        const bool split_x = c.err_x >= c.err_y;
        if (split_x) {
            const double mid = 0.5 * (c.ax + c.bx);
            if (!(c.ax < mid && mid < c.bx)) {
                out.value = total;
                out.error_estimate = err;
                out.converged = false;
                return out;
            }
            cells[worst] = eval_cell(g, c.ax, mid, c.ay, c.by);
            cells.push_back(eval_cell(g, mid, c.bx, c.ay, c.by));
        } else {
            const double mid = 0.5 * (c.ay + c.by);
            if (!(c.ay < mid && mid < c.by)) {
                out.value = total;
                out.error_estimate = err;
                out.converged = false;
                return out;
            }
            cells[worst] = eval_cell(g, c.ax, c.bx, c.ay, mid);
            cells.push_back(eval_cell(g, c.ax, c.bx, mid, c.by));
        }
        out.evaluations += 2 * 225;
    }
}

SeriesResult sum_series(const std::function<double(long)>& term, double rel_tol,
                        long max_terms) {
    if (!(rel_tol > 0.0) || max_terms < 1)
        throw domain_error("sum_series: invalid tolerances");
    double sum = 0.0;
    int small_streak = 0;
    for (long k = 0; k < max_terms; ++k) {
        const double t = term(k);
        sum += t;
        if (std::fabs(t) < rel_tol * std::fabs(sum))
            ++small_streak;
        else
            small_streak = 0;
        if (small_streak >= 2) return {sum, k + 1};
    }
    throw convergence_error("sum_series: no convergence within max_terms");
}

}  // namespace gtet
