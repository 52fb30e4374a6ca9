#include "gtet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "gtet/errors.hpp"
#include "gtet/rng.hpp"

#ifdef GTET_HAVE_OPENMP
#include <omp.h>
#endif

namespace gtet {

namespace {

// Trials are processed in fixed blocks of this size; per-block tallies are
// combined in block order so the estimate is independent of the worker count.
constexpr std::uint64_t kBlockSize = 4096;

// Two-sided 95% normal quantile, used for every confidence interval.
constexpr double kZ95 = 1.959963984540054;

// Exclusion fractions at or above this level abort the run: the sampler is
// producing degenerate configurations too often to trust the estimate.
constexpr double kMaxExclusionFraction = 1e-6;

Point3 next_point3_normal(TrialRng& rng) {
    const double x = rng.next_normal();
    const double y = rng.next_normal();
    const double z = rng.next_normal();
    return Point3{x, y, z};
}

Point3 next_unit_vector(TrialRng& rng) {
    const Point3 g = next_point3_normal(rng);
    const double r = norm(g);
    if (!(r > 0.0)) throw degeneracy_error("direction sample collapsed to the origin");
    return (1.0 / r) * g;
}

Point3 next_ball_point(TrialRng& rng) {
    const Point3 dir = next_unit_vector(rng);
    const double u = rng.next_uniform();
    const double radius = std::cbrt(u);
    return radius * dir;
}

Point3 next_cube_point(TrialRng& rng) {
    const double x = rng.next_uniform();
    const double y = rng.next_uniform();
    const double z = rng.next_uniform();
    return Point3{x, y, z};
}

struct BlockRange {
    std::uint64_t begin = 0, end = 0;
};

BlockRange block_range(std::uint64_t block, std::uint64_t n) {
    const std::uint64_t begin = block * kBlockSize;
    const std::uint64_t end = std::min(n, begin + kBlockSize);
    return {begin, end};
}

std::uint64_t block_count(std::uint64_t n) {
    return (n + kBlockSize - 1) / kBlockSize;
}

int hardware_threads() {
#ifdef GTET_HAVE_OPENMP
    return std::max(1, omp_get_max_threads());
#else
    return std::max(1u, std::thread::hardware_concurrency());
#endif
}

void check_exclusions(std::uint64_t excluded, std::uint64_t n) {
    if (n == 0) throw mc_abort_error("no trials requested");
    const double fraction = double(excluded) / double(n);
    if (fraction >= kMaxExclusionFraction) {
        std::ostringstream msg;
        msg << "excluded " << excluded << " of " << n
            << " trials (fraction " << fraction << " >= " << kMaxExclusionFraction << ")";
        throw mc_abort_error(msg.str());
    }
    if (excluded >= n) throw mc_abort_error("all trials excluded");
}

MCEstimate finish_probability(const SamplerSpec& spec, std::uint64_t successes,
                              std::uint64_t excluded, std::uint64_t n) {
    check_exclusions(excluded, n);
    const std::uint64_t m = n - excluded;
    const double p = double(successes) / double(m);

    MCEstimate est;
    est.p_hat = p;
    est.n = m;
    est.stderr_ = std::sqrt(p * (1.0 - p) / double(m));
    est.seed = spec.seed;
    est.excluded = excluded;
    est.successes = successes;

    // 95% Wilson score interval.
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / double(m);
    const double center = (p + z2 / (2.0 * double(m))) / denom;
    const double half = (kZ95 / denom) *
                        std::sqrt(p * (1.0 - p) / double(m) +
                                  z2 / (4.0 * double(m) * double(m)));
    est.ci_low = center - half;
    est.ci_high = center + half;
    return est;
}

// Running moments in Welford form, merged pairwise (Chan et al.).
struct Moments {
    std::uint64_t count = 0;
    double mean = 0;
    double m2 = 0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / double(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double delta = other.mean - mean;
        const std::uint64_t total = count + other.count;
        mean += delta * double(other.count) / double(total);
        m2 += other.m2 +
              delta * delta * double(count) * double(other.count) / double(total);
        count = total;
    }
};

MCEstimate finish_mean(const SamplerSpec& spec, const Moments& moments,
                       std::uint64_t excluded, std::uint64_t n) {
    check_exclusions(excluded, n);
    if (moments.count < 2) throw mc_abort_error("need at least 2 trials for a mean estimate");

    MCEstimate est;
    est.p_hat = moments.mean;
    est.n = moments.count;
    const double variance = moments.m2 / double(moments.count - 1);
    est.stderr_ = std::sqrt(variance / double(moments.count));
    est.ci_low = moments.mean - kZ95 * est.stderr_;
    est.ci_high = moments.mean + kZ95 * est.stderr_;
    est.seed = spec.seed;
    est.excluded = excluded;
    return est;
}

// Runs `body(block)` for every block, fanning out over `n_threads` workers
// when OpenMP is available.  Exceptions other than the degeneracy signals the
// body handles itself are captured per block and the earliest one rethrown,
// so failure behaviour matches the serial path.
template <typename Body>
void for_each_block(std::uint64_t blocks, int n_threads, Body&& body) {
    std::vector<std::exception_ptr> errors(blocks);

#ifdef GTET_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(n_threads)
    for (long long b = 0; b < (long long)blocks; ++b) {
        try {
            body(std::uint64_t(b));
        } catch (...) {
            errors[std::size_t(b)] = std::current_exception();
        }
    }
#else
    (void)n_threads;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        try {
            body(b);
        } catch (...) {
            errors[std::size_t(b)] = std::current_exception();
        }
    }
#endif

    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace

SampleValue sample(const SamplerSpec& spec, std::uint64_t index) {
    TrialRng rng(spec.seed, index);
    switch (spec.kind) {
        case SamplerKind::gaussian_tetra: {
            Tetrahedron t;
            t.a = next_point3_normal(rng);
            t.b = next_point3_normal(rng);
            t.c = next_point3_normal(rng);
            t.d = next_point3_normal(rng);
            return t;
        }
        case SamplerKind::pinned_tetra: {
            Tetrahedron t;
            t.a = next_point3_normal(rng);
            t.b = next_point3_normal(rng);
            t.c = next_point3_normal(rng);
            t.d = Point3{0, 0, 0};
            return t;
        }
        case SamplerKind::gaussian_triangle: {
            Triangle t;
            double x = rng.next_normal(), y = rng.next_normal();
            t.a = Point3{x, y, 0};
            x = rng.next_normal(), y = rng.next_normal();
            t.b = Point3{x, y, 0};
            x = rng.next_normal(), y = rng.next_normal();
            t.c = Point3{x, y, 0};
            return t;
        }
        case SamplerKind::pinned_triangle: {
            Triangle t;
            double x = rng.next_normal(), y = rng.next_normal();
            t.a = Point3{x, y, 0};
            x = rng.next_normal(), y = rng.next_normal();
            t.b = Point3{x, y, 0};
            t.c = Point3{0, 0, 0};
            return t;
        }
        case SamplerKind::uniform_ball_tetra: {
            Tetrahedron t;
            t.a = next_ball_point(rng);
            t.b = next_ball_point(rng);
            t.c = next_ball_point(rng);
            t.d = next_ball_point(rng);
            return t;
        }
        case SamplerKind::uniform_cube_tetra: {
            Tetrahedron t;
            t.a = next_cube_point(rng);
            t.b = next_cube_point(rng);
            t.c = next_cube_point(rng);
            t.d = next_cube_point(rng);
            return t;
        }
        case SamplerKind::uniform_plane_normal:
            return next_unit_vector(rng);
    }
    throw domain_error("unknown sampler kind");
}

int effective_threads(int n_threads) {
    if (n_threads > 0) return n_threads;
    if (const char* env = std::getenv("GTET_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1) return int(parsed);
    }
    return hardware_threads();
}

MCEstimate estimate_probability(const SamplerSpec& spec,
                                const std::function<bool(const SampleValue&)>& event,
                                std::uint64_t n, int n_threads) {
    const std::uint64_t blocks = block_count(n);
    std::vector<std::uint64_t> success(blocks, 0), excluded(blocks, 0);

    for_each_block(blocks, effective_threads(n_threads), [&](std::uint64_t b) {
        const BlockRange range = block_range(b, n);
        std::uint64_t s = 0, x = 0;
        for (std::uint64_t trial = range.begin; trial < range.end; ++trial) {
            try {
                if (event(sample(spec, trial))) ++s;
            } catch (const degeneracy_error&) {
                ++x;
            }
        }
        success[b] = s;
        excluded[b] = x;
    });

    std::uint64_t total_success = 0, total_excluded = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        total_success += success[b];
        total_excluded += excluded[b];
    }
    return finish_probability(spec, total_success, total_excluded, n);
}

MCEstimate estimate_probability_serial(const SamplerSpec& spec,
                                       const std::function<bool(const SampleValue&)>& event,
                                       std::uint64_t n) {
    std::uint64_t success = 0, excluded = 0;
    const std::uint64_t blocks = block_count(n);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const BlockRange range = block_range(b, n);
        for (std::uint64_t trial = range.begin; trial < range.end; ++trial) {
            try {
                if (event(sample(spec, trial))) ++success;
            } catch (const degeneracy_error&) {
                ++excluded;
            }
        }
    }
    return finish_probability(spec, success, excluded, n);
}

MCEstimate estimate_mean(const SamplerSpec& spec,
                         const std::function<double(const SampleValue&)>& functional,
                         std::uint64_t n, int n_threads) {
    const std::uint64_t blocks = block_count(n);
    std::vector<Moments> moments(blocks);
    std::vector<std::uint64_t> excluded(blocks, 0);

    for_each_block(blocks, effective_threads(n_threads), [&](std::uint64_t b) {
        const BlockRange range = block_range(b, n);
        Moments m;
        std::uint64_t x = 0;
        for (std::uint64_t trial = range.begin; trial < range.end; ++trial) {
            try {
                const double value = functional(sample(spec, trial));
                if (!std::isfinite(value)) {
                    std::ostringstream msg;
                    msg << "non-finite functional value at trial " << trial;
                    throw mc_abort_error(msg.str());
                }
                m.add(value);
            } catch (const degeneracy_error&) {
                ++x;
            }
        }
        moments[b] = m;
        excluded[b] = x;
    });

    Moments total;
    std::uint64_t total_excluded = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        total.merge(moments[b]);
        total_excluded += excluded[b];
    }
    return finish_mean(spec, total, total_excluded, n);
}

MCEstimate estimate_mean_serial(const SamplerSpec& spec,
                                const std::function<double(const SampleValue&)>& functional,
                                std::uint64_t n) {
    const std::uint64_t blocks = block_count(n);
    Moments total;
    std::uint64_t excluded = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const BlockRange range = block_range(b, n);
        Moments m;
        for (std::uint64_t trial = range.begin; trial < range.end; ++trial) {
            try {
                const double value = functional(sample(spec, trial));
                if (!std::isfinite(value)) {
                    std::ostringstream msg;
                    msg << "non-finite functional value at trial " << trial;
                    throw mc_abort_error(msg.str());
                }
                m.add(value);
            } catch (const degeneracy_error&) {
                ++excluded;
            }
        }
        total.merge(m);
    }
    return finish_mean(spec, total, excluded, n);
}

EmpiricalDistribution collect_samples(const SamplerSpec& spec,
                                      const std::function<double(const SampleValue&)>& functional,
                                      std::uint64_t n, int n_threads) {
    const std::uint64_t blocks = block_count(n);
    std::vector<double> values(n, 0.0);
    std::vector<char> keep(n, 0);
    std::vector<std::uint64_t> excluded(blocks, 0);

    for_each_block(blocks, effective_threads(n_threads), [&](std::uint64_t b) {
        const BlockRange range = block_range(b, n);
        std::uint64_t x = 0;
        for (std::uint64_t trial = range.begin; trial < range.end; ++trial) {
            try {
                const double value = functional(sample(spec, trial));
                if (!std::isfinite(value)) {
                    std::ostringstream msg;
                    msg << "non-finite functional value at trial " << trial;
                    throw mc_abort_error(msg.str());
                }
                values[trial] = value;
                keep[trial] = 1;
            } catch (const degeneracy_error&) {
                ++x;
            }
        }
        excluded[b] = x;
    });

    std::uint64_t total_excluded = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) total_excluded += excluded[b];
    check_exclusions(total_excluded, n);

    EmpiricalDistribution dist;
    dist.values.reserve(n - total_excluded);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (keep[i]) dist.values.push_back(values[i]);
    }
    std::sort(dist.values.begin(), dist.values.end());
    dist.count = dist.values.size();
    return dist;
}

double ks_statistic(const EmpiricalDistribution& dist,
                    const std::function<double(double)>& cdf) {
    const std::size_t n = dist.values.size();
    if (n == 0) throw domain_error("ks_statistic needs a non-empty sample");

    // Spot-check that the reference CDF is nondecreasing over the sample range.
    const std::size_t checks = std::min<std::size_t>(n - 1, 64);
    double prev = cdf(dist.values.front());
    for (std::size_t i = 1; i <= checks; ++i) {
        const std::size_t idx = i * (n - 1) / checks;
        const double cur = cdf(dist.values[idx]);
        if (cur < prev - 1e-12) throw domain_error("reference CDF is not monotone");
        prev = cur;
    }

    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(dist.values[i]);
        if (f < -1e-12 || f > 1.0 + 1e-12) {
            throw domain_error("reference CDF left [0, 1]");
        }
        d = std::max(d, f - double(i) / double(n));
        d = std::max(d, double(i + 1) / double(n) - f);
    }
    return d;
}

double correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw domain_error("correlation needs two equal-length samples of size >= 2");
    }
    const std::size_t n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw domain_error("correlation undefined for a constant sample");
    }
    return sxy / std::sqrt(sxx * syy);
}

double chi_square_uniform_grid(const std::vector<double>& xs,
                               const std::vector<double>& ys, int gx, int gy,
                               double x_lo, double x_hi, double y_lo, double y_hi) {
    if (xs.size() != ys.size() || xs.empty()) {
        throw domain_error("chi_square_uniform_grid needs equal-length non-empty samples");
    }
    if (gx < 1 || gy < 1 || !(x_hi > x_lo) || !(y_hi > y_lo)) {
        throw domain_error("chi_square_uniform_grid needs a positive grid over a proper box");
    }
    std::vector<std::uint64_t> counts(std::size_t(gx) * std::size_t(gy), 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < x_lo || xs[i] > x_hi || ys[i] < y_lo || ys[i] > y_hi) {
            throw domain_error("sample outside the chi-square box");
        }
        int ix = int((xs[i] - x_lo) / (x_hi - x_lo) * gx);
        int iy = int((ys[i] - y_lo) / (y_hi - y_lo) * gy);
        ix = std::min(ix, gx - 1);
        iy = std::min(iy, gy - 1);
        ++counts[std::size_t(iy) * std::size_t(gx) + std::size_t(ix)];
    }
    const double expected = double(xs.size()) / double(gx * gy);
    double chi2 = 0.0;
    for (const std::uint64_t c : counts) {
        const double diff = double(c) - expected;
        chi2 += diff * diff / expected;
    }
    return chi2;
}

}  // namespace gtet
