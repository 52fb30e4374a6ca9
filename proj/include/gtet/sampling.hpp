#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "gtet/geometry.hpp"

namespace gtet {

enum class SamplerKind {
    gaussian_tetra,
    pinned_tetra,
    gaussian_triangle,
    pinned_triangle,
    uniform_ball_tetra,
    uniform_cube_tetra,
    uniform_plane_normal,
};

struct SamplerSpec {
    SamplerKind kind = SamplerKind::gaussian_tetra;
    std::uint64_t seed = 0;
};

using SampleValue = std::variant<Tetrahedron, Triangle, Point3>;

// Draws trial `index` of the sampler's stream: a pure function of
// (spec.seed, index), identical across runs and worker partitions.
SampleValue sample(const SamplerSpec& spec, std::uint64_t index);

// Monte Carlo estimate with reproducibility metadata.  For probabilities the
// confidence bounds are the 95% Wilson interval; for means they are the
// normal interval mean +/- z * stderr.
struct MCEstimate {
    double p_hat = 0;
    std::uint64_t n = 0;         // trials contributing to the estimate
    double stderr_ = 0;
    double ci_low = 0, ci_high = 0;
    std::uint64_t seed = 0;
    std::uint64_t excluded = 0;  // trials excluded by degeneracy errors
    std::uint64_t successes = 0; // raw event count (0 for mean estimates)
};

// Estimates P(event) over n trials.  Trials are processed in fixed blocks
// whose integer tallies are combined in block order, so the result is
// bit-identical for any worker count.  Degeneracy errors raised by the event
// are counted as exclusions; an exclusion fraction >= 1e-6 aborts.
// n_threads = 0 means use the GTET_THREADS environment cap (or all cores).
MCEstimate estimate_probability(const SamplerSpec& spec,
                                const std::function<bool(const SampleValue&)>& event,
                                std::uint64_t n, int n_threads = 0);

// Sample mean of `functional` with stderr from the sample variance.  Block
// partial moments are merged in block order for determinism.  A non-finite
// functional value aborts with a diagnostic.
MCEstimate estimate_mean(const SamplerSpec& spec,
                         const std::function<double(const SampleValue&)>& functional,
                         std::uint64_t n, int n_threads = 0);

// Serial reference implementations of the same contracts (no worker fan-out);
// kept for testing and benchmarking against the parallel path.
MCEstimate estimate_probability_serial(const SamplerSpec& spec,
                                       const std::function<bool(const SampleValue&)>& event,
                                       std::uint64_t n);
MCEstimate estimate_mean_serial(const SamplerSpec& spec,
                                const std::function<double(const SampleValue&)>& functional,
                                std::uint64_t n);

// Collects functional values over n trials (deterministic order before the
// final ascending sort).
struct EmpiricalDistribution {
    std::vector<double> values;  // sorted ascending
    std::uint64_t count = 0;
};
EmpiricalDistribution collect_samples(const SamplerSpec& spec,
                                      const std::function<double(const SampleValue&)>& functional,
                                      std::uint64_t n, int n_threads = 0);

// Kolmogorov-Smirnov sup distance between the empirical CDF and `cdf`.
// The reference CDF is spot-checked for monotonicity on the sample range.
double ks_statistic(const EmpiricalDistribution& dist,
                    const std::function<double(double)>& cdf);

// Pearson correlation of paired samples.
double correlation(const std::vector<double>& xs, const std::vector<double>& ys);

// Chi-square statistic of (x, y) pairs against the uniform distribution on
// [x_lo, x_hi] x [y_lo, y_hi], using a gx-by-gy grid of equal cells.
double chi_square_uniform_grid(const std::vector<double>& xs,
                               const std::vector<double>& ys, int gx, int gy,
                               double x_lo, double x_hi, double y_lo, double y_hi);

// Effective worker count for n_threads = 0 (GTET_THREADS cap applied).
int effective_threads(int n_threads);

}  // namespace gtet
