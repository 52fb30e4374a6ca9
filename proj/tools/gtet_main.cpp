// Command-line front end: Monte Carlo estimators, analytic evaluations, the
// validation suite, and density grid exports.  JSON is the canonical report
// format; CSV serves grid/plot exports.  Exit codes: 0 success, 1 validation
// failure, 2 usage error, 3 runtime abort.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gtet/analytic.hpp"
#include "gtet/densities.hpp"
#include "gtet/errors.hpp"
#include "gtet/geometry.hpp"
#include "gtet/sampling.hpp"
#include "gtet/validate.hpp"

namespace {

using nlohmann::ordered_json;
using namespace gtet;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kKsOnePercent = 1.6276236115189501;

struct Row {
    std::string name;
    double value = 0;
    std::optional<double> uncertainty;
    std::string method;
    std::uint64_t n_or_evals = 0;
    std::optional<std::uint64_t> seed;
    std::optional<double> ci_low, ci_high;
};

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json report_json(const std::string& command, const ordered_json& config,
                         const std::vector<Row>& rows,
                         std::optional<double> wall_time) {
    ordered_json results = ordered_json::array();
    for (const Row& r : rows) {
        ordered_json j;
        j["name"] = r.name;
        j["value"] = r.value;
        j["uncertainty"] =
            r.uncertainty ? ordered_json(*r.uncertainty) : ordered_json(nullptr);
        j["method"] = r.method;
        j["n_or_evals"] = r.n_or_evals;
        j["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
        if (r.ci_low) j["ci_low"] = *r.ci_low;
        if (r.ci_high) j["ci_high"] = *r.ci_high;
        results.push_back(std::move(j));
    }
    ordered_json rep;
    rep["command"] = command;
    rep["config"] = config;
    rep["results"] = std::move(results);
    rep["wall_time"] =
        wall_time ? ordered_json(*wall_time) : ordered_json(nullptr);
    return rep;
}

std::string rows_csv(const std::vector<Row>& rows) {
    std::string out =
        "name,value,uncertainty,method,n_or_evals,seed,ci_low,ci_high\n";
    for (const Row& r : rows) {
        out += r.name + ',' + num17(r.value) + ',';
        out += r.uncertainty ? num17(*r.uncertainty) : std::string();
        out += ',' + r.method + ',' + std::to_string(r.n_or_evals) + ',';
        out += r.seed ? std::to_string(*r.seed) : std::string();
        out += ',';
        out += r.ci_low ? num17(*r.ci_low) : std::string();
        out += ',';
        out += r.ci_high ? num17(*r.ci_high) : std::string();
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    f.flush();
    if (!f) throw error("cannot write output file: " + path);
}

// Prints the report to stdout (with the measured wall time) and, when a path
// is given, writes the byte-reproducible copy (wall_time null) to the file.
void emit_report(const std::string& command, const ordered_json& config,
                 const std::vector<Row>& rows, const std::string& format,
                 const std::string& out_path, double wall_seconds) {
    if (format == "csv") {
        const std::string text = rows_csv(rows);
        std::cout << text;
        if (!out_path.empty()) write_file(out_path, text);
        return;
    }
    std::cout << report_json(command, config, rows, wall_seconds).dump(2)
              << '\n';
    if (!out_path.empty())
        write_file(out_path,
                   report_json(command, config, rows, std::nullopt).dump(2) +
                       '\n');
}

Row mc_row(const std::string& name, const MCEstimate& e) {
    Row r;
    r.name = name;
    r.value = e.p_hat;
    r.uncertainty = e.stderr_;
    r.method = "mc";
    r.n_or_evals = e.n;
    r.seed = e.seed;
    r.ci_low = e.ci_low;
    r.ci_high = e.ci_high;
    return r;
}

Tetrahedron regular_tetrahedron() {
    return Tetrahedron{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
}

// ---------------------------------------------------------------- estimate

struct EstimateConfig {
    std::string event;
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string format = "json";
    std::string out;
};

// Two-row report for the sample-collection events: the KS statistic against
// the reference CDF (uncertainty = the 1%-level critical value) and the
// sample mean with its stderr.
void sample_rows(const EstimateConfig& cfg, std::vector<Row>& rows,
                 const std::string& name,
                 const std::function<double(const SampleValue&)>& functional,
                 const std::function<double(double)>& cdf) {
    const SamplerSpec spec{SamplerKind::pinned_tetra, cfg.seed};
    const EmpiricalDistribution dist =
        collect_samples(spec, functional, cfg.n, cfg.threads);
    const double d = ks_statistic(dist, cdf);
    Row ks;
    ks.name = name + ":ks";
    ks.value = d;
    ks.uncertainty = kKsOnePercent / std::sqrt((double)dist.count);
    ks.method = "mc";
    ks.n_or_evals = dist.count;
    ks.seed = cfg.seed;
    rows.push_back(ks);

    double sum = 0;
    for (double v : dist.values) sum += v;
    const double mean = sum / (double)dist.count;
    double ss = 0;
    for (double v : dist.values) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / ((double)dist.count - 1.0) /
                                (double)dist.count);
    Row mr;
    mr.name = name + ":mean";
    mr.value = mean;
    mr.uncertainty = se;
    mr.method = "mc";
    mr.n_or_evals = dist.count;
    mr.seed = cfg.seed;
    rows.push_back(mr);
}

int cmd_estimate(const EstimateConfig& cfg) {
    if (cfg.n < 100) {
        std::cerr << "error: --n must be at least 100 for Monte Carlo runs\n";
        return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Row> rows;

    const auto prob = [&](SamplerKind kind,
                          const std::function<bool(const SampleValue&)>& ev) {
        rows.push_back(mc_row(
            cfg.event,
            estimate_probability({kind, cfg.seed}, ev, cfg.n, cfg.threads)));
    };
    const auto mean = [&](SamplerKind kind,
                          const std::function<double(const SampleValue&)>& f) {
        rows.push_back(mc_row(
            cfg.event, estimate_mean({kind, cfg.seed}, f, cfg.n, cfg.threads)));
    };
    const auto tetra_volume = [](const SampleValue& v) {
        return std::fabs(signed_volume(std::get<Tetrahedron>(v)));
    };

    if (cfg.event == "gamma-cone") {
        prob(SamplerKind::gaussian_tetra, [](const SampleValue& v) {
            const Tetrahedron& t = std::get<Tetrahedron>(v);
            return cone_events(t.a, t.b, t.c, t.d).in_gamma;
        });
    } else if (cfg.event == "reflected-cone") {
        prob(SamplerKind::gaussian_tetra, [](const SampleValue& v) {
            const Tetrahedron& t = std::get<Tetrahedron>(v);
            return cone_events(t.a, t.b, t.c, t.d).in_reflected;
        });
    } else if (cfg.event == "parallelogram") {
        prob(SamplerKind::gaussian_tetra, [](const SampleValue& v) {
            const Tetrahedron& t = std::get<Tetrahedron>(v);
            return cone_events(t.a, t.b, t.c, t.d).in_parallelogram;
        });
    } else if (cfg.event == "acute-tetra") {
        prob(SamplerKind::gaussian_tetra, [](const SampleValue& v) {
            return is_acute_tetrahedron(std::get<Tetrahedron>(v));
        });
    } else if (cfg.event == "acute-triangle") {
        prob(SamplerKind::gaussian_triangle, [](const SampleValue& v) {
            return is_acute_triangle(std::get<Triangle>(v));
        });
    } else if (cfg.event == "pinned-acute-triangle") {
        prob(SamplerKind::pinned_triangle, [](const SampleValue& v) {
            return is_acute_triangle(std::get<Triangle>(v));
        });
    } else if (cfg.event == "shadow-triangle:regular") {
        const Tetrahedron t = regular_tetrahedron();
        prob(SamplerKind::uniform_plane_normal, [t](const SampleValue& v) {
            return shadow_is_triangle(t, std::get<Point3>(v));
        });
    } else if (cfg.event == "shadow-triangle:gaussian") {
        // A fresh Gaussian tetrahedron per trial; the projection direction is
        // fixed, which matches random directions by rotational invariance.
        prob(SamplerKind::gaussian_tetra, [](const SampleValue& v) {
            return shadow_is_triangle(std::get<Tetrahedron>(v),
                                      Point3{0, 0, 1});
        });
    } else if (cfg.event == "volume-mean:gaussian") {
        mean(SamplerKind::gaussian_tetra, tetra_volume);
    } else if (cfg.event == "volume-mean:ball") {
        mean(SamplerKind::uniform_ball_tetra, tetra_volume);
    } else if (cfg.event == "volume-mean:cube") {
        mean(SamplerKind::uniform_cube_tetra, tetra_volume);
    } else if (cfg.event == "solid-angle-samples") {
        const double total = crofton_cdf(kTwoPi);
        sample_rows(
            cfg, rows, cfg.event,
            [](const SampleValue& v) {
                const Tetrahedron& t = std::get<Tetrahedron>(v);
                return solid_angle(t.d, t.a, t.b, t.c);
            },
            [total](double x) { return crofton_cdf(x) / total; });
    } else if (cfg.event == "dihedral-samples") {
        sample_rows(
            cfg, rows, cfg.event,
            [](const SampleValue& v) {
                return dihedral_angles(std::get<Tetrahedron>(v)).alpha();
            },
            [](double x) { return x / kPi; });
    } else {
        std::cerr << "error: unknown event '" << cfg.event
                  << "' (expected gamma-cone | reflected-cone | parallelogram "
                     "| acute-tetra | acute-triangle | pinned-acute-triangle | "
                     "shadow-triangle:regular | shadow-triangle:gaussian | "
                     "solid-angle-samples | dihedral-samples | "
                     "volume-mean:gaussian | volume-mean:ball | "
                     "volume-mean:cube)\n";
        return 2;
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    ordered_json config;
    config["event"] = cfg.event;
    config["n"] = cfg.n;
    config["seed"] = cfg.seed;
    config["format"] = cfg.format;
    emit_report("estimate", config, rows, cfg.format, cfg.out, wall);
    return 0;
}

// ---------------------------------------------------------------- analytic

struct AnalyticConfig {
    std::string quantity;
    double tol = 0;  // 0 = library default
    double series_tol = 1e-10;
    std::string format = "json";
    std::string out;
};

int cmd_analytic(const AnalyticConfig& cfg) {
    QuadratureSpec spec;
    if (cfg.tol > 0) {
        spec.abs_tol = cfg.tol;
        spec.rel_tol = cfg.tol;
    }
    const auto t0 = std::chrono::steady_clock::now();
    AnalyticQuantity q;
    try {
        q = constant(cfg.quantity, spec, cfg.series_tol);
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    Row r;
    r.name = q.name;
    r.value = q.value;
    r.uncertainty = q.error_bound;
    r.method = analytic_method_name(q.method);
    r.n_or_evals = q.n_or_evals;
    ordered_json config;
    config["quantity"] = cfg.quantity;
    if (cfg.tol > 0) config["tol"] = cfg.tol;
    if (cfg.series_tol != 1e-10) config["series_tol"] = cfg.series_tol;
    config["format"] = cfg.format;
    emit_report("analytic", config, {r}, cfg.format, cfg.out, wall);
    return 0;
}

// ---------------------------------------------------------------- density

struct Axis {
    double lo = 0, hi = 0, step = 0;
    std::size_t count = 0;
    double at(std::size_t i) const { return lo + (double)i * step; }
};

bool parse_axis(const std::string& text, Axis& axis) {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) return false;
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        return false;
    const auto number = [](const std::string& s, double& out) {
        if (s.empty()) return false;
        char* end = nullptr;
        out = std::strtod(s.c_str(), &end);
        return end == s.c_str() + s.size() && std::isfinite(out);
    };
    if (!number(text.substr(0, c1), axis.lo) ||
        !number(text.substr(c1 + 1, c2 - c1 - 1), axis.hi) ||
        !number(text.substr(c2 + 1), axis.step))
        return false;
    if (!(axis.step > 0) || axis.hi < axis.lo) return false;
    const double count = std::floor((axis.hi - axis.lo) / axis.step + 1e-9) + 1;
    if (!(count >= 1) || count > 2e7) return false;
    axis.count = (std::size_t)count;
    return true;
}

// "lo:hi:step" (1D) or "lo:hi:stepxlo:hi:step" (2D); the 'x' separator is
// unambiguous because axis numbers never contain letters.
bool parse_grid(const std::string& text, std::vector<Axis>& axes) {
    const auto sep = text.find('x');
    axes.clear();
    Axis a;
    if (sep == std::string::npos) {
        if (!parse_axis(text, a)) return false;
        axes.push_back(a);
        return true;
    }
    if (!parse_axis(text.substr(0, sep), a)) return false;
    axes.push_back(a);
    if (!parse_axis(text.substr(sep + 1), a)) return false;
    axes.push_back(a);
    return true;
}

struct DensityConfig {
    std::string name;
    std::string grid;
    std::string out;
};

int cmd_density(const DensityConfig& cfg) {
    std::vector<Axis> axes;
    if (!parse_grid(cfg.grid, axes)) {
        std::cerr << "error: bad grid '" << cfg.grid
                  << "' (expected lo:hi:step or lo:hi:stepxlo:hi:step with "
                     "step > 0, hi >= lo)\n";
        return 2;
    }
    const bool two_d = cfg.name == "conv3-general" || cfg.name == "conv3-pinned" ||
                       cfg.name == "miller-general" || cfg.name == "miller-pinned";
    const bool known = two_d || cfg.name == "crofton" ||
                       cfg.name == "miles-marginal";
    if (!known) {
        std::cerr << "error: unknown density '" << cfg.name
                  << "' (expected miller-general | miller-pinned | "
                     "conv3-general | conv3-pinned | crofton | "
                     "miles-marginal)\n";
        return 2;
    }
    if (axes.size() != (two_d ? 2u : 1u)) {
        std::cerr << "error: density '" << cfg.name << "' needs a "
                  << (two_d ? 2 : 1) << "D grid\n";
        return 2;
    }

    std::string csv;
    if (cfg.name == "crofton") {
        const Axis& ax = axes[0];
        if (ax.lo < 0 || ax.hi > kTwoPi + 1e-12) {
            std::cerr << "error: crofton grid must lie inside [0, 2 pi]\n";
            return 2;
        }
        csv = "x,density,cdf\n";
        for (std::size_t i = 0; i < ax.count; ++i) {
            const double x = std::min(ax.at(i), kTwoPi);
            // Endpoints take the continuous one-sided limits so plot exports
            // are total on the closed interval.
            double f;
            if (x < 1e-12)
                f = crofton_limit_zero();
            else if (x > kTwoPi - 1e-12)
                f = crofton_limit_two_pi();
            else
                f = crofton_density(x);
            csv += num17(x) + ',' + num17(f) + ',' + num17(crofton_cdf(x)) +
                   '\n';
        }
    } else if (cfg.name == "miles-marginal") {
        const Axis& ax = axes[0];
        if (ax.lo < 0 || ax.hi > kPi + 1e-12) {
            std::cerr << "error: miles-marginal grid must lie inside "
                         "[0, pi]\n";
            return 2;
        }
        csv = "x,density\n";
        for (std::size_t i = 0; i < ax.count; ++i) {
            const double x = std::min(ax.at(i), kPi);
            // Constant density; the closed endpoints take the limit value.
            const double f = (x < 1e-12 || x > kPi - 1e-12)
                                 ? 1.0 / kPi
                                 : miles_marginal_density(x);
            csv += num17(x) + ',' + num17(f) + '\n';
        }
    } else {
        const bool pinned = cfg.name == "conv3-pinned" ||
                            cfg.name == "miller-pinned";
        if (cfg.name != "conv3-general" && cfg.name != "conv3-pinned" &&
            cfg.name != "miller-general" && cfg.name != "miller-pinned") {
            std::cerr << "error: unknown density '" << cfg.name << "'\n";
            return 2;
        }
        const CovCase cc = pinned ? CovCase::pinned : CovCase::general;
        const bool miller = cfg.name.rfind("miller-", 0) == 0;
        MillerParams params;
        if (miller) params = miller_params_from_cov(standard_cov(cc));
        csv = "z1,z2,value\n";
        for (std::size_t i = 0; i < axes[0].count; ++i) {
            const double z1 = axes[0].at(i);
            for (std::size_t j = 0; j < axes[1].count; ++j) {
                const double z2 = axes[1].at(j);
                double f;
                if (miller) {
                    if (z1 == 0.0 && z2 == 0.0) {
                        std::cerr << "error: bad grid: the product density is "
                                     "singular at (0, 0); shift the grid off "
                                     "the origin\n";
                        return 2;
                    }
                    f = miller_density(params, z1, z2);
                } else {
                    f = triple_convolution_density(cc, z1, z2);
                }
                csv += num17(z1) + ',' + num17(z2) + ',' + num17(f) + '\n';
            }
        }
    }
    std::cout << csv;
    if (!cfg.out.empty()) write_file(cfg.out, csv);
    return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateConfig {
    std::string scale = "full";
    std::string only;
    int threads = 0;
    std::uint64_t seed = 20260823;
    std::string out;
};

int cmd_validate(const ValidateConfig& cfg) {
    ValidateOptions opt;
    if (cfg.scale == "full")
        opt.scale = ValidateOptions::Scale::full;
    else if (cfg.scale == "quick")
        opt.scale = ValidateOptions::Scale::quick;
    else {
        std::cerr << "error: --scale must be full or quick\n";
        return 2;
    }
    opt.only = cfg.only;
    opt.threads = cfg.threads;
    opt.seed = cfg.seed;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CriterionResult> results;
    try {
        results = run_criteria(opt);
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    bool all_passed = true;
    for (const CriterionResult& r : results) {
        all_passed = all_passed && r.passed;
        std::cerr << (r.passed ? "PASS" : "FAIL") << "  c"
                  << (r.index < 10 ? "0" : "") << r.index << ":" << r.name
                  << "  (" << std::fixed << std::setprecision(2) << r.seconds
                  << " s)\n";
        std::cerr.unsetf(std::ios::floatfield);
        for (const std::string& line : r.details)
            std::cerr << "      " << line << '\n';
    }

    const auto build = [&](bool with_timing) {
        ordered_json arr = ordered_json::array();
        for (const CriterionResult& r : results) {
            ordered_json j;
            char tag[8];
            std::snprintf(tag, sizeof(tag), "c%02d", r.index);
            j["name"] = std::string(tag) + ":" + r.name;
            j["value"] = r.passed ? 1 : 0;
            j["uncertainty"] = nullptr;
            j["method"] = "validate";
            j["n_or_evals"] = 0;
            j["seed"] = cfg.seed;
            j["passed"] = r.passed;
            j["seconds"] =
                with_timing ? ordered_json(r.seconds) : ordered_json(nullptr);
            j["details"] = r.details;
            arr.push_back(std::move(j));
        }
        ordered_json config;
        config["scale"] = cfg.scale;
        if (!cfg.only.empty()) config["only"] = cfg.only;
        config["seed"] = cfg.seed;
        ordered_json rep;
        rep["command"] = "validate";
        rep["config"] = config;
        rep["results"] = std::move(arr);
        rep["wall_time"] =
            with_timing ? ordered_json(wall) : ordered_json(nullptr);
        return rep;
    };
    std::cout << build(true).dump(2) << '\n';
    if (!cfg.out.empty()) write_file(cfg.out, build(false).dump(2) + "\n");
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Random-simplex geometric probabilities: Monte Carlo estimators, "
        "analytic values, density exports, and the validation suite"};
    app.require_subcommand(1);

    EstimateConfig est;
    CLI::App* cmd_est = app.add_subcommand(
        "estimate", "Monte Carlo estimate of a geometric event or mean");
    cmd_est->add_option("--event", est.event, "event name")->required();
    cmd_est->add_option("--n", est.n, "number of trials (>= 100)")->required();
    cmd_est->add_option("--seed", est.seed, "RNG seed (default 1)");
    cmd_est->add_option("--threads", est.threads,
                        "worker count (0 = GTET_THREADS or all cores)");
    cmd_est->add_option("--format", est.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_est->add_option("--out", est.out, "also write the report to this file");

    AnalyticConfig ana;
    CLI::App* cmd_ana = app.add_subcommand(
        "analytic", "closed-form / series / quadrature reference value");
    cmd_ana->add_option("--quantity", ana.quantity, "quantity name")
        ->required();
    cmd_ana->add_option("--tol", ana.tol, "quadrature tolerance");
    cmd_ana->add_option("--series-tol", ana.series_tol,
                        "series relative tolerance");
    cmd_ana->add_option("--format", ana.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_ana->add_option("--out", ana.out, "also write the report to this file");

    DensityConfig den;
    CLI::App* cmd_den =
        app.add_subcommand("density", "CSV export of a density over a grid");
    cmd_den->add_option("--name", den.name, "density name")->required();
    cmd_den->add_option("--grid", den.grid,
                        "lo:hi:step (1D) or lo:hi:stepxlo:hi:step (2D)")
        ->required();
    cmd_den->add_option("--out", den.out, "also write the CSV to this file");

    ValidateConfig val;
    CLI::App* cmd_val =
        app.add_subcommand("validate", "run the acceptance criteria");
    cmd_val->add_option("--scale", val.scale, "full | quick");
    cmd_val->add_option("--only", val.only,
                        "run a single criterion (name, cNN, or index)");
    cmd_val->add_option("--threads", val.threads,
                        "worker count (0 = GTET_THREADS or all cores)");
    cmd_val->add_option("--seed", val.seed, "base seed for MC sub-runs");
    cmd_val->add_option("--out", val.out, "also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_est) return cmd_estimate(est);
        if (*cmd_ana) return cmd_analytic(ana);
        if (*cmd_den) return cmd_density(den);
        if (*cmd_val) return cmd_validate(val);
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const mc_abort_error& e) {
        std::cerr << "abort: " << e.what() << '\n';
        return 3;
    } catch (const degeneracy_error& e) {
        std::cerr << "abort: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "abort: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
