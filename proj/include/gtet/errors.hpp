#pragma once

#include <stdexcept>
#include <string>

namespace gtet {

// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Geometric input is degenerate (coincident vertices, zero area/volume,
// collinear projections, ...).
struct degeneracy_error : error {
    explicit degeneracy_error(const std::string& what) : error(what) {}
};

// Scalar argument outside an operation's domain.
struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

// An iterative computation (series, estimator) failed to converge within its
// budget.  Quadrature reports non-convergence through its result flag instead.
struct convergence_error : error {
    explicit convergence_error(const std::string& what) : error(what) {}
};

// A Monte Carlo run had to be aborted (excess degeneracy exclusions or a
// non-finite functional value).
struct mc_abort_error : error {
    explicit mc_abort_error(const std::string& what) : error(what) {}
};

}  // namespace gtet
