#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gtet {

struct CriterionResult {
    int index = 0;                      // 1-based criterion number
    std::string name;                   // stable selector name
    bool passed = false;
    double seconds = 0;
    std::vector<std::string> details;   // one line per sub-check
};

struct ValidateOptions {
    enum class Scale { full, quick };
    Scale scale = Scale::full;          // quick divides MC trial counts by 100
    std::string only;                   // empty = all; else name, "cNN", or index
    int threads = 0;                    // worker override (0 = auto)
    std::uint64_t seed = 20260823;      // base seed for all MC sub-runs
};

// The registered criteria in order: (index, name).
const std::vector<std::pair<int, std::string>>& criterion_names();

// True when `selector` identifies the criterion (by name, "c07"-style tag, or
// bare index).
bool matches_criterion(const std::string& selector, int index, const std::string& name);

// Runs the selected criteria (all when options.only is empty) and returns one
// result per criterion executed.  Throws domain_error when `only` matches no
// criterion.
std::vector<CriterionResult> run_criteria(const ValidateOptions& options);

}  // namespace gtet
