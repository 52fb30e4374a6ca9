#pragma once

#include <array>
#include <cstdint>

namespace gtet {

// Philox4x32-10 counter-based block cipher.  A (counter, key) pair maps to
// four 32-bit words; distinct counters give statistically independent words,
// so random streams can be indexed rather than iterated.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Inverse of the standard normal CDF (rational minimax approximations,
// relative error below 1e-15 across (0, 1)).
double normal_quantile(double p);

// Deterministic per-trial random stream.  Every draw is a pure function of
// (seed, trial, position): trial streams can be evaluated in any order and
// on any number of workers with identical results.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t trial)
        : seed_(seed), trial_(trial) {}

    // Uniform on the open interval (0, 1); never returns 0 or 1.
    double next_uniform();

    // Standard normal via the inverse-CDF map of next_uniform().
    double next_normal() { return normal_quantile(next_uniform()); }

  private:
    std::uint64_t seed_;
    std::uint64_t trial_;
    std::uint32_t block_ = 0;  // index of the next 128-bit block
    int available_ = 0;        // unconsumed doubles in words_
    std::array<std::uint64_t, 2> words_{};

    void refill();
};

}  // namespace gtet
