#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace afcfo {

/// Caller-owned random stream. One per trial; never shared across threads.
using RandomStream = std::mt19937_64;

/// Stream for a given (master seed, trial index) pair. Identical inputs give
/// identical streams regardless of which worker runs the trial.
inline RandomStream trial_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(trial_index),
                      static_cast<std::uint32_t>(trial_index >> 32), 0x41465243u};
    return RandomStream(seq);
}

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline std::complex<double> complex_gaussian(RandomStream& rng, double variance) {
    std::normal_distribution<double> unit(0.0, 1.0);
    const double s = std::sqrt(variance / 2.0);
    const double re = unit(rng);
    const double im = unit(rng);
    return {s * re, s * im};
}

}  // namespace afcfo
