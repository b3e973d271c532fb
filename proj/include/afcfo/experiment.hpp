#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "afcfo/config.hpp"
#include "afcfo/relay_chain.hpp"
#include "afcfo/snr_analysis.hpp"

namespace afcfo {

/// Offsets for one sweep point: eps1 on the direct link, eps2 on every relay
/// branch.
struct EpsAssignment {
    double eps1 = 0.0;
    double eps2 = 0.0;
};

/// Ratio-of-sums Monte-Carlo estimate of the destination SNR.
struct EmpiricalSnr {
    double snr_linear = 0.0;
    double snr_db = 0.0;
    double stderr_db = 0.0;  ///< delta-method standard error of snr_db
    long trials = 0;
    std::uint64_t master_seed = 0;
    bool infinite = false;

    friend bool operator==(const EmpiricalSnr&, const EmpiricalSnr&) = default;
};

struct PointResult {
    EpsAssignment eps;
    double noise_scale = 1.0;
    std::optional<SnrBreakdown> analytical;
    std::optional<SensitivityPair> sensitivity;
    std::optional<EmpiricalSnr> empirical;
    std::uint64_t master_seed = 0;
};

/// Residual energy at or below this fraction of the signal energy is treated
/// as exactly zero (the pipeline's own rounding floor, about 200 dB).
inline constexpr double kResidualFloor = 1e-20;

/// Aggregates per-trial outcomes in index order.
[[nodiscard]] EmpiricalSnr aggregate_trials(std::span<const TrialOutcome> outcomes, std::uint64_t master_seed);

/// Runs trials 0..trials-1, trial i on trial_stream(master_seed, i), spread over
/// `workers` threads (0: hardware concurrency). The result does not depend on
/// the worker count.
[[nodiscard]] std::vector<TrialOutcome> run_trials(const ChainSpec& spec, long trials,
                                                   std::uint64_t master_seed, unsigned workers);

[[nodiscard]] EmpiricalSnr estimate_snr(const ChainSpec& spec, long trials, std::uint64_t master_seed,
                                        unsigned workers);

/// Relay gain of branch `index` at the given noise scale.
[[nodiscard]] double branch_gain(const ExperimentConfig& cfg, std::size_t index, double noise_scale);

/// Single-relay statistics for the analytical column (per-subcarrier noise).
[[nodiscard]] LinkStats link_stats(const ExperimentConfig& cfg, EpsAssignment eps, double noise_scale);
[[nodiscard]] TopologyStats topology_stats(const ExperimentConfig& cfg, EpsAssignment eps, double noise_scale);

/// Waveform-level description; per-subcarrier noise variances become
/// time-domain per-sample variances sigma^2 / N.
[[nodiscard]] ChainSpec chain_spec(const ExperimentConfig& cfg, EpsAssignment eps, double noise_scale);

[[nodiscard]] PointResult run_point(const ExperimentConfig& cfg, EpsAssignment eps, double noise_scale);

/// Sweep points in output order: noise scale, then axis, then grid.
[[nodiscard]] std::vector<std::pair<EpsAssignment, double>> sweep_points(const ExperimentConfig& cfg);

[[nodiscard]] std::vector<PointResult> run_sweep(const ExperimentConfig& cfg);

/// Analytical SNR and sensitivities over grid x grid, per noise scale.
[[nodiscard]] std::vector<PointResult> run_surface(const ExperimentConfig& cfg);

}  // namespace afcfo
