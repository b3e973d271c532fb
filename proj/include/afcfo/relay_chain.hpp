#pragma once

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "afcfo/channel_model.hpp"
#include "afcfo/ofdm_phy.hpp"
#include "afcfo/signal_core.hpp"

namespace afcfo {

enum class GainMode {
    fixed,           ///< rho given directly
    general,         ///< rho = sqrt(P_R / (sigma_H2^2 P_S + sigma_Z2^2))
    upa,             ///< P_S = P_R = P / 2
    upa_asymptotic,  ///< P >> sigma_Z2^2, rho = 1 / sqrt(sigma_H2^2)
};

[[nodiscard]] std::string_view to_string(GainMode m) noexcept;
[[nodiscard]] GainMode parse_gain_mode(std::string_view name);

struct RelayGainConfig {
    GainMode mode = GainMode::upa_asymptotic;
    double rho = 1.0;           // fixed
    double total_power = 2.0;   // upa: P
    double source_power = 1.0;  // general: P_S
    double relay_power = 1.0;   // general: P_R
};

/// Amplification at the relay. sigma_h2_sq is the source-to-relay channel
/// power, sigma_z2_sq the noise power at the relay input. Throws
/// std::domain_error when the expression has no finite value.
[[nodiscard]] double gain_factor(const RelayGainConfig& cfg, double sigma_h2_sq, double sigma_z2_sq);

/// One amplify-and-forward branch: source->relay hop, relay->destination hop,
/// the branch offset seen at the destination, and both noise sources
/// (time-domain per-sample variances).
struct BranchRealization {
    MultipathChannel hop1;
    MultipathChannel hop2;
    CfoValue eps;
    double rho = 1.0;
    NoiseSpec noise_relay;
    NoiseSpec noise_dest;
};

/// Per-bin dominant coefficient of one branch: C(eps,0) H1[k] for the direct
/// link, rho C(eps,0) H2[k] H3[k] for a relay branch. Its argument is the
/// derotation phase beta(k) and its magnitude the branch's EGC signal gain.
using BranchGenie = ComplexVector;

struct TrialOutcome {
    double signal_power = 0.0;    ///< sum_k |S[k]|^2
    double residual_power = 0.0;  ///< sum_k |R[k] - S[k]|^2
    long subcarrier_count = 0;
};

struct EgcResult {
    ComplexVector metric;           ///< R[k]
    std::vector<long> flagged_bins; ///< bins where some genie value was exactly zero
};

/// y1 = N c(eps1, n) (h1 * x) + z1.
[[nodiscard]] TimeSignal simulate_direct(const TimeSignal& x, const MultipathChannel& ch1,
                                         CfoValue eps1, NoiseSpec noise, long N, RandomStream& rng);

/// y2 = rho N c(eps2, n) (h2 * h3 * x) + rho z2 + z3, with z2 neither filtered
/// by the second hop nor rotated by the offset.
[[nodiscard]] TimeSignal simulate_relay_branch(const TimeSignal& x, const BranchRealization& branch,
                                               long N, RandomStream& rng);

[[nodiscard]] BranchGenie direct_genie(const MultipathChannel& ch1, CfoValue eps1, long N);
[[nodiscard]] BranchGenie relay_genie(const BranchRealization& branch, long N);

/// Removes the prefix, transforms, derotates each branch by -arg(genie[k]) and
/// sums. Bins where a genie value is exactly zero are derotated by 0 and
/// reported in flagged_bins.
[[nodiscard]] EgcResult receive_egc(std::span<const TimeSignal> received,
                                    std::span<const BranchGenie> genies, const OfdmParams& params);

/// Splits R[k] into S[k] = (sum_b |genie_b[k]|) X[k] and the remainder.
[[nodiscard]] TrialOutcome decompose_trial(std::span<const cplx> metric,
                                           std::span<const BranchGenie> genies,
                                           const FreqSymbol& symbol);

// Statistical description of a topology, from which each trial draws fresh
// symbols, channels and noise.

struct DirectLinkSpec {
    PowerDelayProfile profile;
    CfoValue eps;
    NoiseSpec noise;  ///< time-domain per-sample variance
};

struct RelayBranchSpec {
    PowerDelayProfile hop1;
    PowerDelayProfile hop2;
    CfoValue eps;
    double rho = 1.0;
    NoiseSpec noise_relay;
    NoiseSpec noise_dest;
};

struct ChainSpec {
    OfdmParams ofdm;
    DirectLinkSpec direct;
    std::vector<RelayBranchSpec> branches;

    /// Throws IsiConditionError if N_g < L1 or N_g < L(hop1) + L(hop2).
    void validate() const;
};

/// One transmission period: fresh symbol, channels and noise from rng, EGC
/// reception and decomposition.
[[nodiscard]] TrialOutcome run_trial(const ChainSpec& spec, RandomStream& rng);

}  // namespace afcfo
