#pragma once

#include <string_view>
#include <vector>

#include "afcfo/signal_core.hpp"

namespace afcfo {

/// Statistics of the single-relay link. Noise variances are per-subcarrier
/// (the variance of Z[k] seen on the same scale as sigma_x_sq).
struct LinkStats {
    double sigma_h1_sq = 1.0;  ///< direct link S->D
    double sigma_h2_sq = 1.0;  ///< S->R
    double sigma_h3_sq = 4.0;  ///< R->D
    double sigma_x_sq = 1.0;
    double sigma_z1_sq = 0.1;  ///< at D, direct slot
    double sigma_z2_sq = 0.1;  ///< at R, amplified by rho
    double sigma_z3_sq = 0.1;  ///< at D, relay slot
    CfoValue eps1;
    CfoValue eps2;
    double rho = 1.0;
    long N = 64;
};

/// Closed-form SNR as numerator A over denominator B. When B == 0 the SNR is
/// infinite: `infinite` is set and snr_linear / snr_db hold +inf.
struct SnrBreakdown {
    double numerator = 0.0;
    double denominator = 0.0;
    double snr_linear = 0.0;
    double snr_db = 0.0;
    bool infinite = false;

    static SnrBreakdown from_parts(double numerator, double denominator);
};

enum class SensitivityVariant {
    chain_rule,     ///< exact |dSNR/deps_i|
    paper_literal,  ///< 2 |f_N'(eps_i)| w_i (A + B) / B^2, without the f_N(eps_i) factor
};

[[nodiscard]] std::string_view to_string(SensitivityVariant v) noexcept;

struct SensitivityPair {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    SensitivityVariant variant = SensitivityVariant::chain_rule;
};

[[nodiscard]] double to_db(double linear_ratio);

[[nodiscard]] SnrBreakdown analytical_snr(const LinkStats& stats);

enum class UpaForm {
    substituted,  ///< relay noise term rho^2 sigma_Z2^2 = sigma_Z2^2 / sigma_H2^2
    as_printed,   ///< relay noise term sigma_H2^2 sigma_Z2^2; agrees only when sigma_H2^2 = 1
};

/// Asymptotic-UPA form (rho^2 sigma_H2^2 = 1). stats.rho is ignored.
/// Throws std::domain_error when sigma_h2_sq <= 0.
[[nodiscard]] SnrBreakdown analytical_snr_upa(const LinkStats& stats, UpaForm form = UpaForm::substituted);

[[nodiscard]] SensitivityPair sensitivities(const LinkStats& stats, SensitivityVariant variant);

/// Sensitivities in the asymptotic-UPA form, with A and B from
/// analytical_snr_upa. stats.rho is ignored.
[[nodiscard]] SensitivityPair sensitivities_upa(const LinkStats& stats, SensitivityVariant variant);

struct DirectLinkStats {
    double sigma_h0_sq = 1.0;
    CfoValue eps0;
    double sigma_z0_sq = 0.1;
};

/// Relay branch i of the multi-relay sum. The noise pair enters as
/// (sigma_z_i1^2 + rho_i^2 sigma_z_i2^2): z_i1 is the un-amplified noise at the
/// destination, z_i2 the relay-input noise that the relay amplifies.
struct BranchStats {
    double sigma_hi1_sq = 1.0;  ///< S->R_i
    double sigma_hi2_sq = 1.0;  ///< R_i->D
    CfoValue eps;
    double rho = 1.0;
    double sigma_zi1_sq = 0.1;  ///< destination noise
    double sigma_zi2_sq = 0.1;  ///< relay-input noise
};

struct TopologyStats {
    DirectLinkStats direct;
    std::vector<BranchStats> branches;
    double sigma_x_sq = 1.0;
    long N = 64;
};

[[nodiscard]] SnrBreakdown multi_relay_snr(const TopologyStats& topo);

/// The M = 1 topology equivalent to a single-relay LinkStats:
/// Z0 <- Z1, Z_11 <- Z3 (destination), Z_12 <- Z2 (relay input).
[[nodiscard]] TopologyStats to_topology(const LinkStats& stats);

}  // namespace afcfo
