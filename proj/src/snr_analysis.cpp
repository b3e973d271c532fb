#include "afcfo/snr_analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace afcfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 2 f |f'| (chain rule) or 2 |f'| (as printed), the eps-dependent factor of
// each sensitivity.
double offset_factor(CfoValue eps, long N, SensitivityVariant variant) {
    const double slope = std::abs(dirichlet_gain_derivative(eps, N));
    if (variant == SensitivityVariant::chain_rule) return 2.0 * dirichlet_gain(eps, N) * slope;
    return 2.0 * slope;
}

SensitivityPair sensitivity_pair(const SnrBreakdown& snr, double direct_weight, double relay_weight,
                                 CfoValue eps1, CfoValue eps2, long N, SensitivityVariant variant) {
    SensitivityPair out;
    out.variant = variant;
    if (snr.infinite) {
        out.lambda1 = out.lambda2 = kInf;
        return out;
    }
    const double a = snr.numerator;
    const double b = snr.denominator;
    const double common = (a + b) / (b * b);
    out.lambda1 = offset_factor(eps1, N, variant) * direct_weight * common;
    out.lambda2 = offset_factor(eps2, N, variant) * relay_weight * common;
    return out;
}

}  // namespace

std::string_view to_string(SensitivityVariant v) noexcept {
    return v == SensitivityVariant::chain_rule ? "chain_rule" : "paper_literal";
}

double to_db(double linear_ratio) { return 10.0 * std::log10(linear_ratio); }

SnrBreakdown SnrBreakdown::from_parts(double numerator, double denominator) {
    SnrBreakdown s;
    s.numerator = numerator;
    s.denominator = denominator;
    if (denominator == 0.0) {
        s.infinite = true;
        s.snr_linear = kInf;
        s.snr_db = kInf;
        return s;
    }
    s.snr_linear = numerator / denominator;
    s.snr_db = to_db(s.snr_linear);
    return s;
}

SnrBreakdown analytical_snr(const LinkStats& s) {
    const double f1 = dirichlet_gain(s.eps1, s.N);
    const double f2 = dirichlet_gain(s.eps2, s.N);
    const double direct = s.sigma_h1_sq * s.sigma_x_sq;
    const double relay = s.rho * s.rho * s.sigma_h2_sq * s.sigma_h3_sq * s.sigma_x_sq;
    const double a = f1 * f1 * direct + f2 * f2 * relay;
    const double b = (1.0 - f1 * f1) * direct + (1.0 - f2 * f2) * relay + s.sigma_z1_sq +
                     s.rho * s.rho * s.sigma_z2_sq + s.sigma_z3_sq;
    return SnrBreakdown::from_parts(a, b);
}

SnrBreakdown analytical_snr_upa(const LinkStats& s, UpaForm form) {
    if (!(s.sigma_h2_sq > 0.0)) throw std::domain_error("analytical_snr_upa: sigma_H2^2 must be positive");
    const double f1 = dirichlet_gain(s.eps1, s.N);
    const double f2 = dirichlet_gain(s.eps2, s.N);
    const double direct = s.sigma_h1_sq * s.sigma_x_sq;
    const double relay = s.sigma_h3_sq * s.sigma_x_sq;
    const double a = f1 * f1 * direct + f2 * f2 * relay;
    const double relay_noise = form == UpaForm::substituted ? s.sigma_z2_sq / s.sigma_h2_sq
                                                            : s.sigma_h2_sq * s.sigma_z2_sq;
    const double b = (1.0 - f1 * f1) * direct + (1.0 - f2 * f2) * relay + s.sigma_z1_sq + relay_noise +
                     s.sigma_z3_sq;
    return SnrBreakdown::from_parts(a, b);
}

SensitivityPair sensitivities(const LinkStats& s, SensitivityVariant variant) {
    const double direct = s.sigma_h1_sq * s.sigma_x_sq;
    const double relay = s.rho * s.rho * s.sigma_h2_sq * s.sigma_h3_sq * s.sigma_x_sq;
    return sensitivity_pair(analytical_snr(s), direct, relay, s.eps1, s.eps2, s.N, variant);
}

SensitivityPair sensitivities_upa(const LinkStats& s, SensitivityVariant variant) {
    const double direct = s.sigma_h1_sq * s.sigma_x_sq;
    const double relay = s.sigma_h3_sq * s.sigma_x_sq;
    return sensitivity_pair(analytical_snr_upa(s), direct, relay, s.eps1, s.eps2, s.N, variant);
}

SnrBreakdown multi_relay_snr(const TopologyStats& t) {
    const double f0 = dirichlet_gain(t.direct.eps0, t.N);
    const double direct = t.direct.sigma_h0_sq * t.sigma_x_sq;
    double a = f0 * f0 * direct;
    double b = (1.0 - f0 * f0) * direct + t.direct.sigma_z0_sq;
    for (const BranchStats& br : t.branches) {
        const double fi = dirichlet_gain(br.eps, t.N);
        const double weight = br.rho * br.rho * br.sigma_hi1_sq * br.sigma_hi2_sq * t.sigma_x_sq;
        a += fi * fi * weight;
        b += (1.0 - fi * fi) * weight + br.sigma_zi1_sq + br.rho * br.rho * br.sigma_zi2_sq;
    }
    return SnrBreakdown::from_parts(a, b);
}

TopologyStats to_topology(const LinkStats& s) {
    TopologyStats t;
    t.direct = {s.sigma_h1_sq, s.eps1, s.sigma_z1_sq};
    t.branches.push_back({s.sigma_h2_sq, s.sigma_h3_sq, s.eps2, s.rho, s.sigma_z3_sq, s.sigma_z2_sq});
    t.sigma_x_sq = s.sigma_x_sq;
    t.N = s.N;
    return t;
}

}  // namespace afcfo
