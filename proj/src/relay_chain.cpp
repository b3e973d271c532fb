#include "afcfo/relay_chain.hpp"

#include <cmath>
#include <string>

namespace afcfo {

std::string_view to_string(GainMode m) noexcept {
    switch (m) {
        case GainMode::fixed: return "fixed";
        case GainMode::general: return "general";
        case GainMode::upa: return "upa";
        case GainMode::upa_asymptotic: return "upa_asymptotic";
    }
    return "?";
}

GainMode parse_gain_mode(std::string_view name) {
    if (name == "fixed") return GainMode::fixed;
    if (name == "general") return GainMode::general;
    if (name == "upa") return GainMode::upa;
    if (name == "upa_asymptotic") return GainMode::upa_asymptotic;
    throw std::invalid_argument("unknown gain mode '" + std::string(name) +
                                "' (expected fixed, general, upa or upa_asymptotic)");
}

double gain_factor(const RelayGainConfig& cfg, double sigma_h2_sq, double sigma_z2_sq) {
    if (sigma_h2_sq < 0.0 || sigma_z2_sq < 0.0) {
        throw std::invalid_argument("gain_factor: channel and noise powers must be non-negative");
    }
    double rho = 0.0;
    switch (cfg.mode) {
        case GainMode::fixed:
            rho = cfg.rho;
            break;
        case GainMode::general: {
            const double denom = sigma_h2_sq * cfg.source_power + sigma_z2_sq;
            if (!(denom > 0.0)) throw std::domain_error("gain_factor: sigma_H2^2 P_S + sigma_Z2^2 is zero");
            rho = std::sqrt(cfg.relay_power / denom);
            break;
        }
        case GainMode::upa: {
            if (!(cfg.total_power > 0.0)) throw std::domain_error("gain_factor: total power P must be positive");
            const double denom = sigma_h2_sq + 2.0 * sigma_z2_sq / cfg.total_power;
            if (!(denom > 0.0)) throw std::domain_error("gain_factor: sigma_H2^2 + 2 sigma_Z2^2 / P is zero");
            rho = std::sqrt(1.0 / denom);
            break;
        }
        case GainMode::upa_asymptotic:
            if (!(sigma_h2_sq > 0.0)) throw std::domain_error("gain_factor: sigma_H2^2 = 0 in asymptotic UPA");
            rho = 1.0 / std::sqrt(sigma_h2_sq);
            break;
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::domain_error("gain_factor: rho must be positive and finite, got " + std::to_string(rho));
    }
    return rho;
}

TimeSignal simulate_direct(const TimeSignal& x, const MultipathChannel& ch1, CfoValue eps1,
                           NoiseSpec noise, long N, RandomStream& rng) {
    return add_awgn(apply_cfo(apply_channel(x, ch1), eps1, N), noise, rng);
}

TimeSignal simulate_relay_branch(const TimeSignal& x, const BranchRealization& branch, long N,
                                 RandomStream& rng) {
    const long needed = branch.hop1.delay_spread() + branch.hop2.delay_spread();
    if (x.cp_length < needed) {
        throw IsiConditionError("ISI condition violated on relay path: N_g = " +
                                std::to_string(x.cp_length) + " < L_hop1 + L_hop2 = " +
                                std::to_string(needed));
    }
    TimeSignal y = apply_cfo(apply_channel(apply_channel(x, branch.hop1), branch.hop2), branch.eps, N);
    for (cplx& v : y.samples) v *= branch.rho;

    TimeSignal silence{ComplexVector(y.samples.size()), y.cp_length, y.cp_present};
    const TimeSignal relay_noise = add_awgn(silence, branch.noise_relay, rng);
    for (std::size_t n = 0; n < y.samples.size(); ++n) y.samples[n] += branch.rho * relay_noise.samples[n];
    return add_awgn(y, branch.noise_dest, rng);
}

BranchGenie direct_genie(const MultipathChannel& ch1, CfoValue eps1, long N) {
    BranchGenie g = frequency_response(ch1, N);
    const cplx c0 = cfo_spectrum(eps1, 0, N);
    for (cplx& v : g) v *= c0;
    return g;
}

BranchGenie relay_genie(const BranchRealization& branch, long N) {
    const ComplexVector h2 = frequency_response(branch.hop1, N);
    const ComplexVector h3 = frequency_response(branch.hop2, N);
    const cplx c0 = branch.rho * cfo_spectrum(branch.eps, 0, N);
    BranchGenie g(h2.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = c0 * h2[k] * h3[k];
    return g;
}

EgcResult receive_egc(std::span<const TimeSignal> received, std::span<const BranchGenie> genies,
                      const OfdmParams& params) {
    if (received.size() != genies.size() || received.empty()) {
        throw std::invalid_argument("receive_egc: need one genie per received branch (got " +
                                    std::to_string(received.size()) + " signals, " +
                                    std::to_string(genies.size()) + " genies)");
    }
    const auto n = static_cast<std::size_t>(params.N);
    EgcResult out{ComplexVector(n), {}};
    std::vector<bool> flagged(n, false);

    for (std::size_t b = 0; b < received.size(); ++b) {
        if (genies[b].size() != n) throw std::invalid_argument("receive_egc: genie length != N");
        const ComplexVector spectrum = dft(remove_cp(received[b], params).samples);
        for (std::size_t k = 0; k < n; ++k) {
            const double mag = std::abs(genies[b][k]);
            if (mag == 0.0) {
                flagged[k] = true;
                out.metric[k] += spectrum[k];
            } else {
                out.metric[k] += spectrum[k] * (std::conj(genies[b][k]) / mag);
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (flagged[k]) out.flagged_bins.push_back(static_cast<long>(k));
    }
    return out;
}

TrialOutcome decompose_trial(std::span<const cplx> metric, std::span<const BranchGenie> genies,
                             const FreqSymbol& symbol) {
    const std::size_t n = metric.size();
    if (symbol.data.size() != n) throw std::invalid_argument("decompose_trial: symbol length != metric length");
    TrialOutcome out;
    out.subcarrier_count = static_cast<long>(n);
    for (std::size_t k = 0; k < n; ++k) {
        double gain = 0.0;
        for (const BranchGenie& g : genies) gain += std::abs(g[k]);
        const cplx s = gain * symbol.data[k];
        out.signal_power += std::norm(s);
        out.residual_power += std::norm(metric[k] - s);
    }
    return out;
}

void ChainSpec::validate() const {
    ofdm.validate();
    direct.profile.validate();
    if (ofdm.cp_length < direct.profile.delay_spread()) {
        throw IsiConditionError("ISI condition violated on direct link: N_g = " +
                                std::to_string(ofdm.cp_length) + " < L1 = " +
                                std::to_string(direct.profile.delay_spread()));
    }
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const RelayBranchSpec& b = branches[i];
        b.hop1.validate();
        b.hop2.validate();
        const long needed = b.hop1.delay_spread() + b.hop2.delay_spread();
        if (ofdm.cp_length < needed) {
            throw IsiConditionError("ISI condition violated on relay branch " + std::to_string(i + 1) +
                                    ": N_g = " + std::to_string(ofdm.cp_length) +
                                    " < L2 + L3 = " + std::to_string(needed));
        }
        if (!(b.rho > 0.0)) throw std::invalid_argument("relay gain rho must be positive");
    }
}

TrialOutcome run_trial(const ChainSpec& spec, RandomStream& rng) {
    const OfdmParams& p = spec.ofdm;
    const FreqSymbol symbol = draw_symbols(p, rng);
    const TimeSignal x = modulate(symbol, p);

    const MultipathChannel h1 = draw_channel(spec.direct.profile, rng);
    std::vector<BranchRealization> branches;
    branches.reserve(spec.branches.size());
    for (const RelayBranchSpec& b : spec.branches) {
        MultipathChannel hop1 = draw_channel(b.hop1, rng);
        MultipathChannel hop2 = draw_channel(b.hop2, rng);
        branches.push_back({std::move(hop1), std::move(hop2), b.eps, b.rho, b.noise_relay, b.noise_dest});
    }

    std::vector<TimeSignal> received;
    std::vector<BranchGenie> genies;
    received.reserve(branches.size() + 1);
    genies.reserve(branches.size() + 1);
    received.push_back(simulate_direct(x, h1, spec.direct.eps, spec.direct.noise, p.N, rng));
    genies.push_back(direct_genie(h1, spec.direct.eps, p.N));
    for (const BranchRealization& b : branches) {
        received.push_back(simulate_relay_branch(x, b, p.N, rng));
        genies.push_back(relay_genie(b, p.N));
    }

    const EgcResult r = receive_egc(received, genies, p);
    return decompose_trial(r.metric, genies, symbol);
}

}  // namespace afcfo
