#include "afcfo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "afcfo/rng.hpp"

namespace afcfo {

EmpiricalSnr aggregate_trials(std::span<const TrialOutcome> outcomes, std::uint64_t master_seed) {
    EmpiricalSnr out;
    out.trials = static_cast<long>(outcomes.size());
    out.master_seed = master_seed;
    if (outcomes.empty()) {
        out.snr_linear = out.snr_db = out.stderr_db = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    double signal = 0.0;
    double residual = 0.0;
    for (const TrialOutcome& t : outcomes) {
        signal += t.signal_power;
        residual += t.residual_power;
    }
    if (residual <= kResidualFloor * signal) {
        out.infinite = true;
        out.snr_linear = out.snr_db = std::numeric_limits<double>::infinity();
        out.stderr_db = 0.0;
        return out;
    }
    out.snr_linear = signal / residual;
    out.snr_db = to_db(out.snr_linear);

    const auto n = static_cast<double>(outcomes.size());
    if (outcomes.size() < 2) {
        out.stderr_db = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    // Delta method on log(mean_s / mean_r).
    const double ms = signal / n;
    const double mr = residual / n;
    double vs = 0.0, vr = 0.0, cov = 0.0;
    for (const TrialOutcome& t : outcomes) {
        const double ds = t.signal_power - ms;
        const double dr = t.residual_power - mr;
        vs += ds * ds;
        vr += dr * dr;
        cov += ds * dr;
    }
    vs /= n - 1.0;
    vr /= n - 1.0;
    cov /= n - 1.0;
    const double var_log = (vs / (ms * ms) + vr / (mr * mr) - 2.0 * cov / (ms * mr)) / n;
    out.stderr_db = 10.0 / std::log(10.0) * std::sqrt(std::max(var_log, 0.0));
    return out;
}

std::vector<TrialOutcome> run_trials(const ChainSpec& spec, long trials, std::uint64_t master_seed,
                                     unsigned workers) {
    spec.validate();
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(std::max(trials, 0L)));
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(outcomes.size(), 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < outcomes.size(); i = next++) {
                RandomStream rng = trial_stream(master_seed, i);
                outcomes[i] = run_trial(spec, rng);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = outcomes.size();
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return outcomes;
}

EmpiricalSnr estimate_snr(const ChainSpec& spec, long trials, std::uint64_t master_seed, unsigned workers) {
    const auto outcomes = run_trials(spec, trials, master_seed, workers);
    return aggregate_trials(outcomes, master_seed);
}

double branch_gain(const ExperimentConfig& cfg, std::size_t index, double noise_scale) {
    const RelayConfig& r = cfg.relays.at(index);
    return gain_factor(cfg.gain, r.hop1.total_power(), r.noise_relay * noise_scale);
}

LinkStats link_stats(const ExperimentConfig& cfg, EpsAssignment eps, double noise_scale) {
    const RelayConfig& r = cfg.relays.front();
    LinkStats s;
    s.sigma_h1_sq = cfg.direct.total_power();
    s.sigma_h2_sq = r.hop1.total_power();
    s.sigma_h3_sq = r.hop2.total_power();
    s.sigma_x_sq = cfg.ofdm.sigma_x_sq;
    s.sigma_z1_sq = cfg.noise_direct * noise_scale;
    s.sigma_z2_sq = r.noise_relay * noise_scale;
    s.sigma_z3_sq = r.noise_dest * noise_scale;
    s.eps1 = CfoValue(eps.eps1);
    s.eps2 = CfoValue(eps.eps2);
    s.rho = branch_gain(cfg, 0, noise_scale);
    s.N = cfg.ofdm.N;
    return s;
}

TopologyStats topology_stats(const ExperimentConfig& cfg, EpsAssignment eps, double noise_scale) {
    TopologyStats t;
    t.direct = {cfg.direct.total_power(), CfoValue(eps.eps1), cfg.noise_direct * noise_scale};
    for (std::size_t i = 0; i < cfg.relays.size(); ++i) {
        const RelayConfig& r = cfg.relays[i];
        t.branches.push_back({r.hop1.total_power(), r.hop2.total_power(), CfoValue(eps.eps2),
                              branch_gain(cfg, i, noise_scale), r.noise_dest * noise_scale,
                              r.noise_relay * noise_scale});
    }
    t.sigma_x_sq = cfg.ofdm.sigma_x_sq;
    t.N = cfg.ofdm.N;
    return t;
}

ChainSpec chain_spec(const ExperimentConfig& cfg, EpsAssignment eps, double noise_scale) {
    const double per_sample = noise_scale / static_cast<double>(cfg.ofdm.N);
    ChainSpec spec;
    spec.ofdm = cfg.ofdm;
    spec.direct = {cfg.direct, CfoValue(eps.eps1), NoiseSpec{cfg.noise_direct * per_sample}};
    for (std::size_t i = 0; i < cfg.relays.size(); ++i) {
        const RelayConfig& r = cfg.relays[i];
        spec.branches.push_back({r.hop1, r.hop2, CfoValue(eps.eps2), branch_gain(cfg, i, noise_scale),
                                 NoiseSpec{r.noise_relay * per_sample}, NoiseSpec{r.noise_dest * per_sample}});
    }
    return spec;
}

PointResult run_point(const ExperimentConfig& cfg, EpsAssignment eps, double noise_scale) {
    PointResult out;
    out.eps = eps;
    out.noise_scale = noise_scale;
    out.master_seed = cfg.master_seed;

    if (cfg.multi_relay) {
        out.analytical = multi_relay_snr(topology_stats(cfg, eps, noise_scale));
    } else {
        const LinkStats stats = link_stats(cfg, eps, noise_scale);
        out.analytical = analytical_snr(stats);
        out.sensitivity = sensitivities(stats, cfg.sensitivity);
    }
    if (cfg.mode != RunMode::analytical) {
        out.empirical = estimate_snr(chain_spec(cfg, eps, noise_scale), cfg.trials, cfg.master_seed, cfg.workers);
    }
    if (cfg.mode == RunMode::simulate) {
        out.analytical.reset();
        out.sensitivity.reset();
    }
    return out;
}

std::vector<std::pair<EpsAssignment, double>> sweep_points(const ExperimentConfig& cfg) {
    std::vector<std::pair<EpsAssignment, double>> points;
    for (double scale : cfg.noise_scales) {
        for (SweepAxis axis : cfg.sweep.axes) {
            for (double g : cfg.sweep.grid) {
                EpsAssignment e;
                switch (axis) {
                    case SweepAxis::eps1: e = {g, cfg.sweep.fixed_eps2}; break;
                    case SweepAxis::eps2: e = {cfg.sweep.fixed_eps1, g}; break;
                    case SweepAxis::both_equal: e = {g, g}; break;
                }
                points.emplace_back(e, scale);
            }
        }
    }
    return points;
}

std::vector<PointResult> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<PointResult> rows;
    for (const auto& [eps, scale] : sweep_points(cfg)) rows.push_back(run_point(cfg, eps, scale));
    return rows;
}

std::vector<PointResult> run_surface(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentConfig analytic = cfg;
    analytic.mode = RunMode::analytical;
    std::vector<PointResult> rows;
    for (double scale : cfg.noise_scales) {
        for (double e1 : cfg.sweep.grid) {
            for (double e2 : cfg.sweep.grid) rows.push_back(run_point(analytic, {e1, e2}, scale));
        }
    }
    return rows;
}

}  // namespace afcfo
