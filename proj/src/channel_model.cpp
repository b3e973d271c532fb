#include "afcfo/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace afcfo {

double PowerDelayProfile::total_power() const noexcept {
    return std::accumulate(tap_powers.begin(), tap_powers.end(), 0.0);
}

void PowerDelayProfile::validate() const {
    if (tap_powers.empty()) throw std::invalid_argument("power delay profile needs at least one tap");
    for (double p : tap_powers) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("tap power must be finite and non-negative, got " +
                                        std::to_string(p));
        }
    }
}

PowerDelayProfile PowerDelayProfile::flat(double total_power) { return {{total_power}}; }

PowerDelayProfile PowerDelayProfile::uniform(long taps, double total_power) {
    if (taps < 1) throw std::invalid_argument("uniform profile needs taps >= 1");
    return {std::vector<double>(static_cast<std::size_t>(taps),
                                total_power / static_cast<double>(taps))};
}

PowerDelayProfile PowerDelayProfile::exponential(long taps, double total_power, double decay) {
    if (taps < 1) throw std::invalid_argument("exponential profile needs taps >= 1");
    if (!(decay > 0.0)) throw std::invalid_argument("exponential profile needs decay > 0");
    std::vector<double> w(static_cast<std::size_t>(taps));
    for (std::size_t l = 0; l < w.size(); ++l) w[l] = std::exp(-static_cast<double>(l) / decay);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v *= total_power / sum;
    return {std::move(w)};
}

MultipathChannel draw_channel(const PowerDelayProfile& pdp, RandomStream& rng) {
    pdp.validate();
    MultipathChannel ch;
    ch.taps.reserve(pdp.tap_powers.size());
    for (double p : pdp.tap_powers) ch.taps.push_back(complex_gaussian(rng, p));
    return ch;
}

ComplexVector frequency_response(const MultipathChannel& ch, long N) {
    require_finite(ch.taps, "frequency_response");
    if (ch.delay_spread() > N) {
        throw std::invalid_argument("frequency_response: delay spread " +
                                    std::to_string(ch.delay_spread()) + " exceeds N = " +
                                    std::to_string(N));
    }
    ComplexVector padded(static_cast<std::size_t>(N));
    std::copy(ch.taps.begin(), ch.taps.end(), padded.begin());
    return dft(padded);
}

TimeSignal apply_channel(const TimeSignal& sig, const MultipathChannel& ch) {
    require_finite(ch.taps, "apply_channel");
    if (!sig.cp_present) throw std::invalid_argument("apply_channel: signal must carry its cyclic prefix");
    if (sig.cp_length < ch.delay_spread()) {
        throw IsiConditionError("ISI condition violated: cyclic prefix N_g = " +
                                std::to_string(sig.cp_length) + " < delay spread L = " +
                                std::to_string(ch.delay_spread()));
    }
    TimeSignal out{ComplexVector(sig.samples.size()), sig.cp_length, true};
    for (std::size_t n = 0; n < sig.samples.size(); ++n) {
        cplx acc{0.0, 0.0};
        const std::size_t taps = std::min(ch.taps.size(), n + 1);
        for (std::size_t l = 0; l < taps; ++l) acc += ch.taps[l] * sig.samples[n - l];
        out.samples[n] = acc;
    }
    return out;
}

TimeSignal apply_cfo(const TimeSignal& sig, CfoValue eps, long N) {
    TimeSignal out = sig;
    if (eps.value() == 0.0) return out;
    const long offset = sig.cp_present ? sig.cp_length : 0;
    const double step = 2.0 * std::numbers::pi * eps.value() / static_cast<double>(N);
    for (std::size_t n = 0; n < out.samples.size(); ++n) {
        const double angle = step * static_cast<double>(static_cast<long>(n) - offset);
        out.samples[n] *= cplx(std::cos(angle), std::sin(angle));
    }
    return out;
}

TimeSignal add_awgn(const TimeSignal& sig, NoiseSpec noise, RandomStream& rng) {
    if (!(noise.sigma_sq >= 0.0)) throw std::invalid_argument("noise variance must be non-negative");
    TimeSignal out = sig;
    if (noise.sigma_sq == 0.0) return out;
    for (cplx& v : out.samples) v += complex_gaussian(rng, noise.sigma_sq);
    return out;
}

}  // namespace afcfo
