#include "afcfo/ofdm_phy.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace afcfo {

std::string_view to_string(Constellation c) noexcept {
    switch (c) {
        case Constellation::QPSK: return "qpsk";
        case Constellation::QAM16: return "qam16";
    }
    return "?";
}

Constellation parse_constellation(std::string_view name) {
    if (name == "qpsk" || name == "QPSK") return Constellation::QPSK;
    if (name == "qam16" || name == "QAM16") return Constellation::QAM16;
    throw std::invalid_argument("unknown constellation '" + std::string(name) +
                                "' (expected qpsk or qam16)");
}

void OfdmParams::validate() const {
    if (N < 8) throw std::invalid_argument("ofdm.N must be >= 8, got " + std::to_string(N));
    if (cp_length < 0 || cp_length >= N) {
        throw std::invalid_argument("ofdm.cp_length must lie in [0, N), got " +
                                    std::to_string(cp_length));
    }
    if (!(sigma_x_sq > 0.0) || !std::isfinite(sigma_x_sq)) {
        throw std::invalid_argument("ofdm.sigma_x_sq must be positive, got " +
                                    std::to_string(sigma_x_sq));
    }
}

FreqSymbol draw_symbols(const OfdmParams& params, RandomStream& rng) {
    params.validate();
    FreqSymbol sym;
    sym.data.resize(static_cast<std::size_t>(params.N));
    const double amplitude = std::sqrt(params.sigma_x_sq);

    if (params.constellation == Constellation::QPSK) {
        std::uniform_int_distribution<int> pick(0, 3);
        const double a = amplitude / std::sqrt(2.0);
        for (cplx& x : sym.data) {
            const int s = pick(rng);
            x = cplx((s & 1) ? -a : a, (s & 2) ? -a : a);
        }
    } else {
        // Levels {-3,-1,1,3}; mean |x|^2 of the unscaled grid is 10.
        static constexpr std::array<double, 4> levels{-3.0, -1.0, 1.0, 3.0};
        std::uniform_int_distribution<int> pick(0, 15);
        const double a = amplitude / std::sqrt(10.0);
        for (cplx& x : sym.data) {
            const int s = pick(rng);
            x = cplx(a * levels[static_cast<std::size_t>(s & 3)],
                     a * levels[static_cast<std::size_t>(s >> 2)]);
        }
    }
    return sym;
}

TimeSignal modulate(const FreqSymbol& sym, const OfdmParams& params) {
    params.validate();
    if (static_cast<long>(sym.data.size()) != params.N) {
        throw std::invalid_argument("modulate: symbol length " + std::to_string(sym.data.size()) +
                                    " != N = " + std::to_string(params.N));
    }
    const ComplexVector body = idft(sym.data);
    const auto n = static_cast<std::size_t>(params.N);
    const auto g = static_cast<std::size_t>(params.cp_length);

    TimeSignal out;
    out.cp_length = params.cp_length;
    out.cp_present = true;
    out.samples.reserve(n + g);
    out.samples.insert(out.samples.end(), body.end() - static_cast<std::ptrdiff_t>(g), body.end());
    out.samples.insert(out.samples.end(), body.begin(), body.end());
    return out;
}

TimeSignal remove_cp(const TimeSignal& sig, const OfdmParams& params) {
    if (!sig.cp_present) throw std::invalid_argument("remove_cp: signal has no cyclic prefix");
    const auto expected = static_cast<std::size_t>(params.N + params.cp_length);
    if (sig.samples.size() != expected || sig.cp_length != params.cp_length) {
        throw std::invalid_argument("remove_cp: expected " + std::to_string(expected) +
                                    " samples with N_g = " + std::to_string(params.cp_length) +
                                    ", got " + std::to_string(sig.samples.size()) + " with N_g = " +
                                    std::to_string(sig.cp_length));
    }
    TimeSignal out;
    out.samples.assign(sig.samples.begin() + params.cp_length, sig.samples.end());
    out.cp_length = 0;
    out.cp_present = false;
    return out;
}

}  // namespace afcfo
