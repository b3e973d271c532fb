#pragma once

#include <string_view>

#include "afcfo/rng.hpp"
#include "afcfo/signal_core.hpp"

namespace afcfo {

enum class Constellation { QPSK, QAM16 };

[[nodiscard]] std::string_view to_string(Constellation c) noexcept;
[[nodiscard]] Constellation parse_constellation(std::string_view name);

struct OfdmParams {
    long N = 64;           ///< subcarriers
    long cp_length = 16;   ///< N_g, cyclic prefix samples
    Constellation constellation = Constellation::QPSK;
    double sigma_x_sq = 1.0;  ///< average data-symbol power E|X[k]|^2

    /// Throws std::invalid_argument on N < 8, N_g outside [0, N) or a
    /// non-positive symbol power.
    void validate() const;
};

/// The N data symbols X[k] of one OFDM symbol.
struct FreqSymbol {
    ComplexVector data;
};

/// Time-domain samples. With the prefix present the first cp_length samples
/// are the cyclic prefix and the useful body starts at index cp_length.
struct TimeSignal {
    ComplexVector samples;
    long cp_length = 0;
    bool cp_present = false;
};

[[nodiscard]] FreqSymbol draw_symbols(const OfdmParams& params, RandomStream& rng);

/// x[n] = (1/N) sum_k X[k] exp(j2 pi k (n - N_g) / N), 0 <= n < N + N_g.
[[nodiscard]] TimeSignal modulate(const FreqSymbol& sym, const OfdmParams& params);

[[nodiscard]] TimeSignal remove_cp(const TimeSignal& sig, const OfdmParams& params);

}  // namespace afcfo
