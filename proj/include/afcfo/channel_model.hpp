#pragma once

#include <stdexcept>
#include <vector>

#include "afcfo/ofdm_phy.hpp"
#include "afcfo/rng.hpp"
#include "afcfo/signal_core.hpp"

namespace afcfo {

/// Raised when a channel's delay spread would leak past the cyclic prefix.
class IsiConditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Linear power per tap; the sum is the link's average channel power.
struct PowerDelayProfile {
    std::vector<double> tap_powers;

    [[nodiscard]] long delay_spread() const noexcept { return static_cast<long>(tap_powers.size()); }
    [[nodiscard]] double total_power() const noexcept;
    void validate() const;

    static PowerDelayProfile flat(double total_power);
    static PowerDelayProfile uniform(long taps, double total_power);
    /// Tap l gets weight exp(-l / decay), normalized to total_power.
    static PowerDelayProfile exponential(long taps, double total_power, double decay);
};

struct MultipathChannel {
    ComplexVector taps;

    [[nodiscard]] long delay_spread() const noexcept { return static_cast<long>(taps.size()); }
};

/// Per-sample variance of circularly-symmetric complex white noise.
struct NoiseSpec {
    double sigma_sq = 0.0;
};

/// Block-fading realization: independent CN(0, tap_powers[l]) taps.
[[nodiscard]] MultipathChannel draw_channel(const PowerDelayProfile& pdp, RandomStream& rng);

/// H[k], the N-point transform of the zero-padded taps.
[[nodiscard]] ComplexVector frequency_response(const MultipathChannel& ch, long N);

/// Linear convolution of a CP-extended signal with the taps, truncated to the
/// input length. Requires N_g >= L.
[[nodiscard]] TimeSignal apply_channel(const TimeSignal& sig, const MultipathChannel& ch);

/// Multiplies sample n by exp(j2 pi eps n' / N) with n' counted from the start
/// of the useful body (n' = n - N_g when the prefix is present).
[[nodiscard]] TimeSignal apply_cfo(const TimeSignal& sig, CfoValue eps, long N);

[[nodiscard]] TimeSignal add_awgn(const TimeSignal& sig, NoiseSpec noise, RandomStream& rng);

}  // namespace afcfo
