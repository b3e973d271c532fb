#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace afcfo {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Normalized fractional carrier frequency offset, in units of the subcarrier
/// spacing. Construction enforces |epsilon| <= 0.5 (the endpoint is allowed for
/// analysis; configured sweeps stay strictly inside).
class CfoValue {
public:
    constexpr CfoValue() = default;
    explicit CfoValue(double epsilon);

    [[nodiscard]] constexpr double value() const noexcept { return epsilon_; }
    [[nodiscard]] CfoValue negated() const { return CfoValue(-epsilon_); }

    friend constexpr bool operator==(CfoValue, CfoValue) = default;

private:
    double epsilon_ = 0.0;
};

/// Throws std::invalid_argument if the vector is empty or holds NaN/Inf.
void require_finite(std::span<const cplx> x, const char* what);

[[nodiscard]] bool is_power_of_two(std::size_t n) noexcept;

/// Un-normalized forward transform, Y[k] = sum_n x[n] exp(-j2 pi k n / N).
/// Radix-2 for power-of-two lengths, direct summation otherwise.
[[nodiscard]] ComplexVector dft(std::span<const cplx> x);

/// Inverse transform with the 1/N factor.
[[nodiscard]] ComplexVector idft(std::span<const cplx> X);

/// Length-N cyclic convolution. Inputs shorter than N are zero padded, longer
/// ones truncated.
[[nodiscard]] ComplexVector circular_convolve(std::span<const cplx> a, std::span<const cplx> b,
                                              long N);

/// f_N(eps) = sin(pi eps) / (N sin(pi eps / N)), the magnitude of the
/// desired-subcarrier coefficient under an offset eps.
[[nodiscard]] double dirichlet_gain(CfoValue epsilon, long N);

/// d f_N / d eps, by analytic differentiation.
[[nodiscard]] double dirichlet_gain_derivative(CfoValue epsilon, long N);

/// C(eps, k): bin k of the transform of (1/N) exp(j2 pi eps n / N).
[[nodiscard]] cplx cfo_spectrum(CfoValue epsilon, long k, long N);

/// All N coefficients C(eps, 0..N-1).
[[nodiscard]] ComplexVector cfo_spectrum_all(CfoValue epsilon, long N);

}  // namespace afcfo
