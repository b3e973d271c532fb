#include "afcfo/signal_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace afcfo {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this |pi * d / N| the ratio sin(pi d) / (N sin(pi d / N)) is replaced
// by its limit.
constexpr double kSingularityThreshold = 1e-9;

ComplexVector direct_transform(std::span<const cplx> x, double sign) {
    const std::size_t n = x.size();
    ComplexVector out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t t = 0; t < n; ++t) {
            // Reduce k*t mod n before scaling so the angle stays small.
            const double angle = sign * 2.0 * kPi * static_cast<double>((k * t) % n) /
                                 static_cast<double>(n);
            acc += x[t] * cplx(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

ComplexVector radix2_transform(std::span<const cplx> x, double sign) {
    const std::size_t n = x.size();
    ComplexVector a(x.begin(), x.end());

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    ComplexVector twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        twiddle[k] = cplx(std::cos(angle), std::sin(angle));
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t m = 0; m < half; ++m) {
                const cplx u = a[start + m];
                const cplx v = a[start + m + half] * twiddle[m * stride];
                a[start + m] = u + v;
                a[start + m + half] = u - v;
            }
        }
    }
    return a;
}

ComplexVector transform(std::span<const cplx> x, double sign, const char* name) {
    if (x.empty()) throw std::invalid_argument(std::string(name) + ": empty input");
    return is_power_of_two(x.size()) ? radix2_transform(x, sign) : direct_transform(x, sign);
}

void require_subcarriers(long N, long minimum, const char* what) {
    if (N < minimum) {
        throw std::invalid_argument(std::string(what) + ": N must be >= " + std::to_string(minimum) +
                                    ", got " + std::to_string(N));
    }
}

}  // namespace

CfoValue::CfoValue(double epsilon) : epsilon_(epsilon) {
    if (!std::isfinite(epsilon) || std::abs(epsilon) > 0.5) {
        throw std::invalid_argument("fractional CFO must satisfy |epsilon| <= 0.5, got " +
                                    std::to_string(epsilon));
    }
}

void require_finite(std::span<const cplx> x, const char* what) {
    if (x.empty()) throw std::invalid_argument(std::string(what) + ": empty vector");
    for (const cplx& v : x) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + ": non-finite sample");
        }
    }
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

ComplexVector dft(std::span<const cplx> x) { return transform(x, -1.0, "dft"); }

ComplexVector idft(std::span<const cplx> X) {
    ComplexVector out = transform(X, +1.0, "idft");
    const double scale = 1.0 / static_cast<double>(X.size());
    for (cplx& v : out) v *= scale;
    return out;
}

ComplexVector circular_convolve(std::span<const cplx> a, std::span<const cplx> b, long N) {
    if (N <= 0) throw std::invalid_argument("circular_convolve: N must be positive");
    const auto n = static_cast<std::size_t>(N);
    ComplexVector pa(n), pb(n);
    std::copy_n(a.begin(), std::min(a.size(), n), pa.begin());
    std::copy_n(b.begin(), std::min(b.size(), n), pb.begin());

    ComplexVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) acc += pa[r] * pb[(i + n - r) % n];
        out[i] = acc;
    }
    return out;
}

double dirichlet_gain(CfoValue epsilon, long N) {
    require_subcarriers(N, 2, "dirichlet_gain");
    const double a = kPi * epsilon.value();
    const double nd = static_cast<double>(N);
    if (std::abs(a / nd) < kSingularityThreshold) return 1.0;
    return std::sin(a) / (nd * std::sin(a / nd));
}

double dirichlet_gain_derivative(CfoValue epsilon, long N) {
    require_subcarriers(N, 2, "dirichlet_gain_derivative");
    const double a = kPi * epsilon.value();
    const double nd = static_cast<double>(N);
    if (std::abs(a / nd) < kSingularityThreshold) return 0.0;
    const double s = std::sin(a / nd);
    const double numer = std::cos(a) * s - std::sin(a) * std::cos(a / nd) / nd;
    return kPi * numer / (nd * s * s);
}

cplx cfo_spectrum(CfoValue epsilon, long k, long N) {
    require_subcarriers(N, 1, "cfo_spectrum");
    if (k < 0 || k >= N) {
        throw std::invalid_argument("cfo_spectrum: bin " + std::to_string(k) + " outside [0, " +
                                    std::to_string(N) + ")");
    }
    const double nd = static_cast<double>(N);
    const double d = epsilon.value() - static_cast<double>(k);
    const cplx phase = std::polar(1.0, kPi * d * (1.0 - 1.0 / nd));

    const double wraps = std::round(d / nd);
    const double residual = d - wraps * nd;
    if (std::abs(kPi * residual / nd) < kSingularityThreshold) {
        // d is a multiple of N: the ratio tends to (-1)^(m (N - 1)).
        const auto m = static_cast<long long>(wraps);
        const bool odd = ((m * (N - 1)) % 2) != 0;
        return (odd ? -1.0 : 1.0) * phase;
    }
    if (d == std::round(d)) return {0.0, 0.0};  // integer offset off the wrap points: exact null
    const double magnitude = std::sin(kPi * d) / (nd * std::sin(kPi * d / nd));
    return magnitude * phase;
}

ComplexVector cfo_spectrum_all(CfoValue epsilon, long N) {
    ComplexVector out(static_cast<std::size_t>(N));
    for (long k = 0; k < N; ++k) out[static_cast<std::size_t>(k)] = cfo_spectrum(epsilon, k, N);
    return out;
}

}  // namespace afcfo
