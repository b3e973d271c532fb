#include <doctest.h>

#include <cmath>
#include <random>

#include "afcfo/signal_core.hpp"
#include "oracles.hpp"

using namespace afcfo;

TEST_CASE("dft: impulse and complex exponential") {
    ComplexVector impulse(16);
    impulse[0] = 1.0;
    for (const cplx& v : dft(impulse)) CHECK(std::abs(v - cplx(1.0, 0.0)) == doctest::Approx(0.0));

    const long N = 64;
    const long m = 5;
    ComplexVector tone(N);
    for (long n = 0; n < N; ++n) tone[n] = std::polar(1.0, 2.0 * oracle::kPi * m * n / N);
    const ComplexVector spec = dft(tone);
    for (long k = 0; k < N; ++k) {
        const cplx expected = k == m ? cplx(N, 0.0) : cplx(0.0, 0.0);
        CHECK(std::abs(spec[k] - expected) < 1e-12);
    }
}

TEST_CASE("dft: matches direct summation, power-of-two and arbitrary lengths") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {64u, 8u, 12u, 45u}) {
        const auto x = oracle::random_vector(n, rng);
        const auto ref = oracle::direct_dft(x);
        CHECK(oracle::max_abs_diff(dft(x), ref) / oracle::max_abs(ref) < 1e-10);
    }
}

TEST_CASE("dft/idft: empty input is rejected") {
    CHECK_THROWS_AS((void)dft(ComplexVector{}), std::invalid_argument);
    CHECK_THROWS_AS((void)idft(ComplexVector{}), std::invalid_argument);
}

TEST_CASE("idft: inverse pair, all-ones spectrum and Parseval") {
    ComplexVector ones(32, cplx(1.0, 0.0));
    const auto delta = idft(ones);
    CHECK(std::abs(delta[0] - cplx(1.0, 0.0)) < 1e-15);
    for (std::size_t n = 1; n < delta.size(); ++n) CHECK(std::abs(delta[n]) < 1e-15);

    std::mt19937_64 rng(11);
    for (std::size_t n : {8u, 64u, 256u, 24u}) {
        const auto x = oracle::random_vector(n, rng);
        CHECK(oracle::max_abs_diff(idft(dft(x)), x) < 1e-12);

        const auto X = dft(x);
        double time_energy = 0.0, freq_energy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            time_energy += std::norm(x[i]);
            freq_energy += std::norm(X[i]);
        }
        CHECK(std::abs(time_energy - freq_energy / static_cast<double>(n)) < 1e-12 * time_energy);
    }
}

TEST_CASE("circular_convolve: identity, symmetry, convolution theorem") {
    std::mt19937_64 rng(3);
    const auto a = oracle::random_vector(16, rng);
    const auto b = oracle::random_vector(16, rng);

    ComplexVector delta(16);
    delta[0] = 1.0;
    CHECK(oracle::max_abs_diff(circular_convolve(a, delta, 16), a) == 0.0);
    CHECK(oracle::max_abs_diff(circular_convolve(a, b, 16), circular_convolve(b, a, 16)) < 1e-12);

    const auto lhs = dft(circular_convolve(a, b, 16));
    const auto A = dft(a);
    const auto B = dft(b);
    ComplexVector rhs(16);
    for (std::size_t k = 0; k < 16; ++k) rhs[k] = A[k] * B[k];
    CHECK(oracle::max_abs_diff(lhs, rhs) / oracle::max_abs(rhs) < 1e-10);

    // Short inputs are zero padded.
    const ComplexVector taps{cplx(0.0), cplx(1.0)};
    const auto shifted = circular_convolve(a, taps, 16);
    for (std::size_t n = 0; n < 16; ++n) CHECK(shifted[n] == a[(n + 15) % 16]);

    CHECK_THROWS_AS((void)circular_convolve(a, b, 0), std::invalid_argument);
}

TEST_CASE("CfoValue rejects offsets beyond half a subcarrier") {
    CHECK_NOTHROW(CfoValue(0.49));
    CHECK_NOTHROW(CfoValue(-0.5));
    CHECK_THROWS_AS(CfoValue(0.6), std::invalid_argument);
    CHECK_THROWS_AS(CfoValue(std::nan("")), std::invalid_argument);
}

TEST_CASE("dirichlet_gain: limit, symmetry, frozen value, monotone decrease") {
    for (long N : {2L, 16L, 64L, 1024L}) CHECK(dirichlet_gain(CfoValue(0.0), N) == 1.0);
    for (double e : {0.1, 0.25, 0.49}) {
        CHECK(dirichlet_gain(CfoValue(-e), 64) == dirichlet_gain(CfoValue(e), 64));
    }
    // 40-digit evaluation of sin(pi/2) / (64 sin(pi/128)).
    CHECK(dirichlet_gain(CfoValue(0.5), 64) == doctest::Approx(0.6366836927259823).epsilon(1e-14));

    double previous = 1.0;
    for (int i = 1; i <= 100; ++i) {
        const double f = dirichlet_gain(CfoValue(0.005 * i), 64);
        CHECK(f < previous);
        CHECK(f > 0.0);
        previous = f;
    }
}

TEST_CASE("dirichlet_gain_derivative: origin, sign, finite differences") {
    CHECK(dirichlet_gain_derivative(CfoValue(0.0), 64) == 0.0);
    for (double e : {0.1, 0.3}) {
        CHECK(dirichlet_gain_derivative(CfoValue(e), 64) < 0.0);
        CHECK(dirichlet_gain_derivative(CfoValue(-e), 64) > 0.0);
    }
    // mpmath derivative at 0.25: -0.77267675050773625...
    CHECK(dirichlet_gain_derivative(CfoValue(0.25), 64) == doctest::Approx(-0.7726767505077363).epsilon(1e-13));

    for (long N : {8L, 64L, 256L}) {
        for (double e : {-0.4, -0.2, 0.05, 0.25, 0.45}) {
            const double fd = oracle::central_difference(
                [N](double x) { return dirichlet_gain(CfoValue(x), N); }, e);
            const double analytic = dirichlet_gain_derivative(CfoValue(e), N);
            CHECK(std::abs(analytic - fd) < 1e-6 * std::abs(analytic));
        }
    }
}

TEST_CASE("cfo_spectrum: zero offset is ICI free") {
    CHECK(cfo_spectrum(CfoValue(0.0), 0, 64) == cplx(1.0, 0.0));
    for (long k = 1; k < 64; ++k) CHECK(cfo_spectrum(CfoValue(0.0), k, 64) == cplx(0.0, 0.0));
    CHECK_THROWS_AS((void)cfo_spectrum(CfoValue(0.1), 64, 64), std::invalid_argument);
    CHECK_THROWS_AS((void)cfo_spectrum(CfoValue(0.1), -1, 64), std::invalid_argument);
}

TEST_CASE("cfo_spectrum: energy sums to one, magnitude at bin 0 is f_N") {
    for (double e : {0.05, 0.2, 0.45}) {
        double energy = 0.0;
        for (long r = 0; r < 64; ++r) energy += std::norm(cfo_spectrum(CfoValue(e), r, 64));
        CHECK(std::abs(energy - 1.0) < 1e-12);
        CHECK(std::abs(cfo_spectrum(CfoValue(e), 0, 64)) == doctest::Approx(dirichlet_gain(CfoValue(e), 64)));
    }
}

TEST_CASE("cfo_spectrum: equals the transform of the offset phasor") {
    const long N = 64;
    for (double e : {0.3, -0.17, 0.5}) {
        ComplexVector c(N);
        for (long n = 0; n < N; ++n) c[n] = std::polar(1.0 / N, 2.0 * oracle::kPi * e * n / N);
        const auto ref = oracle::direct_dft(c);
        const auto got = cfo_spectrum_all(CfoValue(e), N);
        CHECK(oracle::max_abs_diff(got, ref) < 1e-10);
    }
}
