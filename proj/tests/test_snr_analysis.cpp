#include <doctest.h>

#include <cmath>
#include <random>

#include "afcfo/snr_analysis.hpp"
#include "oracles.hpp"

using namespace afcfo;

namespace {

LinkStats at(double e1, double e2, LinkStats s = {}) {
    s.eps1 = CfoValue(e1);
    s.eps2 = CfoValue(e2);
    return s;
}

LinkStats random_stats(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> power(0.1, 5.0);
    std::uniform_real_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> offset(-0.45, 0.45);
    std::uniform_real_distribution<double> gain(0.2, 3.0);
    LinkStats s;
    s.sigma_h1_sq = power(rng);
    s.sigma_h2_sq = power(rng);
    s.sigma_h3_sq = power(rng);
    s.sigma_x_sq = power(rng);
    s.sigma_z1_sq = noise(rng);
    s.sigma_z2_sq = noise(rng);
    s.sigma_z3_sq = noise(rng) + 0.01;
    s.eps1 = CfoValue(offset(rng));
    s.eps2 = CfoValue(offset(rng));
    s.rho = gain(rng);
    return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("analytical_snr: zero offsets") {
    const SnrBreakdown s = analytical_snr(at(0.0, 0.0));
    CHECK(s.numerator == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(s.denominator == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(s.snr_linear == doctest::Approx(5.0 / 0.3).epsilon(1e-14));
    CHECK(s.snr_db == doctest::Approx(12.218487496163563).epsilon(1e-12));
    CHECK_FALSE(s.infinite);
}

TEST_CASE("analytical_snr: direct-link offset at the band edge") {
    // mpmath, 40 digits.
    const SnrBreakdown s = analytical_snr(at(0.5, 0.0));
    CHECK(s.numerator == doctest::Approx(4.405366124583193).epsilon(1e-13));
    CHECK(s.denominator == doctest::Approx(0.8946338754168069).epsilon(1e-13));
    CHECK(s.snr_linear == doctest::Approx(4.924211172453924).epsilon(1e-13));
}

TEST_CASE("analytical_snr: matches the defining expression") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100; ++i) {
        const LinkStats s = random_stats(rng);
        const double f1 = std::abs(oracle::cfo_coefficient(s.eps1.value(), 0, s.N));
        const double f2 = std::abs(oracle::cfo_coefficient(s.eps2.value(), 0, s.N));
        const double d = s.sigma_h1_sq * s.sigma_x_sq;
        const double r = s.rho * s.rho * s.sigma_h2_sq * s.sigma_h3_sq * s.sigma_x_sq;
        const double A = f1 * f1 * d + f2 * f2 * r;
        const double B = (1 - f1 * f1) * d + (1 - f2 * f2) * r + s.sigma_z1_sq + s.rho * s.rho * s.sigma_z2_sq + s.sigma_z3_sq;
        const SnrBreakdown got = analytical_snr(s);
        CHECK(rel(got.numerator, A) < 1e-12);
        CHECK(rel(got.denominator, B) < 1e-10);
    }
}

TEST_CASE("analytical_snr: noiseless zero offset is the infinite sentinel") {
    LinkStats s = at(0.0, 0.0);
    s.sigma_z1_sq = s.sigma_z2_sq = s.sigma_z3_sq = 0.0;
    const SnrBreakdown b = analytical_snr(s);
    CHECK(b.infinite);
    CHECK(std::isinf(b.snr_db));
    CHECK(b.snr_db > 0.0);
    CHECK(b.numerator == 5.0);

    // Any offset makes the ICI a noise floor again.
    CHECK_FALSE(analytical_snr(at(0.1, 0.0, s)).infinite);
}

TEST_CASE("analytical_snr: unique maximum at the origin on a 21x21 grid") {
    for (const LinkStats base : {LinkStats{}, [] { std::mt19937_64 r(5); return random_stats(r); }()}) {
        const double peak = analytical_snr(at(0.0, 0.0, base)).snr_linear;
        for (int i = -10; i <= 10; ++i) {
            for (int j = -10; j <= 10; ++j) {
                if (i == 0 && j == 0) continue;
                CHECK(analytical_snr(at(0.045 * i, 0.045 * j, base)).snr_linear < peak);
            }
        }
    }
}

TEST_CASE("analytical_snr: strictly decreasing on [0, 0.45] along each axis") {
    for (double fixed : {0.0, 0.2, -0.35}) {
        double prev1 = INFINITY, prev2 = INFINITY;
        for (int i = 0; i <= 45; ++i) {
            const double e = 0.01 * i;
            const double s1 = analytical_snr(at(e, fixed)).snr_linear;
            const double s2 = analytical_snr(at(fixed, e)).snr_linear;
            CHECK(s1 < prev1);
            CHECK(s2 < prev2);
            prev1 = s1;
            prev2 = s2;
        }
    }
}

TEST_CASE("analytical_snr: even in each offset, exactly") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const LinkStats s = random_stats(rng);
        const double e1 = s.eps1.value(), e2 = s.eps2.value();
        const double v = analytical_snr(s).snr_linear;
        CHECK(analytical_snr(at(-e1, e2, s)).snr_linear == v);
        CHECK(analytical_snr(at(e1, -e2, s)).snr_linear == v);
        CHECK(analytical_snr(at(-e1, -e2, s)).snr_linear == v);
    }
}

TEST_CASE("analytical_snr_upa: substitution and zero-offset reduction") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        LinkStats s = random_stats(rng);
        const SnrBreakdown upa = analytical_snr_upa(s);
        s.rho = 1.0 / std::sqrt(s.sigma_h2_sq);
        const SnrBreakdown full = analytical_snr(s);
        CHECK(rel(upa.snr_linear, full.snr_linear) < 1e-12);
        CHECK(rel(upa.numerator, full.numerator) < 1e-12);
        CHECK(rel(upa.denominator, full.denominator) < 1e-12);

        const LinkStats z = at(0.0, 0.0, s);
        const double num = (z.sigma_h1_sq + z.sigma_h3_sq) * z.sigma_x_sq;
        CHECK(rel(analytical_snr_upa(z).snr_linear,
                  num / (z.sigma_z1_sq + z.sigma_z2_sq / z.sigma_h2_sq + z.sigma_z3_sq)) < 1e-12);
        CHECK(rel(analytical_snr_upa(z, UpaForm::as_printed).snr_linear,
                  num / (z.sigma_z1_sq + z.sigma_h2_sq * z.sigma_z2_sq + z.sigma_z3_sq)) < 1e-12);
    }

    // Relay term is four times the direct term at equal offsets.
    const LinkStats s = at(0.3, 0.3);
    LinkStats direct_only = s;
    direct_only.sigma_h3_sq = 0.0;
    const double a_direct = analytical_snr_upa(direct_only).numerator;
    CHECK(analytical_snr_upa(s).numerator - a_direct == doctest::Approx(4.0 * a_direct).epsilon(1e-14));

    // The two forms coincide for a unit source-relay channel.
    CHECK(analytical_snr_upa(s, UpaForm::as_printed).snr_linear == analytical_snr_upa(s).snr_linear);

    LinkStats bad = s;
    bad.sigma_h2_sq = 0.0;
    CHECK_THROWS_AS((void)analytical_snr_upa(bad), std::domain_error);
}

TEST_CASE("sensitivities: zero at the origin for both variants") {
    for (auto v : {SensitivityVariant::chain_rule, SensitivityVariant::paper_literal}) {
        const SensitivityPair p = sensitivities(at(0.0, 0.0), v);
        CHECK(p.lambda1 == 0.0);
        CHECK(p.lambda2 == 0.0);
        CHECK(p.variant == v);
    }
}

TEST_CASE("sensitivities: chain rule matches finite differences") {
    const auto check = [](const LinkStats& s) {
        const double e1 = s.eps1.value(), e2 = s.eps2.value();
        const double d1 = oracle::central_difference([&](double x) { return analytical_snr(at(x, e2, s)).snr_linear; }, e1);
        const double d2 = oracle::central_difference([&](double x) { return analytical_snr(at(e1, x, s)).snr_linear; }, e2);
        const SensitivityPair p = sensitivities(s, SensitivityVariant::chain_rule);
        CHECK(rel(p.lambda1, std::abs(d1)) < 1e-6);
        CHECK(rel(p.lambda2, std::abs(d2)) < 1e-6);
    };
    check(at(0.2, 0.1));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> mag(0.05, 0.4);
    std::bernoulli_distribution sign(0.5);
    for (int i = 0; i < 50; ++i) {
        LinkStats s = random_stats(rng);
        s = at(sign(rng) ? mag(rng) : -mag(rng), sign(rng) ? mag(rng) : -mag(rng), s);
        check(s);
    }
}

TEST_CASE("sensitivities: literal variant drops the f_N factor") {
    const LinkStats s = at(0.25, -0.15);
    const SensitivityPair exact = sensitivities(s, SensitivityVariant::chain_rule);
    const SensitivityPair literal = sensitivities(s, SensitivityVariant::paper_literal);
    CHECK(literal.lambda1 * dirichlet_gain(s.eps1, s.N) == doctest::Approx(exact.lambda1).epsilon(1e-14));
    CHECK(literal.lambda2 * dirichlet_gain(s.eps2, s.N) == doctest::Approx(exact.lambda2).epsilon(1e-14));
    CHECK(literal.lambda1 > exact.lambda1);
}

TEST_CASE("sensitivities_upa: relay offset weighs four times the direct one") {
    for (double e : {0.05, 0.2, 0.37, -0.3}) {
        for (auto v : {SensitivityVariant::chain_rule, SensitivityVariant::paper_literal}) {
            const SensitivityPair p = sensitivities_upa(at(e, e), v);
            CHECK(p.lambda1 > 0.0);
            CHECK(p.lambda2 / p.lambda1 == 4.0);
        }
    }
    // And it agrees with the general form under the substitution.
    LinkStats s = at(0.2, 0.3);
    s.sigma_h2_sq = 2.0;
    const SensitivityPair upa = sensitivities_upa(s, SensitivityVariant::chain_rule);
    s.rho = 1.0 / std::sqrt(2.0);
    const SensitivityPair full = sensitivities(s, SensitivityVariant::chain_rule);
    CHECK(rel(upa.lambda1, full.lambda1) < 1e-12);
    CHECK(rel(upa.lambda2, full.lambda2) < 1e-12);
}

TEST_CASE("degradation from offsets grows as noise shrinks") {
    double previous_gap = -INFINITY;
    for (double t : {1.0, 0.1, 0.01}) {
        LinkStats s;
        s.sigma_z1_sq = s.sigma_z2_sq = s.sigma_z3_sq = 0.1 * t;
        const double gap = analytical_snr(at(0.0, 0.0, s)).snr_db - analytical_snr(at(0.2, 0.2, s)).snr_db;
        CHECK(gap >= previous_gap);
        previous_gap = gap;
    }
}

TEST_CASE("multi_relay_snr: empty branch list is point to point") {
    TopologyStats t;
    t.direct = {2.0, CfoValue(0.3), 0.2};
    t.sigma_x_sq = 1.5;
    const double f = std::abs(oracle::cfo_coefficient(0.3, 0, 64));
    const double expected = f * f * 2.0 * 1.5 / ((1 - f * f) * 2.0 * 1.5 + 0.2);
    CHECK(rel(multi_relay_snr(t).snr_linear, expected) < 1e-12);
}

TEST_CASE("multi_relay_snr: one branch reduces to the single-relay form") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
        const LinkStats s = random_stats(rng);
        const SnrBreakdown a = analytical_snr(s);
        const SnrBreakdown b = multi_relay_snr(to_topology(s));
        CHECK(rel(b.snr_linear, a.snr_linear) < 1e-12);
        CHECK(rel(b.numerator, a.numerator) < 1e-12);
        CHECK(rel(b.denominator, a.denominator) < 1e-12);
    }
    // Mapping check: the relay-input noise is the amplified one.
    LinkStats s = at(0.0, 0.0);
    s.rho = 3.0;
    s.sigma_z1_sq = 0.0;
    s.sigma_z3_sq = 0.0;
    s.sigma_z2_sq = 0.1;
    CHECK(multi_relay_snr(to_topology(s)).denominator == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("multi_relay_snr: two identical branches double the branch terms") {
    TopologyStats one;
    one.direct = {1.0, CfoValue(0.1), 0.1};
    one.branches = {BranchStats{1.0, 4.0, CfoValue(0.2), 0.7, 0.1, 0.1}};
    TopologyStats two = one;
    two.branches.push_back(one.branches[0]);
    TopologyStats none = one;
    none.branches.clear();

    const SnrBreakdown s0 = multi_relay_snr(none), s1 = multi_relay_snr(one), s2 = multi_relay_snr(two);
    CHECK(s2.numerator - s0.numerator == doctest::Approx(2.0 * (s1.numerator - s0.numerator)).epsilon(1e-14));
    CHECK(s2.denominator - s0.denominator == doctest::Approx(2.0 * (s1.denominator - s0.denominator)).epsilon(1e-14));
}
