#include "doctest.h"
#include "oracles.hpp"

#include "treemoments/errors.hpp"
#include "treemoments/exact_moments.hpp"
#include "treemoments/limit_law.hpp"
#include "treemoments/series_constants.hpp"

#include <cmath>

using namespace treemoments;

namespace {

double d(const BigFloat& x) { return x.convert_to<double>(); }

std::vector<Rational> omega_oracle(unsigned K) {
    std::vector<Rational> w(K + 1, Rational(0));
    w[1] = Rational(1, 2);
    for (unsigned k = 2; k <= K; ++k) {
        Rational s = Rational(k * (3 * k) - 4 * k) * w[k - 1];
        for (unsigned j = 1; j < k; ++j) s += Rational(binomial_big(k, j)) * w[j] * w[k - j];
        w[k] = s / 2;
    }
    return w;
}

}  // namespace

TEST_CASE("Airy case: C_k(1) = 2 Omega_k") {
    auto c = ck_sequence_exact(1, 20);
    auto omega = airy_omega(20);
    auto oracle_omega = omega_oracle(20);
    for (unsigned k = 1; k <= 20; ++k) {
        CHECK(c[k] == 2 * omega[k]);
        CHECK(omega[k] == oracle_omega[k]);
    }
}

TEST_CASE("Airy moments match the Brownian excursion area") {
    // E B^k for the excursion area B = Y / (2 sqrt 2): sqrt(pi/8), 5/12, 15 sqrt(2 pi)/128, 221/1008
    auto law = limit_law(1.0, 4);
    const double pi = std::acos(-1.0);
    const double s = 2 * std::sqrt(2.0);
    const double area[] = {0, std::sqrt(pi / 8), 5.0 / 12, 15 * std::sqrt(2 * pi) / 128, 221.0 / 1008};
    for (unsigned k = 1; k <= 4; ++k) CHECK(d(law.moments[k]) / std::pow(s, k) == doctest::Approx(area[k]).epsilon(1e-14));
    CHECK(std::abs(d(law.moments[2]) - 10.0 / 3) < 1e-12);

    auto exact = limit_moments_exact(1, 4);
    CHECK(exact[2].coefficient == Rational(10, 3));
    CHECK(exact[2].sqrt_pi_power == 0);
    CHECK(exact[1].coefficient == 1);
    CHECK(exact[1].sqrt_pi_power == 1);
    CHECK(exact[3].coefficient == Rational(15, 4));
}

TEST_CASE("Wiener case: 2^{2l-1} C_l(2) = a_{0,l}") {
    auto c = ck_sequence_exact(2, 15);
    auto a = wiener_a0(15);
    Rational p = 2;
    for (unsigned l = 1; l <= 15; ++l) {
        CHECK(p * c[l] == a[l]);
        p *= 4;
    }
    CHECK(a[1] == 1);
    CHECK(a[2] == 49);
}

TEST_CASE("float and exact C_k agree for integer alpha") {
    for (unsigned alpha : {1u, 2u, 3u}) {
        auto e = ck_sequence_exact(alpha, 10);
        auto f = ck_sequence(alpha, 10);
        for (unsigned k = 1; k <= 10; ++k)
            CHECK(oracle::rel_err(d(f[k]), e[k].convert_to<double>()) < 1e-15);
    }
}

TEST_CASE("sigma^2 is the variance of the limit law") {
    for (double alpha : {0.25, 0.75, 1.0, 2.0}) {
        auto law = limit_law(alpha, 2);
        const BigFloat v = law.moments[2] - law.moments[1] * law.moments[1];
        CHECK(oracle::rel_err(d(sigma_sq(alpha)), d(v)) < 1e-12);
    }
    CHECK(d(sigma_sq(1.0)) == doctest::Approx(10.0 / 3 - std::acos(-1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(sigma_sq(0.5), PoleError);
    CHECK_THROWS_AS(ck_sequence(0.5, 3), PoleError);
}

TEST_CASE("sigma^2 and the third central moment are positive on the figure grid") {
    for (int i = 1; i <= 30; ++i) {
        const double alpha = 0.1 * i;
        if (i == 5) continue;
        auto law = limit_law(alpha, 3);
        CHECK(law.sigma2 > 0);
        CHECK(law.central[3] > 0);
    }
}

TEST_CASE("sigma^2 at the boundary alpha = 1/2") {
    const double pi = std::acos(-1.0);
    CHECK(d(sigma_sq_half()) == doctest::Approx(8 * std::log(2.0) / pi - pi / 2).epsilon(1e-15));
    const double lo = d(sigma_sq(0.5 - 1e-4)), hi = d(sigma_sq(0.5 + 1e-4));
    CHECK(std::abs((lo + hi) / 2 - d(sigma_sq_half())) < 1e-6);
}

TEST_CASE("sigma^2 peak") {
    auto peak = sigma_sq_max();
    CHECK(peak.alpha == doctest::Approx(0.682607).epsilon(1e-3));
    CHECK(peak.value == doctest::Approx(0.198946).epsilon(1e-3));
}

TEST_CASE("moment growth stays bounded") {
    for (double alpha : {0.25, 1.0, 2.0}) {
        auto g = moment_growth(alpha, 30);
        for (unsigned k = 2; k <= 30; ++k) CHECK(g[k] <= g[1] + 1e-12);
    }
}

TEST_CASE("shape functional limit") {
    auto s = shape_limit_moments(8);
    const double sigma2 = 8 * (1 - std::log(2.0));
    CHECK(d(s.sigma2) == doctest::Approx(2.454823).epsilon(1e-6));
    CHECK(d(s.c2k0[1]) == doctest::Approx(sigma2).epsilon(1e-15));
    CHECK(d(s.moments[4] / (s.sigma2 * s.sigma2)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(d(s.moments[3]) == 0.0);
    CHECK(s.max_relative_mismatch < 1e-30);
}

TEST_CASE("extreme alpha") {
    auto big = scaled_limit_checks(1e4, 6);
    for (unsigned k = 1; k <= 6; ++k) CHECK(big.deviation[k] < 0.02);
    CHECK(big.value[2] == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
    CHECK(big.scaled_variance == doctest::Approx(std::sqrt(2.0) - 1).epsilon(0.05));

    auto small = scaled_limit_checks(1e-3, 6);
    for (unsigned k = 2; k <= 6; k += 2) CHECK(small.deviation[k] < 0.03);
    CHECK(small.scaled_variance == doctest::Approx(4 * (1 - std::log(2.0))).epsilon(0.01));
    auto smaller = scaled_limit_checks(1e-4, 6);
    for (unsigned k = 1; k <= 6; ++k) CHECK(smaller.deviation[k] < small.deviation[k]);
}

TEST_CASE("mean expansions against the exact means") {
    auto exp1 = mean_asymptotics(TollSpec::power(1));
    auto a = mean_profile<BigFloat>(TollSpec::power(1), 2048);
    std::vector<double> err;
    for (std::size_t n : {256u, 512u, 1024u, 2048u})
        err.push_back(std::abs(mean_estimate(exp1, n) - d(a[n])) / (double(n) * std::log(double(n))));
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] <= err[0] * 1.05);

    auto lexp = mean_asymptotics(TollSpec::log());
    CHECK_FALSE(lexp.resolved());
    auto c0 = c0_constant(TollSpec::log());
    auto lres = lexp.resolve("C0", c0.value);
    auto la = mean_profile<BigFloat>(TollSpec::log(), 2048);
    double worst = 0;
    for (std::size_t n = 32; n <= 2048; ++n) {
        const double resid = d(la[n]) - c0.value * double(n + 1) + 2 * std::sqrt(std::acos(-1.0) * double(n));
        worst = std::max(worst, std::abs(resid));
    }
    CHECK(worst < 2);
    CHECK(std::abs(mean_estimate(lres, 2048) - d(la[2048])) < 1.0);

    CHECK_THROWS_AS(mean_asymptotics(TollSpec::path_length()), ArgumentError);
}
