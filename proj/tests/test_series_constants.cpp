#include "doctest.h"

#include "treemoments/errors.hpp"
#include "treemoments/series_constants.hpp"

#include <cmath>
#include <sstream>

using namespace treemoments;

namespace {

// int_a^inf x^s log^r x dx, s < -1
double tail_integral(double s, unsigned r, double a) {
    const double u = -(s + 1), la = std::log(a);
    double sum = 0, fall = 1;
    for (unsigned i = 0; i <= r; ++i) {
        sum += fall * std::pow(la, double(r - i)) / std::pow(u, double(i + 1));
        fall *= double(r - i);
    }
    return sum * std::pow(a, -u);
}

// sum_n n^p log^r n (w_n - [subtract] n^{-3/2}/sqrt pi), direct to 10^6 then a
// midpoint-integral tail over the asymptotic weight expansion
double series_oracle(double p, unsigned r, bool subtract) {
    const std::size_t N = 1000000;
    const long double isp = 1 / std::sqrt(std::acos(-1.0L));
    long double w = 1, s = 0, c = 0;
    for (std::size_t n = 1; n <= N; ++n) {
        w *= (2.0L * n - 1) / (2.0L * n + 2);
        const long double x = n;
        long double t = std::pow(x, (long double)p) * std::pow(std::log(x), (long double)r);
        long double term = t * w;
        if (subtract) term -= t * isp / (x * std::sqrt(x));
        const long double y = term - c, z = s + y;
        c = (z - s) - y;
        s = z;
    }
    const double a = N + 0.5;
    const double coef[] = {1.0, -9.0 / 8, 145.0 / 128};
    double tail = 0;
    for (unsigned j = subtract ? 1 : 0; j < 3; ++j) tail += coef[j] * tail_integral(p - 1.5 - j, r, a);
    return double(s) + tail * double(isp);
}

}  // namespace

TEST_CASE("constants agree with an independent summation") {
    CHECK(std::abs(c0_constant(TollSpec::log()).value - series_oracle(0, 1, false)) < 1e-10);
    CHECK(std::abs(c0_constant(TollSpec::power(0.25)).value - series_oracle(0.25, 0, false)) < 1e-10);
    CHECK(std::abs(d0_constant().value - series_oracle(0.5, 0, true)) < 1e-10);
    CHECK(std::abs(k_constant().value - series_oracle(0, 2, false)) < 1e-10);
}

TEST_CASE("accelerated cutoffs agree") {
    SeriesOptions lo, hi;
    lo.cutoff = 1000;
    hi.cutoff = 10000000;
    auto a = c0_constant(TollSpec::power(0.25), 1e-10, lo);
    auto b = c0_constant(TollSpec::power(0.25), 1e-10, hi);
    CHECK(std::abs(a.value - b.value) < 1e-8);
    CHECK(std::abs(a.value - b.value) <= a.bound + b.bound);
    auto k1 = k_constant(1e-10, lo);
    lo.cutoff = 8000;
    auto k2 = k_constant(1e-10, lo);
    CHECK(std::abs(k1.value - k2.value) <= k1.bound + k2.bound);
}

TEST_CASE("bound shrinks with more tail terms") {
    SeriesOptions opt;
    opt.cutoff = 1000;
    double prev = INFINITY;
    for (unsigned t = 0; t <= 3; ++t) {
        opt.tail_terms = t;
        auto c = d0_constant(1e-10, opt);
        CHECK(c.bound < prev);
        prev = c.bound;
    }
}

TEST_CASE("D1 from D0") {
    const double gamma = 0.57721566490153286;
    const double sp = std::sqrt(std::acos(-1.0));
    CHECK(d1_from_d0(0) == doctest::Approx((2 * std::log(2.0) + gamma) / sp).epsilon(1e-15));
    // gamma enters with coefficient 1/sqrt(pi)
    CHECK((d1_from_d0(1) - d1_from_d0(0)) == doctest::Approx(1.0).epsilon(1e-15));
    auto d1 = d1_constant(1e-8);
    CHECK(d1.bound <= 1e-8);
    CHECK(d1.value == doctest::Approx(d1_from_d0(d0_constant(1e-8).value)).epsilon(1e-15));
}

TEST_CASE("K is positive and reproducible") {
    auto k = k_constant();
    CHECK(k.value > 0);
    CHECK(k.bound <= 1e-10);
    auto again = k_constant();
    CHECK(again.value == k.value);
    CHECK(again.bound == k.bound);
}

TEST_CASE("C0 edge cases") {
    CHECK_THROWS_AS(c0_constant(TollSpec::power(0.5)), DivergenceError);
    CHECK_THROWS_AS(c0_constant(TollSpec::power(1)), DivergenceError);
    CHECK_THROWS_AS(c0_constant(TollSpec::path_length()), DivergenceError);
    // b = (1, 0, 0, ...): C0 = w_1 = 1/4
    auto c = c0_constant(TollSpec::custom({1}));
    CHECK(c.value == 0.25);
}

TEST_CASE("json export") {
    std::ostringstream os;
    write_json(os, c0_constant(TollSpec::log()));
    for (const char* key : {"\"name\"", "\"value\"", "\"bound\"", "\"cutoff\""}) CHECK(os.str().find(key) != std::string::npos);
}
