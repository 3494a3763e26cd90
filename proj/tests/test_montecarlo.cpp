#include "doctest.h"

#include "treemoments/errors.hpp"
#include "treemoments/exact_moments.hpp"
#include "treemoments/montecarlo.hpp"

#include <cmath>
#include <sstream>

using namespace treemoments;

namespace {

ExperimentSpec spec_for(TollSpec toll, std::size_t n, std::size_t samples, std::uint64_t seed) {
    ExperimentSpec s;
    s.toll = toll;
    s.n = n;
    s.samples = samples;
    s.seed = seed;
    return s;
}

}  // namespace

TEST_CASE("degenerate size") {
    auto rep = run_experiment(spec_for(TollSpec::power(1), 2, 500, 3));
    CHECK(rep.raw[1].value == 3.0);
    CHECK(rep.raw[2].value == 9.0);
    CHECK(rep.raw[2].value - rep.raw[1].value * rep.raw[1].value == 0.0);
    CHECK(rep.raw[1].std_error == 0.0);
}

TEST_CASE("results do not depend on the worker count") {
    auto s = spec_for(TollSpec::power(1), 60, 5000, 11);
    s.block_size = 256;
    auto one = sample_values(s);
    s.workers = 3;
    auto three = sample_values(s);
    CHECK(one == three);
    auto r3 = run_experiment(s);
    s.workers = 1;
    auto r1 = run_experiment(s);
    r1.spec.workers = r3.spec.workers;
    std::ostringstream a, b;
    write_json(a, r3);
    write_json(b, r1);
    CHECK(a.str() == b.str());
}

TEST_CASE("calibration against exact moments") {
    const std::size_t n = 8;
    auto exact = raw_moments<Rational>(TollSpec::power(1), n, 4);
    double err_small = 0, err_large = 0;
    {
        auto rep = run_experiment(spec_for(TollSpec::power(1), n, 1000, 5));
        err_small = std::abs(rep.raw[2].value - exact.at(n, 2).convert_to<double>()) / rep.raw[2].std_error;
        CHECK(rep.exact_raw.has_value());
    }
    auto big = run_experiment(spec_for(TollSpec::power(1), n, 100000, 5));
    err_large = std::abs(big.raw[2].value - exact.at(n, 2).convert_to<double>());
    // SE shrinks tenfold; the error tracks it
    auto small = run_experiment(spec_for(TollSpec::power(1), n, 1000, 5));
    CHECK(big.raw[2].std_error == doctest::Approx(small.raw[2].std_error / 10).epsilon(0.15));
    CHECK(err_large <= 4 * big.raw[2].std_error);
    CHECK(err_small <= 4);

    unsigned bracketed = 0, total = 0;
    for (std::uint64_t seed = 100; seed < 200; ++seed) {
        auto rep = run_experiment(spec_for(TollSpec::power(1), n, 2000, seed));
        for (unsigned k = 1; k <= 4; ++k) {
            const double e = exact.at(n, k).convert_to<double>();
            bracketed += std::abs(rep.raw[k].value - e) <= 4 * rep.raw[k].std_error;
            ++total;
        }
    }
    CHECK(bracketed >= 0.99 * total);
}

TEST_CASE("mean scale for the Airy case") {
    auto rep = run_experiment(spec_for(TollSpec::power(1), 2000, 20000, 42));
    REQUIRE(rep.limit_scaled.has_value());
    CHECK(rep.scaled[1].value == doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(0.05));
}

TEST_CASE("shape functional skewness follows the exact distribution") {
    auto s = spec_for(TollSpec::log(), 1024, 20000, 8);
    s.K = 3;
    auto rep = run_experiment(s);
    REQUIRE(rep.exact_standardized.has_value());
    const double exact_skew = (*rep.exact_standardized)[3];
    CHECK(std::abs(rep.standardized[3].value - exact_skew) <= 4 * rep.standardized[3].std_error);
    s.n = 4096;
    s.samples = 10;
    const double later = (*run_experiment(s).exact_standardized)[3];
    CHECK(later < exact_skew);
    CHECK(later > 0);
}

TEST_CASE("targets degrade past the DP cap") {
    auto s = spec_for(TollSpec::power(1), 300, 200, 1);
    s.dp_limit = 100;
    auto rep = run_experiment(s);
    CHECK_FALSE(rep.exact_raw.has_value());
    CHECK(rep.limit_scaled.has_value());
    CHECK(rep.spec.standardization == Standardization::Exact);
    CHECK_FALSE(rep.exact_standardization);
}

TEST_CASE("histogram") {
    auto rep = run_experiment(spec_for(TollSpec::power(1), 100, 3000, 2));
    std::size_t total = rep.below_range + rep.above_range;
    for (auto c : rep.histogram_counts) total += c;
    CHECK(total == 3000);
    std::ostringstream os;
    write_histogram_csv(os, rep);
    CHECK(os.str().rfind("bin,count\n", 0) == 0);
}

TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(run_experiment(spec_for(TollSpec::power(1), 0, 10, 1)), ArgumentError);
    CHECK_THROWS_AS(run_experiment(spec_for(TollSpec::power(1), 10, 0, 1)), ArgumentError);
}
