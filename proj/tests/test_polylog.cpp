#include "doctest.h"

#include "treemoments/errors.hpp"
#include "treemoments/polylog.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>

using namespace treemoments;

TEST_CASE("li_eval closed forms") {
    CHECK(li_eval({1, 0}, 0.9).value == doctest::Approx(-std::log(0.1)).epsilon(1e-14));
    CHECK(li_eval({-1, 0}, 0.5).value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(li_eval({0, 0}, 0.3).value == doctest::Approx(0.3 / 0.7).epsilon(1e-14));
    // Li_{3/2}(z) = zeta(3/2) + Gamma(-1/2) (1-z)^{1/2} + O(1-z)
    for (double e : {1e-4, 1e-6}) {
        const double gap = 2.612375348685488 - li_eval({1.5, 0}, 1 - e).value;
        CHECK(gap == doctest::Approx(2 * std::sqrt(std::acos(-1.0) * e)).epsilon(0.01));
    }
    CHECK(li_eval({1.5, 0}, 0.5, 200).value == doctest::Approx(li_eval({1.5, 0}, 0.5).value).epsilon(1e-14));
    CHECK_THROWS_AS(li_eval({1, 0}, 1.0), DomainError);
}

TEST_CASE("zeta(3/2) by direct summation") {
    // the generalized polylog at z -> 1 is zeta(3/2); compare partial sums with boost
    double s = 0;
    for (int n = 1; n <= 4000000; ++n) s += std::pow(double(n), -1.5);
    s += 2 / std::sqrt(4000000.5);
    CHECK(s == doctest::Approx(boost::math::zeta(1.5)).epsilon(1e-10));
    CHECK(s == doctest::Approx(2.612375).epsilon(1e-6));
}

TEST_CASE("residuals of singular expansions stay bounded") {
    for (PolylogId id : {PolylogId{-1, 0}, PolylogId{0.5, 0}, PolylogId{0.5, 1}}) {
        auto rep = expansion_residual_check(id, li_expansion(id), default_residual_grid());
        INFO("alpha=" << id.alpha << " r=" << id.r << " slope=" << rep.tail_slope);
        CHECK(rep.passed);
    }
}

TEST_CASE("a missing lead term is detected") {
    SingularExpansion zero = li_expansion({-1, 0});
    zero.terms.clear();
    zero.has_constant = false;
    auto rep = expansion_residual_check({-1, 0}, zero, default_residual_grid());
    CHECK_FALSE(rep.passed);
}

TEST_CASE("reconstruction identity") {
    for (double alpha : {-1.0, -0.5, 0.5})
        for (unsigned r = 0; r <= 2; ++r) {
            auto rep = reconstruction_check(alpha, r, default_residual_grid());
            INFO("alpha=" << alpha << " r=" << r << " slope=" << rep.tail_slope);
            CHECK(rep.passed);
        }
}

TEST_CASE("lambda_0 mu_0 = 1") {
    for (double alpha : {-1.5, -1.0, -0.5, 0.25, 0.5, 0.75})
        for (unsigned r = 0; r <= 2; ++r)
            for (unsigned s = 0; s <= 2; ++s)
                CHECK(li_lambda(alpha, r)[0] * omz_to_li(alpha, s).mu[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(omz_to_li(0.25, 0).mu[0] == doctest::Approx(1 / std::tgamma(0.75)).epsilon(1e-14));
}

TEST_CASE("Hadamard index arithmetic") {
    PolylogId a{0.5, 1}, b{-1, 0}, c{0.25, 2};
    CHECK(hadamard_li(a, b) == hadamard_li(b, a));
    CHECK(hadamard_li(hadamard_li(a, b), c) == hadamard_li(a, hadamard_li(b, c)));
}

TEST_CASE("Gamma derivatives against finite differences") {
    const double h = 1e-5;
    for (double x : {0.5, 1.0, 1.5, 2.5}) {
        CHECK(gamma_derivative(0, x) == doctest::Approx(std::tgamma(x)).epsilon(1e-14));
        for (unsigned k = 1; k <= 3; ++k) {
            const double fd = (gamma_derivative(k - 1, x + h) - gamma_derivative(k - 1, x - h)) / (2 * h);
            INFO("x=" << x << " k=" << k);
            CHECK(std::abs(gamma_derivative(k, x) - fd) <= 1e-8 * std::max(1.0, std::abs(fd)));
        }
    }
    CHECK(gamma_derivative(1, 1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-14));
}

TEST_CASE("coefficient transfer") {
    for (std::size_t n : {0u, 1u, 5u, 40u}) {
        CHECK(transfer_coefficient(-1, 0, n) == doctest::Approx(1.0));
        CHECK(transfer_coefficient(-2, 0, n) == doctest::Approx(double(n + 1)));
        // (1-z)^{-1} L has coefficients H_n
        double h = 0;
        for (std::size_t i = 1; i <= n; ++i) h += 1.0 / double(i);
        CHECK(transfer_coefficient(-1, 1, n) == doctest::Approx(h).epsilon(1e-13));
    }
    CHECK(transfer_coefficient(0.5, 0, 1) == doctest::Approx(-0.5));
}

TEST_CASE("expansion normal form") {
    SingularExpansion e;
    e.terms = {{-0.5, 0, 1, ""}, {-1, 0, 2, ""}, {-0.5, 1, 3, ""}};
    e.remainder_exponent = 0;
    e.normalize();
    CHECK(e.terms[0].exponent == -1);
    CHECK(e.terms[1].log_power == 1);
    CHECK(e.terms[2].log_power == 0);
    SingularExpansion bad;
    bad.terms = {{0.5, 0, 1, ""}};
    bad.remainder_exponent = 0;
    CHECK_THROWS_AS(bad.normalize(), ArgumentError);
    SingularExpansion named;
    named.terms = {{-0.5, 0, 1, "C0"}};
    CHECK_FALSE(named.resolved());
    CHECK(named.resolve("C0", 2).resolved());
}
