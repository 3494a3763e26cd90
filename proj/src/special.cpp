#include "treemoments/special.hpp"

#include "treemoments/errors.hpp"

#include <cmath>

namespace treemoments {

namespace {

struct EmPlan {
    unsigned shift;   // terms summed directly
    unsigned tail;    // Bernoulli correction terms
};

unsigned working_bits() {
    return static_cast<unsigned>(BigFloat::default_precision() / 0.30102999566398120) + 1;
}

EmPlan plan_for(double s, double a) {
    // Keep (M + a) comfortably above |s| and the precision so that the
    // asymptotic Bernoulli terms shrink geometrically.
    const double bits = working_bits();
    double target = std::max({bits / 3.0, std::fabs(s) + 10.0, 20.0});
    unsigned shift = a >= target ? 0u : static_cast<unsigned>(std::ceil(target - a));
    return {shift, 60u};
}

BigFloat hurwitz_em(const BigFloat& s, const BigFloat& a, const EmPlan& plan) {
    using boost::multiprecision::pow;
    BigFloat sum = 0;
    for (unsigned n = 0; n < plan.shift; ++n) sum += pow(a + n, -s);
    const BigFloat x = a + plan.shift;
    const BigFloat xs = pow(x, -s);
    sum += x * xs / (s - 1) + xs / 2;
    const BigFloat eps = boost::multiprecision::ldexp(BigFloat(1), -static_cast<int>(working_bits()));
    BigFloat rising = s;  // s (s+1) ... (s+2j-2)
    BigFloat xpow = xs / x;  // x^{-s-2j+1}
    BigFloat fact = 2;       // (2j)!
    const BigFloat x2 = x * x;
    for (unsigned j = 1; j <= plan.tail; ++j) {
        BigFloat term = BigFloat(bernoulli_number(2 * j)) / fact * rising * xpow;
        sum += term;
        if (abs(term) <= eps * abs(sum)) break;
        rising *= (s + (2 * j - 1)) * (s + 2 * j);
        xpow /= x2;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum;
}

BigFloat central_difference(unsigned order, const BigFloat& s, const BigFloat& a, const BigFloat& h,
                            const EmPlan& plan) {
    // sum_i (-1)^i C(m,i) f(s + (m/2 - i) h) / h^m
    BigFloat acc = 0;
    for (unsigned i = 0; i <= order; ++i) {
        BigFloat offset = (BigFloat(order) / 2 - i) * h;
        BigFloat f = hurwitz_em(s + offset, a, plan);
        BigFloat c = BigFloat(binomial_big(order, i));
        if (i % 2) c = -c;
        acc += c * f;
    }
    return acc / boost::multiprecision::pow(h, order);
}

}  // namespace

BigFloat hurwitz_zeta(const BigFloat& s, const BigFloat& a) {
    if (s == 1) throw PoleError("zeta pole at s = 1");
    if (!(a > 0)) throw DomainError("hurwitz zeta needs a > 0");
    return hurwitz_em(s, a, plan_for(s.convert_to<double>(), a.convert_to<double>()));
}

BigFloat hurwitz_zeta_derivative(unsigned order, const BigFloat& s, const BigFloat& a, double step) {
    if (order > 4) throw CapError("zeta derivative order above 4");
    if (order == 0) return hurwitz_zeta(s, a);
    if (abs(s - 1) < 1e-3) throw PoleError("zeta derivative too close to s = 1");
    if (!(a > 0)) throw DomainError("hurwitz zeta needs a > 0");
    const EmPlan plan = plan_for(s.convert_to<double>() + 1, a.convert_to<double>());
    BigFloat h = step;
    BigFloat d1 = central_difference(order, s, a, h, plan);
    BigFloat d2 = central_difference(order, s, a, h / 2, plan);
    // error expansion in even powers of h
    return (4 * d2 - d1) / 3;
}

double zeta_derivative(unsigned order, double s) {
    PrecisionScope scope(kDefaultPrecisionBits);
    return hurwitz_zeta_derivative(order, BigFloat(s), BigFloat(1)).convert_to<double>();
}

BigFloat gamma_reflect(const BigFloat& x) {
    using boost::multiprecision::floor;
    if (x <= 0 && x == floor(x)) throw PoleError("gamma pole at nonpositive integer");
    if (x >= BigFloat(1) / 2) return boost::multiprecision::tgamma(x);
    const BigFloat pi = pi_big();
    return pi / (boost::multiprecision::sin(pi * x) * boost::multiprecision::tgamma(1 - x));
}

std::vector<Rational> catalan_weight_expansion(unsigned terms) {
    // log Gamma(n+a) - log Gamma(n+b) = (a-b) log n + sum_k d_k n^{-k}
    const Rational a(1, 2), b(2);
    std::vector<Rational> d(terms + 1, Rational(0));
    for (unsigned k = 1; k <= terms; ++k) {
        Rational diff = bernoulli_polynomial(k + 1, a) - bernoulli_polynomial(k + 1, b);
        d[k] = diff / Rational(k * (k + 1));
        if (k % 2 == 0) d[k] = -d[k];
    }
    std::vector<Rational> c(terms + 1, Rational(0));
    c[0] = 1;
    for (unsigned m = 1; m <= terms; ++m) {
        Rational s = 0;
        for (unsigned k = 1; k <= m; ++k) s += Rational(k) * d[k] * c[m - k];
        c[m] = s / Rational(m);
    }
    return c;
}

}  // namespace treemoments
