#include "treemoments/limit_law.hpp"

#include "treemoments/errors.hpp"
#include "treemoments/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace treemoments {

namespace {

using boost::multiprecision::exp;
using boost::multiprecision::lgamma;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;

void check_alpha(double alpha) {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
}

// Gamma(m + 1/2) / sqrt(pi) = (2m)! / (4^m m!)
Rational half_gamma_ratio(unsigned m) {
    BigInt num = 1, den = 1;
    for (unsigned i = m + 1; i <= 2 * m; ++i) num *= i;
    for (unsigned i = 0; i < m; ++i) den *= 4;
    return Rational(num, den);
}

BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

std::vector<Rational> ck_sequence_exact(unsigned alpha, unsigned K) {
    if (alpha < 1) throw DomainError("exact C_k needs integer alpha >= 1");
    auto binom = binomial_table(K);
    std::vector<Rational> C(K + 1, Rational(0));
    if (K == 0) return C;
    C[1] = half_gamma_ratio(alpha - 1);
    for (unsigned k = 2; k <= K; ++k) {
        Rational s = 0;
        for (unsigned j = 1; j < k; ++j) s += Rational(binom[k][j]) * C[j] * C[k - j];
        // Gamma(x + alpha) / Gamma(x) with x = (k-1) alpha + k/2 - 1
        Rational x = Rational((k - 1) * alpha) + Rational(k, 2) - 1;
        Rational ratio = 1;
        for (unsigned i = 0; i < alpha; ++i) ratio *= x + i;
        C[k] = s / 4 + Rational(k) * ratio * C[k - 1];
    }
    return C;
}

std::vector<ExactMoment> limit_moments_exact(unsigned alpha, unsigned K) {
    auto C = ck_sequence_exact(alpha, K);
    std::vector<ExactMoment> out(K + 1);
    out[0] = {Rational(1), 0};
    for (unsigned k = 1; k <= K; ++k) {
        if (k % 2) {
            // Gamma(k alpha + (k-1)/2) with an integer argument
            unsigned y = k * alpha + (k - 1) / 2;
            out[k] = {C[k] / Rational(factorial(y - 1)), 1};
        } else {
            unsigned m = k * alpha + k / 2 - 1;
            out[k] = {C[k] / half_gamma_ratio(m), 0};
        }
    }
    return out;
}

std::vector<BigFloat> ck_sequence(double alpha, unsigned K, unsigned bits) {
    check_alpha(alpha);
    if (alpha == 0.5) throw PoleError("C_1 = Gamma(alpha - 1/2)/sqrt(pi) has a pole at alpha = 1/2");
    PrecisionScope scope(bits);
    const BigFloat a(alpha);
    const BigFloat pi = pi_big();
    auto binom = binomial_table(K);
    std::vector<BigFloat> C(K + 1, BigFloat(0));
    if (K == 0) return C;
    C[1] = gamma_reflect(a - BigFloat(1) / 2) / sqrt(pi);
    for (unsigned k = 2; k <= K; ++k) {
        BigFloat s = 0;
        for (unsigned j = 1; j < k; ++j) s += BigFloat(binom[k][j]) * C[j] * C[k - j];
        BigFloat x = (k - 1) * a + BigFloat(k) / 2 - 1;
        BigFloat ratio = exp(lgamma(x + a) - lgamma(x));
        C[k] = s / 4 + k * ratio * C[k - 1];
    }
    return C;
}

std::vector<BigFloat> limit_moments(double alpha, unsigned K, unsigned bits) {
    if (alpha == 0.5)
        throw PoleError("E Y^k is undefined at alpha = 1/2; use the centred m_k recurrence");
    auto C = ck_sequence(alpha, K, bits);
    PrecisionScope scope(bits);
    const BigFloat a(alpha);
    const BigFloat sqrt_pi = sqrt(pi_big());
    std::vector<BigFloat> m(K + 1);
    m[0] = 1;
    for (unsigned k = 1; k <= K; ++k) {
        BigFloat y = k * (a + BigFloat(1) / 2) - BigFloat(1) / 2;
        m[k] = C[k] * sqrt_pi * exp(-lgamma(y));
    }
    return m;
}

std::vector<BigFloat> central_from_raw(const std::vector<BigFloat>& raw) {
    const unsigned K = static_cast<unsigned>(raw.size()) - 1;
    auto binom = binomial_table(K);
    std::vector<BigFloat> c(K + 1);
    const BigFloat mean = K >= 1 ? raw[1] : BigFloat(0);
    for (unsigned k = 0; k <= K; ++k) {
        BigFloat s = 0;
        BigFloat p = 1;
        for (unsigned i = 0; i <= k; ++i) {
            s += BigFloat(binom[k][i]) * raw[k - i] * p;
            p *= -mean;
        }
        c[k] = s;
    }
    return c;
}

LimitLaw limit_law(double alpha, unsigned K, unsigned bits) {
    LimitLaw law;
    law.alpha = alpha;
    law.C = ck_sequence(alpha, K, bits);
    law.moments = limit_moments(alpha, std::max(K, 2u), bits);
    PrecisionScope scope(bits);
    law.sigma2 = law.moments[2] - law.moments[1] * law.moments[1];
    law.moments.resize(K + 1);
    law.central = central_from_raw(law.moments);
    return law;
}

BigFloat sigma_sq(double alpha, unsigned bits) {
    auto m = limit_moments(alpha, 2, bits);
    PrecisionScope scope(bits);
    return m[2] - m[1] * m[1];
}

BigFloat sigma_sq_half(unsigned bits) {
    PrecisionScope scope(bits);
    const BigFloat pi = pi_big();
    return 8 * log(BigFloat(2)) / pi - pi / 2;
}

SigmaPeak sigma_sq_max(double lo, double hi, double tol) {
    if (!(lo < hi)) throw ArgumentError("empty search interval");
    auto f = [](double a) { return sigma_sq(a).convert_to<double>(); };
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    double x = (a + b) / 2;
    return {x, f(x)};
}

std::vector<Rational> airy_omega(unsigned K) {
    auto binom = binomial_table(K);
    std::vector<Rational> w(K + 1, Rational(0));
    if (K == 0) return w;
    w[1] = Rational(1, 2);
    for (unsigned k = 2; k <= K; ++k) {
        Rational s = 0;
        for (unsigned j = 1; j < k; ++j) s += Rational(binom[k][j]) * w[j] * w[k - j];
        s += Rational(static_cast<long>(k) * (3 * static_cast<long>(k) - 4)) * w[k - 1];
        w[k] = s / 2;
    }
    return w;
}

std::vector<Rational> wiener_a0(unsigned K) {
    auto binom = binomial_table(K);
    std::vector<Rational> a(K + 1, Rational(0));
    if (K == 0) return a;
    a[1] = 1;
    for (unsigned l = 2; l <= K; ++l) {
        Rational s = 0;
        for (unsigned j = 1; j < l; ++j) s += Rational(binom[l][j]) * a[j] * a[l - j];
        const long L = l;
        a[l] = s / 2 + Rational(L * (5 * L - 4) * (5 * L - 6)) * a[l - 1];
    }
    return a;
}

ShapeLimit shape_limit_moments(unsigned K, unsigned bits) {
    PrecisionScope scope(bits);
    ShapeLimit out;
    out.sigma2 = 8 * (1 - log(BigFloat(2)));
    out.moments.assign(K + 1, BigFloat(0));
    for (unsigned k = 0; k <= K; k += 2) {
        // (k-1)!! sigma^k
        BigFloat v = 1;
        for (unsigned i = 1; i < k; i += 2) v *= i;
        out.moments[k] = v * boost::multiprecision::pow(out.sigma2, k / 2);
    }
    const unsigned L = K / 2;
    out.c2k0.assign(L + 1, BigFloat(0));
    out.c2k0_recurrence.assign(L + 1, BigFloat(0));
    for (unsigned k = 1; k <= L; ++k) {
        BigFloat num = BigFloat(factorial(2 * k)) * BigFloat(factorial(2 * k - 2));
        BigFloat den = BigFloat(factorial(k)) * BigFloat(factorial(k - 1)) *
                       boost::multiprecision::pow(BigFloat(2), 3 * k - 2);
        out.c2k0[k] = num / den * boost::multiprecision::pow(out.sigma2, k);
    }
    auto binom = binomial_table(2 * L);
    if (L >= 1) out.c2k0_recurrence[1] = out.sigma2;
    for (unsigned l = 2; l <= L; ++l) {
        BigFloat s = 0;
        for (unsigned j = 1; j < l; ++j)
            s += BigFloat(binom[2 * l][2 * j]) * out.c2k0_recurrence[j] * out.c2k0_recurrence[l - j];
        out.c2k0_recurrence[l] = s / 4;
    }
    for (unsigned k = 1; k <= L; ++k) {
        double rel = abs((out.c2k0[k] - out.c2k0_recurrence[k]) / out.c2k0[k]).convert_to<double>();
        out.max_relative_mismatch = std::max(out.max_relative_mismatch, rel);
    }
    return out;
}

ScaledCheck scaled_limit_checks(double alpha, unsigned K) {
    ScaledCheck rep;
    rep.alpha = alpha;
    rep.small_alpha = alpha < 0.5;
    auto m = limit_moments(alpha, std::max(K, 2u));
    PrecisionScope scope(kDefaultPrecisionBits);
    const BigFloat a(alpha);
    const BigFloat var = m[2] - m[1] * m[1];
    const double v0 = 4 * (1 - std::log(2.0));
    rep.value.assign(K + 1, 0.0);
    rep.target.assign(K + 1, 0.0);
    rep.deviation.assign(K + 1, 0.0);
    for (unsigned k = 0; k <= K; ++k) {
        BigFloat scale = boost::multiprecision::pow(a, BigFloat(k) / 2);
        BigFloat v = rep.small_alpha ? m[k] / scale : m[k] * scale;
        rep.value[k] = v.convert_to<double>();
        if (rep.small_alpha) {
            double t = 0;
            if (k % 2 == 0) {
                t = 1;
                for (unsigned i = 1; i < k; i += 2) t *= i;
                t *= std::pow(v0, k / 2.0);
            }
            rep.target[k] = t;
        } else {
            rep.target[k] = std::sqrt(std::tgamma(k + 1.0));
        }
        rep.deviation[k] = rep.target[k] != 0 ? std::fabs(rep.value[k] / rep.target[k] - 1)
                                              : std::fabs(rep.value[k]);
    }
    if (rep.small_alpha) {
        rep.scaled_variance = (var / a).convert_to<double>();
        rep.variance_target = v0;
    } else {
        rep.scaled_variance = (var * a).convert_to<double>();
        rep.variance_target = std::sqrt(2.0) - 1;
    }
    return rep;
}

std::vector<double> moment_growth(double alpha, unsigned K) {
    auto m = limit_moments(alpha, K);
    PrecisionScope scope(kDefaultPrecisionBits);
    std::vector<double> g(K + 1, 0.0);
    for (unsigned k = 1; k <= K; ++k) {
        BigFloat r = abs(m[k]) / BigFloat(factorial(k));
        g[k] = boost::multiprecision::pow(r, BigFloat(1) / k).convert_to<double>();
    }
    return g;
}

SingularExpansion mean_asymptotics(const TollSpec& toll) {
    SingularExpansion e;
    const double sqrt_pi = std::sqrt(M_PI);
    if (toll.kind() == TollKind::Log) {
        e.terms.push_back({-0.5, 0, 1.0, "C0"});
        e.terms.push_back({0.0, 1, -2.0, ""});
        e.remainder_exponent = 0.5;
        e.normalize();
        return e;
    }
    if (toll.kind() != TollKind::Power)
        throw ArgumentError("mean asymptotics are stored for power and log tolls only");
    const double a = toll.alpha();
    if (a < 0.5) {
        e.terms.push_back({-0.5, 0, 1.0, "C0"});
        e.terms.push_back({-a, 0, boost::math::tgamma(a - 0.5) / sqrt_pi, ""});
        e.remainder_exponent = 0.5 - a;
    } else if (a == 0.5) {
        e.terms.push_back({-0.5, 1, 1 / sqrt_pi, ""});
        e.terms.push_back({-0.5, 0, 1.0, "D0"});
        e.remainder_exponent = 0.5 - 0.01;
    } else {
        e.terms.push_back({-a, 0, boost::math::tgamma(a - 0.5) / sqrt_pi, ""});
        if (a < 1) {
            e.remainder_exponent = -0.5;
        } else if (a == 1) {
            e.remainder_exponent = -0.5;
            e.remainder_log_power = 1;
        } else {
            e.remainder_exponent = 0.5 - a;
        }
    }
    e.normalize();
    return e;
}

double catalan_weight(std::size_t n) {
    const double x = static_cast<double>(n);
    return std::exp(std::lgamma(x + 0.5) - std::lgamma(x + 2)) / std::sqrt(M_PI);
}

double mean_estimate(const SingularExpansion& resolved, std::size_t n) {
    return expansion_coefficient(resolved, n) / catalan_weight(n);
}

void write_limit_figure_csv(std::ostream& os, const std::vector<double>& alphas) {
    os << "alpha,sigma2,third_central_moment\n";
    for (double a : alphas) {
        LimitLaw law = limit_law(a, 3);
        os << format_double(a) << ',' << format_double(law.sigma2.convert_to<double>()) << ','
           << format_double(law.central[3].convert_to<double>()) << '\n';
    }
}

}  // namespace treemoments
