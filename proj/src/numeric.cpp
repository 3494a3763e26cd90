#include "treemoments/numeric.hpp"

#include "treemoments/errors.hpp"


#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>

namespace treemoments {

unsigned digits10_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_digits10_(BigFloat::default_precision()) {
    BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_digits10_); }

BigFloat pi_big() {
    BigFloat r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

BigFloat euler_gamma_big() {
    BigFloat r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

BigInt binomial_big(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.backend().data(), n, k);
    return r;
}

BigInt catalan(unsigned n) { return binomial_big(2 * n, n) / (n + 1); }

std::vector<std::vector<BigInt>> binomial_table(unsigned n) {
    std::vector<std::vector<BigInt>> c(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        c[i].resize(i + 1);
        c[i][0] = c[i][i] = 1;
        for (unsigned j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

const Rational& bernoulli_number(unsigned n) {
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= n) {
        unsigned m = static_cast<unsigned>(table.size());
        // sum_{k=0}^{m} C(m+1,k) B_k = 0
        Rational s = 0;
        for (unsigned k = 0; k < m; ++k) s += Rational(binomial_big(m + 1, k)) * table[k];
        table.push_back(-s / Rational(m + 1));
    }
    return table[n];
}

Rational bernoulli_polynomial(unsigned n, const Rational& x) {
    Rational s = 0;
    Rational xp = 1;
    // B_n(x) = sum_k C(n,k) B_{n-k} x^k
    for (unsigned k = 0; k <= n; ++k) {
        s += Rational(binomial_big(n, k)) * bernoulli_number(n - k) * xp;
        xp *= x;
    }
    return s;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_big(const BigFloat& x, int significant) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(significant);
    os << x;
    return os.str();
}

std::string format_rational(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            BigInt p(text.substr(0, slash));
            BigInt q(text.substr(slash + 1));
            if (q == 0) throw ArgumentError("zero denominator in '" + text + "'");
            return Rational(p, q);
        }
        std::string s = text;
        BigInt scale = 1;
        int exp10 = 0;
        auto e = s.find_first_of("eE");
        if (e != std::string::npos) {
            exp10 = std::stoi(s.substr(e + 1));
            s = s.substr(0, e);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string frac = s.substr(dot + 1);
            s = s.substr(0, dot) + frac;
            exp10 -= static_cast<int>(frac.size());
        }
        if (s.empty() || s == "-" || s == "+") throw ArgumentError("not a number: '" + text + "'");
        if (s[0] == '+') s = s.substr(1);
        BigInt digits(s);
        BigInt p10 = 1;
        for (int i = 0; i < std::abs(exp10); ++i) p10 *= 10;
        return exp10 >= 0 ? Rational(digits * p10) : Rational(digits, p10);
    } catch (const ArgumentError&) {
        throw;
    } catch (const std::exception&) {
        throw ArgumentError("not a number: '" + text + "'");
    }
}

}  // namespace treemoments
