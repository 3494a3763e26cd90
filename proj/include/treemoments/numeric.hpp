#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace treemoments {

// Expression templates are off so that `auto` and ?: behave like plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

constexpr unsigned kDefaultPrecisionBits = 128;

// Sets the working precision of newly created BigFloat values for the
// lifetime of the scope. The Boost default precision is process wide, so
// BigFloat computations are kept on one thread.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

unsigned digits10_for_bits(unsigned bits);

BigFloat pi_big();
BigFloat euler_gamma_big();

// Neumaier compensated summation.
template <class T>
class CompensatedSum {
public:
    void add(const T& x) {
        T t = sum_ + x;
        using std::abs;
        if (abs(sum_) >= abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{0};
    T comp_{0};
};

BigInt catalan(unsigned n);
BigInt binomial_big(unsigned n, unsigned k);
std::vector<std::vector<BigInt>> binomial_table(unsigned n);

// Exact Bernoulli numbers with B_1 = -1/2.
const Rational& bernoulli_number(unsigned n);
Rational bernoulli_polynomial(unsigned n, const Rational& x);

std::string format_double(double x);
std::string format_big(const BigFloat& x, int significant = 17);
std::string format_rational(const Rational& q);

// Parses "p/q", an integer, or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace treemoments
