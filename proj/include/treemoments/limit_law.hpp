#pragma once

#include "treemoments/numeric.hpp"
#include "treemoments/polylog.hpp"
#include "treemoments/toll.hpp"

#include <ostream>
#include <vector>

namespace treemoments {

// Sequences are indexed by k with entry 0 holding the k = 0 value
// (C_0 = 0 unused, E Y^0 = 1).
struct LimitLaw {
    double alpha = 1;
    std::vector<BigFloat> C;
    std::vector<BigFloat> moments;
    BigFloat sigma2;
    std::vector<BigFloat> central;
};

// C_k for integer alpha >= 1, where every Gamma ratio is rational.
std::vector<Rational> ck_sequence_exact(unsigned alpha, unsigned K);
std::vector<BigFloat> ck_sequence(double alpha, unsigned K, unsigned bits = kDefaultPrecisionBits);

// E Y^k = C_k sqrt(pi) / Gamma(k(alpha + 1/2) - 1/2); alpha = 1/2 raises PoleError.
std::vector<BigFloat> limit_moments(double alpha, unsigned K, unsigned bits = kDefaultPrecisionBits);

// E Y^k = coefficient * sqrt(pi)^sqrt_pi_power for integer alpha.
struct ExactMoment {
    Rational coefficient;
    unsigned sqrt_pi_power = 0;
};
std::vector<ExactMoment> limit_moments_exact(unsigned alpha, unsigned K);

LimitLaw limit_law(double alpha, unsigned K, unsigned bits = kDefaultPrecisionBits);

// E (Y - EY)^k from raw moments 0..K.
std::vector<BigFloat> central_from_raw(const std::vector<BigFloat>& raw);

BigFloat sigma_sq(double alpha, unsigned bits = kDefaultPrecisionBits);
BigFloat sigma_sq_half(unsigned bits = kDefaultPrecisionBits);

struct SigmaPeak {
    double alpha = 0;
    double value = 0;
};
// Golden-section search for the maximum of sigma_sq on [lo, hi].
SigmaPeak sigma_sq_max(double lo = 0.3, double hi = 1.2, double tol = 1e-6);

std::vector<Rational> airy_omega(unsigned K);
std::vector<Rational> wiener_a0(unsigned K);

struct ShapeLimit {
    BigFloat sigma2;
    std::vector<BigFloat> moments;       // E W^k, 0..K, Gaussian
    std::vector<BigFloat> c2k0;          // C_{2k,0}, index k, closed form
    std::vector<BigFloat> c2k0_recurrence;
    double max_relative_mismatch = 0;    // closed form vs recurrence
};
ShapeLimit shape_limit_moments(unsigned K, unsigned bits = kDefaultPrecisionBits);

struct ScaledCheck {
    double alpha = 0;
    bool small_alpha = false;
    std::vector<double> value;     // alpha^{-+k/2} E Y^k, index k
    std::vector<double> target;
    std::vector<double> deviation; // relative, or absolute when the target is 0
    double scaled_variance = 0;    // alpha^{-1} Var Y (small alpha) or alpha Var Y
    double variance_target = 0;
};
// Small alpha (< 1/2): compares with the centred normal of variance
// 4(1 - log 2); large alpha: with the moments sqrt(k!).
ScaledCheck scaled_limit_checks(double alpha, unsigned K);

// |E Y^k / k!|^{1/k} for k = 1..K (bounded sequence means Carleman-type growth).
std::vector<double> moment_growth(double alpha, unsigned K);

// Two-term singular expansion of A(z) . CAT(z/4) for Power and Log tolls.
// Named constants: "C0" (alpha < 1/2 and Log), "D0" (alpha = 1/2).
SingularExpansion mean_asymptotics(const TollSpec& toll);
// a_n estimate from the expansion: [z^n] / (catalan(n)/4^n).
double mean_estimate(const SingularExpansion& resolved, std::size_t n);
double catalan_weight(std::size_t n);

// CSV rows alpha, sigma2, third central moment.
void write_limit_figure_csv(std::ostream& os, const std::vector<double>& alphas);

}  // namespace treemoments
