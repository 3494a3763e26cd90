#pragma once

#include "treemoments/numeric.hpp"

#include <vector>

namespace treemoments {

// Hurwitz zeta sum_{n>=0} (n+a)^{-s} for real s != 1, a > 0, by direct
// summation plus an Euler-Maclaurin tail. Valid for s < 1 by analytic
// continuation. Accurate to roughly the working precision.
BigFloat hurwitz_zeta(const BigFloat& s, const BigFloat& a);

// d^order/ds^order of hurwitz_zeta by central differences with the given
// step and one Richardson extrapolation. order <= 4.
BigFloat hurwitz_zeta_derivative(unsigned order, const BigFloat& s, const BigFloat& a, double step = 1e-6);

// Riemann zeta and its derivatives at real s != 1, in double.
double zeta_derivative(unsigned order, double s);

// Gamma at any real non-pole, using reflection for x < 1/2.
BigFloat gamma_reflect(const BigFloat& x);

// c_0..c_terms with catalan(n)/4^n ~ n^{-3/2}/sqrt(pi) * sum_j c_j n^{-j},
// from the Stirling series of Gamma(n+1/2)/Gamma(n+2).
std::vector<Rational> catalan_weight_expansion(unsigned terms);

}  // namespace treemoments
