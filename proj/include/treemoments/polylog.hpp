#pragma once

#include "treemoments/numeric.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace treemoments {

// coefficient * [symbol] * (1-z)^exponent * L(z)^log_power with
// L(z) = log(1/(1-z)). An empty symbol means the coefficient is final.
struct ExpansionTerm {
    double exponent = 0;
    unsigned log_power = 0;
    double coefficient = 0;
    std::string symbol;
};

// Finite singular expansion at z = 1 plus an O(|1-z|^remainder_exponent
// L^remainder_log_power) remainder.
struct SingularExpansion {
    std::vector<ExpansionTerm> terms;
    double remainder_exponent = 0;
    unsigned remainder_log_power = 0;
    bool has_constant = false;
    double constant = 0;
    std::string constant_symbol;

    // Sorts terms (exponent ascending, log power descending) and checks
    // every exponent lies below the remainder exponent.
    void normalize();
    // Replaces a named constant by its value.
    SingularExpansion resolve(const std::string& symbol, double value) const;
    bool resolved() const;
    double evaluate(double z) const;
};

// [z^n] (1-z)^exponent L(z)^log_power, exact for log_power <= 2.
double transfer_coefficient(double exponent, unsigned log_power, std::size_t n);
// [z^n] of the resolved expansion's terms (the constant only affects n = 0).
double expansion_coefficient(const SingularExpansion& e, std::size_t n);

struct PolylogId {
    double alpha = 0;
    unsigned r = 0;
    bool operator==(const PolylogId& o) const { return alpha == o.alpha && r == o.r; }
};

// Gamma^{(k)}(x) for x > 0, k <= 6.
double gamma_derivative(unsigned k, double x);

// Li_{alpha,r} = sum_k lambda_k (1-z)^{alpha-1} L^{r-k} + O(|1-z|^{alpha-eps})
// + (-1)^r zeta^{(r)}(alpha) [alpha > 0], for alpha < 1.
SingularExpansion li_expansion(const PolylogId& id, double eps = 0.01);
std::vector<double> li_lambda(double alpha, unsigned r);

struct OmzToLi {
    std::vector<double> mu;  // mu_0..mu_r
    double constant = 0;     // c_r(alpha), used when alpha > 0
};
// (1-z)^{alpha-1} L^r = sum_k mu_k Li_{alpha,r-k} + O(|1-z|^{alpha-eps}) + c_r [alpha > 0]
OmzToLi omz_to_li(double alpha, unsigned r);

PolylogId hadamard_li(const PolylogId& a, const PolylogId& b);

struct LiValue {
    double value = 0;
    double bound = 0;       // bound on the truncated tail
    std::size_t terms = 0;
};

// Direct summation of sum (log n)^r n^{-alpha} z^n for 0 < z < 1 with a
// geometric tail bound. precision <= 53 sums in double with compensation;
// larger precisions sum in BigFloat and are capped in length.
LiValue li_eval(const PolylogId& id, double z, unsigned precision = 53);
// Li_{alpha,0..r}(z) from a single pass.
std::vector<LiValue> li_eval_family(double alpha, unsigned r, double z, unsigned precision = 53);

struct ResidualReport {
    std::vector<double> z;
    std::vector<double> residual;
    std::vector<double> ratio;  // residual / (|1-z|^rem (1 + L)^rem_log)
    double tail_slope = 0;      // log|ratio| vs log(1/(1-z)) over the last 5 points
    bool passed = false;
};

// Compares f(z) (computed by the caller) with an expansion.
ResidualReport residual_check(const std::vector<double>& grid, const std::vector<double>& exact,
                              const SingularExpansion& expansion, double slope_limit = 0.1);

// li_eval against the expansion on a grid increasing toward 1.
ResidualReport expansion_residual_check(const PolylogId& id, const SingularExpansion& expansion,
                                        const std::vector<double>& grid);

// Residual of (1-z)^{alpha-1} L^r - sum_k mu_k Li_{alpha,r-k} - c_r [alpha>0].
ResidualReport reconstruction_check(double alpha, unsigned r, const std::vector<double>& grid,
                                    double eps = 0.01);

std::vector<double> default_residual_grid();

}  // namespace treemoments
