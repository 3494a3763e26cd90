#include "treemoments/polylog.hpp"

#include "treemoments/errors.hpp"
#include "treemoments/special.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>

#include <algorithm>
#include <cmath>

namespace treemoments {

void SingularExpansion::normalize() {
    std::stable_sort(terms.begin(), terms.end(), [](const ExpansionTerm& x, const ExpansionTerm& y) {
        if (x.exponent != y.exponent) return x.exponent < y.exponent;
        return x.log_power > y.log_power;
    });
    for (const auto& t : terms)
        if (!(t.exponent < remainder_exponent) &&
            !(t.exponent == remainder_exponent && t.log_power > remainder_log_power))
            throw ArgumentError("expansion term not dominated by remainder");
}

SingularExpansion SingularExpansion::resolve(const std::string& symbol, double value) const {
    SingularExpansion e = *this;
    for (auto& t : e.terms)
        if (t.symbol == symbol) {
            t.coefficient *= value;
            t.symbol.clear();
        }
    if (e.constant_symbol == symbol) {
        e.constant *= value;
        e.constant_symbol.clear();
    }
    return e;
}

bool SingularExpansion::resolved() const {
    for (const auto& t : terms)
        if (!t.symbol.empty()) return false;
    return constant_symbol.empty();
}

double SingularExpansion::evaluate(double z) const {
    if (!resolved()) throw ArgumentError("expansion has unresolved constants");
    const double omz = 1 - z;
    const double L = -std::log1p(-z);
    double s = has_constant ? constant : 0.0;
    for (const auto& t : terms) s += t.coefficient * std::pow(omz, t.exponent) * std::pow(L, t.log_power);
    return s;
}

double transfer_coefficient(double exponent, unsigned log_power, std::size_t n) {
    if (log_power > 2) throw CapError("coefficient transfer supports log powers up to 2");
    // [z^n](1-z)^{-a} = (a)_n / n!, and L^p brings d^p/da^p.
    const double a = -exponent;
    const bool nonpos_int = a <= 0 && a == std::floor(a);
    const auto i0 = nonpos_int ? static_cast<std::size_t>(-a) : n;
    if (n == 0) return log_power == 0 ? 1.0 : 0.0;
    if (nonpos_int && i0 < n) {
        // (a)_n has the factor (a + i0) = 0
        double logq = std::lgamma(static_cast<double>(i0) + 1) + std::lgamma(static_cast<double>(n - i0)) -
                      std::lgamma(static_cast<double>(n) + 1);
        double q = std::exp(logq) * ((i0 % 2) ? -1.0 : 1.0);
        if (log_power == 0) return 0.0;
        if (log_power == 1) return q;
        double s1 = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != i0) s1 += 1.0 / (a + static_cast<double>(i));
        return 2 * q * s1;
    }
    double base;
    if (n <= 200) {
        base = 1;
        for (std::size_t i = 0; i < n; ++i) base *= (a + static_cast<double>(i)) / static_cast<double>(i + 1);
    } else {
        int sign = 1;
        double lg_a = boost::math::lgamma(a, &sign);
        base = sign * std::exp(std::lgamma(a + static_cast<double>(n)) - std::lgamma(static_cast<double>(n) + 1) - lg_a);
    }
    if (log_power == 0) return base;
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = 1.0 / (a + static_cast<double>(i));
        s1 += v;
        s2 += v * v;
    }
    return log_power == 1 ? base * s1 : base * (s1 * s1 - s2);
}

double expansion_coefficient(const SingularExpansion& e, std::size_t n) {
    if (!e.resolved()) throw ArgumentError("expansion has unresolved constants");
    double s = (n == 0 && e.has_constant) ? e.constant : 0.0;
    for (const auto& t : e.terms) s += t.coefficient * transfer_coefficient(t.exponent, t.log_power, n);
    return s;
}

double gamma_derivative(unsigned k, double x) {
    if (k > 6) throw CapError("gamma derivative order above 6");
    if (!(x > 0)) throw DomainError("gamma derivative needs x > 0");
    // Gamma^{(m+1)} = sum_j C(m,j) Gamma^{(j)} psi^{(m-j)}
    std::vector<double> g(k + 1), psi(k + 1);
    g[0] = boost::math::tgamma(x);
    for (unsigned m = 0; m <= k; ++m) psi[m] = m == 0 ? boost::math::digamma(x) : boost::math::polygamma(static_cast<int>(m), x);
    for (unsigned m = 0; m < k; ++m) {
        double s = 0;
        double c = 1;
        for (unsigned j = 0; j <= m; ++j) {
            s += c * g[j] * psi[m - j];
            c = c * (m - j) / (j + 1);
        }
        g[m + 1] = s;
    }
    return g[k];
}

std::vector<double> li_lambda(double alpha, unsigned r) {
    if (!(alpha < 1)) throw DomainError("polylog expansion needs alpha < 1");
    std::vector<double> lam(r + 1);
    double c = 1;
    for (unsigned k = 0; k <= r; ++k) {
        lam[k] = c * gamma_derivative(k, 1 - alpha);
        c = c * (r - k) / (k + 1);
    }
    return lam;
}

SingularExpansion li_expansion(const PolylogId& id, double eps) {
    if (!(id.alpha < 1)) throw DomainError("polylog expansion needs alpha < 1");
    SingularExpansion e;
    auto lam = li_lambda(id.alpha, id.r);
    for (unsigned k = 0; k <= id.r; ++k) e.terms.push_back({id.alpha - 1, id.r - k, lam[k], ""});
    e.remainder_exponent = id.alpha - eps;
    e.remainder_log_power = id.r;
    if (id.alpha > 0) {
        e.has_constant = true;
        e.constant = ((id.r % 2) ? -1.0 : 1.0) * zeta_derivative(id.r, id.alpha);
    }
    e.normalize();
    return e;
}

OmzToLi omz_to_li(double alpha, unsigned r) {
    if (!(alpha < 1)) throw DomainError("omz_to_li needs alpha < 1");
    const double g1 = boost::math::tgamma(1 - alpha);
    const bool with_const = alpha > 0;
    std::vector<std::vector<double>> mu(r + 1);
    std::vector<double> c(r + 1, 0.0);
    for (unsigned rr = 0; rr <= r; ++rr) {
        auto lam = li_lambda(alpha, rr);
        mu[rr].assign(rr + 1, 0.0);
        mu[rr][0] = 1 / g1;
        for (unsigned k = 1; k <= rr; ++k) {
            unsigned s = rr - k;
            // nu_s = sum_{k'=1}^{rr-s} lambda_{k'} mu^{(rr-k')}_{rr-s-k'}
            double nu = 0;
            for (unsigned kk = 1; kk <= rr - s; ++kk) nu += lam[kk] * mu[rr - kk][rr - s - kk];
            mu[rr][k] = -nu / g1;
        }
        if (with_const) {
            double gam = ((rr % 2) ? -1.0 : 1.0) * zeta_derivative(rr, alpha);
            for (unsigned k = 1; k <= rr; ++k) gam += lam[k] * c[rr - k];
            c[rr] = -gam / g1;
        }
    }
    return {mu[r], c[r]};
}

PolylogId hadamard_li(const PolylogId& a, const PolylogId& b) { return {a.alpha + b.alpha, a.r + b.r}; }

namespace {

constexpr std::size_t kBigFloatTermCap = 4000000;
constexpr std::size_t kDoubleTermCap = std::size_t(1) << 31;

// Tail after term n: t_{n+1} / (1 - rho) with rho bounding later term ratios.
double tail_ratio(double alpha, unsigned r, double z, std::size_t n) {
    const double nn = static_cast<double>(n);
    double rho = z * std::max(1.0, std::pow((nn + 1) / nn, -alpha));
    if (r > 0) rho *= std::pow(std::log(nn + 1) / std::log(nn), static_cast<double>(r));
    return rho;
}

}  // namespace

std::vector<LiValue> li_eval_family(double alpha, unsigned r, double z, unsigned precision) {
    if (!(z > 0 && z < 1)) throw DomainError("li_eval needs 0 < z < 1");
    std::vector<LiValue> out(r + 1);
    const double logz = std::log(z);
    const std::size_t min_terms = 16;
    if (precision <= 53) {
        const double rel = 1e-16;
        std::vector<CompensatedSum<double>> sums(r + 1);
        for (std::size_t n = 1;; ++n) {
            const double ln = std::log(static_cast<double>(n));
            double t = std::exp(-alpha * ln + static_cast<double>(n) * logz);
            for (unsigned q = 0; q <= r; ++q) {
                sums[q].add(t);
                t *= ln;
            }
            if (n >= min_terms && n % 8 == 0) {
                const double rho = tail_ratio(alpha, r, z, n);
                if (rho < 1) {
                    const double ln1 = std::log(static_cast<double>(n + 1));
                    bool done = true;
                    double tn1 = std::exp(-alpha * ln1 + static_cast<double>(n + 1) * logz);
                    for (unsigned q = 0; q <= r; ++q) {
                        double bound = tn1 / (1 - rho);
                        out[q] = {sums[q].value(), bound, n};
                        if (bound > rel * std::fabs(out[q].value)) done = false;
                        tn1 *= ln1;
                    }
                    if (done) return out;
                }
            }
            if (n >= kDoubleTermCap) throw ConvergenceError("li_eval: too many terms for z this close to 1");
        }
    }
    PrecisionScope scope(precision);
    const BigFloat bz(z);
    const BigFloat logbz = boost::multiprecision::log(bz);
    const BigFloat rel = boost::multiprecision::ldexp(BigFloat(1), -static_cast<int>(precision));
    std::vector<BigFloat> sums(r + 1, BigFloat(0));
    for (std::size_t n = 1; n <= kBigFloatTermCap; ++n) {
        const BigFloat ln = boost::multiprecision::log(BigFloat(n));
        BigFloat t = boost::multiprecision::exp(-alpha * ln + n * logbz);
        for (unsigned q = 0; q <= r; ++q) {
            sums[q] += t;
            t *= ln;
        }
        if (n >= min_terms && n % 8 == 0) {
            const double rho = tail_ratio(alpha, r, z, n);
            if (rho >= 1) continue;
            const BigFloat ln1 = boost::multiprecision::log(BigFloat(n + 1));
            BigFloat tn1 = boost::multiprecision::exp(-alpha * ln1 + (n + 1) * logbz);
            bool done = true;
            for (unsigned q = 0; q <= r; ++q) {
                BigFloat bound = tn1 / (1 - rho);
                if (bound > rel * abs(sums[q])) done = false;
                out[q] = {sums[q].convert_to<double>(), bound.convert_to<double>(), n};
                tn1 *= ln1;
            }
            if (done) return out;
        }
    }
    throw ConvergenceError("li_eval: precision " + std::to_string(precision) +
                           " bits not reachable within the term cap for this z");
}

LiValue li_eval(const PolylogId& id, double z, unsigned precision) {
    return li_eval_family(id.alpha, id.r, z, precision)[id.r];
}

std::vector<double> default_residual_grid() { return {0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999}; }

ResidualReport residual_check(const std::vector<double>& grid, const std::vector<double>& exact,
                              const SingularExpansion& expansion, double slope_limit) {
    ResidualReport rep;
    rep.z = grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = grid[i];
        const double res = exact[i] - expansion.evaluate(z);
        const double L = -std::log1p(-z);
        const double scale = std::pow(1 - z, expansion.remainder_exponent) *
                             std::pow(1 + L, static_cast<double>(expansion.remainder_log_power));
        rep.residual.push_back(res);
        rep.ratio.push_back(res / scale);
    }
    const std::size_t m = std::min<std::size_t>(5, grid.size());
    if (m < 2) return rep;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    bool finite = true;
    for (std::size_t i = grid.size() - m; i < grid.size(); ++i) {
        double x = -std::log(1 - grid[i]);
        double y = std::log(std::fabs(rep.ratio[i]));
        if (!std::isfinite(y)) {
            // an exactly zero residual is bounded; treat as tiny
            if (rep.ratio[i] == 0) y = -700;
            else finite = false;
        }
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double md = static_cast<double>(m);
    rep.tail_slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
    rep.passed = finite && std::isfinite(rep.tail_slope) && rep.tail_slope <= slope_limit;
    return rep;
}

ResidualReport expansion_residual_check(const PolylogId& id, const SingularExpansion& expansion,
                                        const std::vector<double>& grid) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ArgumentError("residual grid must increase toward 1");
    std::vector<double> exact;
    for (double z : grid) exact.push_back(li_eval(id, z).value);
    return residual_check(grid, exact, expansion);
}

ResidualReport reconstruction_check(double alpha, unsigned r, const std::vector<double>& grid, double eps) {
    const OmzToLi inv = omz_to_li(alpha, r);
    SingularExpansion zero;
    zero.remainder_exponent = alpha - eps;
    zero.remainder_log_power = r;
    std::vector<double> resid;
    for (double z : grid) {
        auto fam = li_eval_family(alpha, r, z);
        const double L = -std::log1p(-z);
        double v = std::pow(1 - z, alpha - 1) * std::pow(L, static_cast<double>(r));
        for (unsigned k = 0; k <= r; ++k) v -= inv.mu[k] * fam[r - k].value;
        if (alpha > 0) v -= inv.constant;
        resid.push_back(v);
    }
    return residual_check(grid, resid, zero);
}

}  // namespace treemoments
