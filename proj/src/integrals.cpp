#include "treemoments/integrals.hpp"

#include "treemoments/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <map>
#include <tuple>

namespace treemoments {

void QuadratureSpec::validate() const {
    if (!(tolerance > 0)) throw ArgumentError("quadrature tolerance must be positive");
    if (max_levels < 1 || max_levels > kLevelCap)
        throw ArgumentError("quadrature levels must lie in 1.." + std::to_string(kLevelCap));
}

namespace {

double softplus(double u) { return u > 0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

double log_cosh(double u) {
    u = std::fabs(u);
    return u + std::log1p(std::exp(-2 * u)) - std::log(2.0);
}

// Transformed integrand at node t: x = (1 + tanh v)/2, v = (pi/2) sinh t.
double node_value(const LogIntegrand& f, double t) {
    const double v = M_PI / 2 * std::sinh(t);
    const double log_x = -softplus(-2 * v);
    const double log_y = -softplus(2 * v);
    const double log_w = std::log(M_PI / 4) + log_cosh(t) - 2 * log_cosh(v);
    const LogValue fv = f(log_x, log_y);
    if (fv.sign == 0 || (std::isinf(fv.log_abs) && fv.log_abs < 0)) return 0.0;
    return fv.sign * std::exp(fv.log_abs + log_w);
}

constexpr double kMaxT = 7.0;

}  // namespace

QuadratureResult tanh_sinh(const LogIntegrand& f, const QuadratureSpec& spec) {
    spec.validate();
    // Truncation range from a coarse outward scan.
    double peak = std::fabs(node_value(f, 0));
    double t_hi = 0, t_lo = 0;
    for (double t = 0.125; t <= kMaxT; t += 0.125) {
        double a = std::fabs(node_value(f, t)), b = std::fabs(node_value(f, -t));
        peak = std::max({peak, a, b});
        if (a > 1e-20 * peak) t_hi = t;
        if (b > 1e-20 * peak) t_lo = t;
    }
    t_hi = std::min(kMaxT, t_hi + 0.25);
    t_lo = std::min(kMaxT, t_lo + 0.25);

    QuadratureResult res;
    double total = 0;
    for (long k = -static_cast<long>(std::floor(t_lo)); k <= static_cast<long>(std::floor(t_hi)); ++k)
        total += node_value(f, static_cast<double>(k));
    double prev = total;
    for (unsigned level = 1; level <= spec.max_levels; ++level) {
        const double h = std::ldexp(1.0, -static_cast<int>(level));
        // odd multiples of h
        for (double t = h; t <= t_hi; t += 2 * h) total += node_value(f, t);
        for (double t = -h; t >= -t_lo; t -= 2 * h) total += node_value(f, t);
        const double cur = total * h;
        const double err = std::fabs(cur - prev);
        res.level_errors.push_back(err);
        res.value = cur;
        res.error_estimate = err;
        res.levels = level;
        prev = cur;
        if (level >= 3 && err <= spec.tolerance) return res;
    }
    throw ConvergenceError("tanh-sinh did not reach tolerance " + std::to_string(spec.tolerance) +
                           " in " + std::to_string(spec.max_levels) + " levels (estimate " +
                           std::to_string(res.error_estimate) + ")");
}

QuadratureResult j_integral(unsigned k1, unsigned k2, unsigned k3, double alpha, const QuadratureSpec& spec) {
    if (!(alpha > 0)) throw ArgumentError("J needs alpha > 0");
    const bool half = alpha == 0.5;
    const double a = alpha + 0.5;
    const double p = k1 * a - 1.5;
    const double q = k2 * a - 1.5;
    // bracket vanishes to order min(a, 1) at both ends
    const double order = std::min(a, 1.0) * k3;
    if (!(p + order > -1) || !(q + order > -1))
        throw ArgumentError("J integrand not integrable for (" + std::to_string(k1) + "," + std::to_string(k2) +
                            "," + std::to_string(k3) + ")");
    LogIntegrand f = [=](double lx, double ly) -> LogValue {
        double base = p * lx + q * ly;
        if (k3 == 0) return {base, 1};
        double b;
        if (half) {
            b = std::exp(lx) * lx + std::exp(ly) * ly;
        } else if (lx < ly) {
            b = std::exp(a * lx) + std::expm1(a * ly);
        } else {
            b = std::exp(a * ly) + std::expm1(a * lx);
        }
        if (b == 0) return {-INFINITY, 0};
        int sign = (b < 0 && (k3 % 2)) ? -1 : 1;
        return {base + k3 * std::log(std::fabs(b)), sign};
    };
    return tanh_sinh(f, spec);
}

double j_beta_closed_form(unsigned k1, unsigned k2, double alpha) {
    const double a = alpha + 0.5;
    const double x = k1 * a - 0.5, y = k2 * a - 0.5;
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

namespace {

CenteredMomentSeq run_mk(double alpha, bool half, unsigned K, const QuadratureSpec& spec) {
    spec.validate();
    CenteredMomentSeq seq;
    seq.alpha = alpha;
    seq.half = half;
    seq.m.assign(K + 1, 0.0);
    seq.m[0] = 1;
    if (K == 0) return seq;
    const double a = alpha + 0.5;
    const double sqrt_pi = std::sqrt(M_PI);
    const double G = half ? 1 / sqrt_pi : boost::math::tgamma(alpha - 0.5) / boost::math::tgamma(alpha);
    std::map<std::tuple<unsigned, unsigned, unsigned>, double> cache;
    auto J = [&](unsigned k1, unsigned k2, unsigned k3) {
        auto key = std::make_tuple(std::min(k1, k2), std::max(k1, k2), k3);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        double v = j_integral(std::get<0>(key), std::get<1>(key), k3, alpha, spec).value;
        cache.emplace(key, v);
        return v;
    };
    std::vector<double> fact(K + 1, 1.0);
    for (unsigned i = 1; i <= K; ++i) fact[i] = fact[i - 1] * i;
    for (unsigned k = 2; k <= K; ++k) {
        double s = 0;
        for (unsigned k1 = 0; k1 < k; ++k1)
            for (unsigned k2 = 0; k2 < k && k1 + k2 <= k; ++k2) {
                unsigned k3 = k - k1 - k2;
                double coef = fact[k] / (fact[k1] * fact[k2] * fact[k3]) * seq.m[k1] * seq.m[k2];
                if (coef == 0) continue;
                s += coef * std::pow(G, k3) * J(k1, k2, k3);
            }
        s += 4 * sqrt_pi * k * seq.m[k - 1];
        const double pre = std::exp(std::lgamma(k * a - 1) - std::lgamma(k * a - 0.5)) / (4 * sqrt_pi);
        seq.m[k] = pre * s;
    }
    return seq;
}

}  // namespace

CenteredMomentSeq mk_sequence(double alpha, unsigned K, const QuadratureSpec& spec) {
    if (!(alpha > 0)) throw DomainError("m_k needs alpha > 0");
    if (alpha == 0.5) throw PoleError("alpha = 1/2 uses mk_sequence_half");
    return run_mk(alpha, false, K, spec);
}

CenteredMomentSeq mk_sequence_half(unsigned K, const QuadratureSpec& spec) { return run_mk(0.5, true, K, spec); }

}  // namespace treemoments
