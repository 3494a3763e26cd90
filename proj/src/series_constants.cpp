#include "treemoments/series_constants.hpp"

#include "treemoments/errors.hpp"
#include "treemoments/special.hpp"

#include "json.hpp"

#include <cmath>
#include <limits>

namespace treemoments {

namespace {

constexpr std::size_t kStartCutoff = 1000;
constexpr std::size_t kMaxCutoff = 16384000;

// sum_{n>=1} n^e (log n)^r catalan(n)/4^n, optionally minus the leading
// n^{e-3/2}/sqrt(pi) part of every term.
struct SeriesShape {
    double e = 0;
    unsigned r = 0;
    bool subtract_leading = false;
};

struct Evaluation {
    double value;
    double bound;
};

Evaluation evaluate(const SeriesShape& sh, std::size_t N, unsigned J) {
    using LD = long double;
    const LD inv_sqrt_pi = 1.0L / std::sqrt(static_cast<LD>(M_PI));
    CompensatedSum<LD> direct;
    LD w = 1;
    LD abs_total = 0;
    for (std::size_t n = 1; n <= N; ++n) {
        const LD x = static_cast<LD>(n);
        w = w * (2 * x - 1) / (2 * x + 2);
        LD f = sh.e == 0 ? 1.0L : std::pow(x, static_cast<LD>(sh.e));
        if (sh.r) f *= std::pow(std::log(x), static_cast<LD>(sh.r));
        LD term = f * w;
        if (sh.subtract_leading) term -= f * inv_sqrt_pi / (x * std::sqrt(x));
        direct.add(term);
        abs_total += std::fabs(term);
    }

    PrecisionScope scope(kDefaultPrecisionBits);
    const auto c = catalan_weight_expansion(J + 1);
    const BigFloat a(N + 1);
    BigFloat tail = 0;
    BigFloat dropped = 0;
    for (unsigned j = sh.subtract_leading ? 1 : 0; j <= J + 1; ++j) {
        BigFloat s = BigFloat(3) / 2 + j - BigFloat(sh.e);
        BigFloat z = hurwitz_zeta_derivative(sh.r, s, a);
        if (sh.r % 2) z = -z;
        BigFloat piece = BigFloat(c[j]) * z;
        if (j <= J)
            tail += piece;
        else
            dropped = piece;
    }
    const BigFloat isp = 1 / boost::multiprecision::sqrt(pi_big());
    tail *= isp;
    dropped *= isp;

    const double value = static_cast<double>(direct.value()) + tail.convert_to<double>();
    const double rounding = static_cast<double>(abs_total) * static_cast<double>(N) *
                            std::numeric_limits<LD>::epsilon();
    const double truncation = 2 * std::fabs(dropped.convert_to<double>());
    const double output = std::fabs(value) * std::numeric_limits<double>::epsilon();
    return {value, truncation + rounding + output};
}

SeriesConstant run(const std::string& name, const std::string& toll, const SeriesShape& sh, double tol,
                   const SeriesOptions& opt) {
    if (!(tol > 0)) throw ArgumentError("tolerance must be positive");
    SeriesConstant out;
    out.name = name;
    out.toll = toll;
    out.tail_terms = opt.tail_terms;
    if (opt.cutoff) {
        auto ev = evaluate(sh, opt.cutoff, opt.tail_terms);
        out.value = ev.value;
        out.bound = ev.bound;
        out.cutoff = opt.cutoff;
        return out;
    }
    for (std::size_t N = kStartCutoff; N <= kMaxCutoff; N *= 2) {
        auto ev = evaluate(sh, N, opt.tail_terms);
        out.value = ev.value;
        out.bound = ev.bound;
        out.cutoff = N;
        if (ev.bound <= tol) return out;
    }
    throw ConvergenceError(name + ": tolerance " + format_double(tol) + " not reached (bound " +
                           format_double(out.bound) + ")");
}

}  // namespace

SeriesConstant c0_constant(const TollSpec& toll, double tol, const SeriesOptions& opt) {
    switch (toll.kind()) {
        case TollKind::Custom: {
            SeriesConstant out;
            out.name = "C0";
            out.toll = toll.describe();
            Rational s = 0;
            Rational w = 1;
            for (std::size_t n = 1; n <= toll.custom_values().size(); ++n) {
                w = w * Rational(2 * n - 1, 2 * n + 2);
                s += toll.custom_values()[n - 1] * w;
            }
            out.value = s.convert_to<double>();
            out.bound = std::fabs(out.value) * std::numeric_limits<double>::epsilon();
            out.cutoff = toll.custom_values().size();
            return out;
        }
        case TollKind::Log: return run("C0", "log", {0.0, 1, false}, tol, opt);
        case TollKind::Power:
            if (toll.alpha() >= 0.5)
                throw DivergenceError("C0 diverges for alpha >= 1/2 (terms decay like n^{alpha-3/2})");
            return run("C0", toll.describe(), {toll.alpha(), 0, false}, tol, opt);
        case TollKind::PathLength: throw DivergenceError("C0 diverges for the path-length toll");
    }
    throw ArgumentError("unsupported toll");
}

SeriesConstant d0_constant(double tol, const SeriesOptions& opt) {
    return run("D0", "", {0.5, 0, true}, tol, opt);
}

double d1_from_d0(double d0) {
    const double sp = std::sqrt(M_PI);
    return (2 * std::log(2.0) + 0.57721566490153286061 + sp * d0) / sp;
}

SeriesConstant d1_constant(double tol, const SeriesOptions& opt) {
    SeriesConstant d0 = d0_constant(tol, opt);
    SeriesConstant out = d0;
    out.name = "D1";
    out.value = d1_from_d0(d0.value);
    out.bound = d0.bound + std::fabs(out.value) * std::numeric_limits<double>::epsilon() * 4;
    return out;
}

SeriesConstant k_constant(double tol, const SeriesOptions& opt) {
    return run("K", "", {0.0, 2, false}, tol, opt);
}

void write_json(std::ostream& os, const SeriesConstant& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    if (!c.toll.empty()) j["toll"] = c.toll;
    j["value"] = c.value;
    j["bound"] = c.bound;
    j["cutoff"] = c.cutoff;
    j["tail_terms"] = c.tail_terms;
    os << j.dump(1) << '\n';
}

}  // namespace treemoments
