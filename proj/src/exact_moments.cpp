#include "treemoments/exact_moments.hpp"

#include "treemoments/errors.hpp"

#include "json.hpp"

#include <optional>

namespace treemoments {

namespace {

// sum_{j=1}^{n} a[j-1] * b[n-j]
Rational conv_at(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t n) {
    Rational s = 0;
    for (std::size_t j = 1; j <= n; ++j) s += a[j - 1] * b[n - j];
    return s;
}

BigFloat conv_at(const std::vector<BigFloat>& a, const std::vector<BigFloat>& b, std::size_t n) {
    BigFloat s = 0;
    mpfr_ptr acc = s.backend().data();
    for (std::size_t j = 1; j <= n; ++j)
        mpfr_fma(acc, a[j - 1].backend().data(), b[n - j].backend().data(), acc, MPFR_RNDN);
    return s;
}

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static void check(const TollSpec& toll, std::size_t N) {
        if (!toll.is_rational()) throw FieldError("toll " + toll.describe() + " is not rational-exact");
        (void)N;
    }
    static unsigned precision(const TollSpec&) { return 0; }
};

template <>
struct FieldTraits<BigFloat> {
    static void check(const TollSpec&, std::size_t) {}
    static unsigned precision(const TollSpec& toll) { return toll.field().precision_bits; }
};

struct OptionalScope {
    std::optional<PrecisionScope> scope;
    explicit OptionalScope(unsigned bits) {
        if (bits) scope.emplace(bits);
    }
};

void check_request(const TollSpec& toll, std::size_t N, unsigned K, const MomentCaps& caps) {
    if (N < 1) throw ArgumentError("N must be at least 1");
    if (K < 1) throw OrderError("K must be at least 1");
    if (N > caps.max_n) throw CapError("N=" + std::to_string(N) + " exceeds cap " + std::to_string(caps.max_n));
    if (K > caps.max_k) throw CapError("K=" + std::to_string(K) + " exceeds cap " + std::to_string(caps.max_k));
    if (N > toll.max_size())
        throw ArgumentError("custom toll defines only " + std::to_string(toll.max_size()) + " values");
}

// multinomial k!/(k1! k2! k3!) as a small table indexed [k][k1][k2]
std::vector<std::vector<std::vector<long long>>> multinomials(unsigned K) {
    std::vector<long long> fact(K + 1, 1);
    for (unsigned i = 1; i <= K; ++i) fact[i] = fact[i - 1] * i;
    std::vector<std::vector<std::vector<long long>>> m(K + 1);
    for (unsigned k = 0; k <= K; ++k) {
        m[k].assign(k + 1, std::vector<long long>(k + 1, 0));
        for (unsigned k1 = 0; k1 <= k; ++k1)
            for (unsigned k2 = 0; k1 + k2 <= k; ++k2)
                m[k][k1][k2] = fact[k] / (fact[k1] * fact[k2] * fact[k - k1 - k2]);
    }
    return m;
}

// Core recurrence on hat_n(k) = w_n E(X_n - g(n))^k. With g linear the
// toll of the centered variable is still b_n; otherwise it depends on the
// root split j and the slower per-j path is used.
template <class T>
MomentTable<T> run_moments(const TollSpec& toll, std::size_t N, unsigned K, CenteringKind centering,
                           const T& c0, const std::vector<T>& g) {
    MomentTable<T> table;
    table.toll = toll;
    table.N = N;
    table.K = K;
    table.centering = centering;
    table.c0 = c0;
    if (centering == CenteringKind::Profile) table.profile = g;

    const std::vector<T> w = catalan_weights<T>(N);
    std::vector<T> b(N + 1);
    for (std::size_t n = 1; n <= N; ++n) b[n] = toll.value<T>(n);

    // hat[k][n]
    std::vector<std::vector<T>> hat(K + 1, std::vector<T>(N + 1, T(0)));
    T x0 = centering == CenteringKind::None ? T(0)
           : centering == CenteringKind::Linear ? T(-c0)
                                                : T(-g[0]);
    hat[0][0] = 1;
    for (unsigned k = 1; k <= K; ++k) hat[k][0] = hat[k - 1][0] * x0;

    const auto multi = multinomials(K);
    const T quarter = T(1) / 4;
    const T half = T(1) / 2;

    // conv[k1][k2][k3] with k1 >= k2; k3 only used in the per-j path
    std::vector<std::vector<std::vector<T>>> conv(K + 1);
    for (unsigned k1 = 0; k1 <= K; ++k1) {
        conv[k1].resize(k1 + 1);
        for (unsigned k2 = 0; k2 <= k1 && k1 + k2 <= K; ++k2) conv[k1][k2].assign(K - k1 - k2 + 1, T(0));
    }
    auto cv = [&](unsigned k1, unsigned k2, unsigned k3) -> const T& {
        return k1 >= k2 ? conv[k1][k2][k3] : conv[k2][k1][k3];
    };

    const bool per_j = centering == CenteringKind::Profile;
    std::vector<T> bpow(K + 1);
    std::vector<T> tpow(K + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        if (!per_j) {
            conv[0][0][0] = 4 * w[n];
            for (unsigned k1 = 1; k1 <= K; ++k1)
                for (unsigned k2 = 0; k2 <= k1 && k1 + k2 <= K; ++k2)
                    conv[k1][k2][0] = conv_at(hat[k1], hat[k2], n);
            bpow[0] = 1;
            for (unsigned k = 1; k <= K; ++k) bpow[k] = bpow[k - 1] * b[n];
        } else {
            for (unsigned k1 = 0; k1 <= K; ++k1)
                for (unsigned k2 = 0; k2 <= k1 && k1 + k2 <= K; ++k2)
                    for (auto& v : conv[k1][k2]) v = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                T t = b[n] + g[j - 1] + g[n - j] - g[n];
                tpow[0] = 1;
                for (unsigned k = 1; k <= K; ++k) tpow[k] = tpow[k - 1] * t;
                for (unsigned k1 = 0; k1 <= K; ++k1)
                    for (unsigned k2 = 0; k2 <= k1 && k1 + k2 <= K; ++k2) {
                        T p = hat[k1][j - 1] * hat[k2][n - j];
                        auto& row = conv[k1][k2];
                        for (unsigned k3 = 0; k3 < row.size(); ++k3) row[k3] += p * tpow[k3];
                    }
            }
        }
        for (unsigned k = 1; k <= K; ++k) {
            T s = 0;
            for (unsigned k1 = 0; k1 < k; ++k1)
                for (unsigned k2 = 0; k2 < k && k1 + k2 <= k; ++k2) {
                    unsigned k3 = k - k1 - k2;
                    T term = per_j ? cv(k1, k2, k3) : T(cv(k1, k2, 0) * bpow[k3]);
                    s += T(multi[k][k1][k2]) * term;
                }
            // k1 = k or k2 = k contributes twice conv(k, 0) with no toll power
            if (per_j)
                hat[k][n] = s * quarter + half * cv(k, 0, 0);
            else
                hat[k][n] = s * quarter + half * conv[k][0][0];
        }
        hat[0][n] = w[n];
    }

    table.weights = w;
    table.values.assign(N + 1, std::vector<T>(K + 1));
    for (std::size_t n = 0; n <= N; ++n)
        for (unsigned k = 0; k <= K; ++k) table.values[n][k] = hat[k][n] / w[n];
    return table;
}

}  // namespace

template <class T>
std::vector<T> catalan_weights(std::size_t N) {
    std::vector<T> w(N + 1);
    w[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) w[n] = w[n - 1] * T(2 * n - 1) / T(2 * n + 2);
    return w;
}

template <>
std::vector<Rational> mean_profile<Rational>(const TollSpec& toll, std::size_t N) {
    FieldTraits<Rational>::check(toll, N);
    if (N > toll.max_size()) throw ArgumentError("custom toll too short");
    std::vector<BigInt> beta(N + 1);
    for (std::size_t n = 0; n <= N; ++n) beta[n] = catalan(static_cast<unsigned>(n));
    // s[n] = beta_n a_n
    std::vector<Rational> s(N + 1, Rational(0)), a(N + 1, Rational(0));
    for (std::size_t n = 1; n <= N; ++n) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= n; ++j) acc += s[j - 1] * Rational(beta[n - j]);
        s[n] = 2 * acc + Rational(beta[n]) * toll.value_rational(n);
        a[n] = s[n] / Rational(beta[n]);
    }
    return a;
}

template <>
std::vector<BigFloat> mean_profile<BigFloat>(const TollSpec& toll, std::size_t N) {
    if (N > toll.max_size()) throw ArgumentError("custom toll too short");
    PrecisionScope scope(toll.field().precision_bits);
    auto w = catalan_weights<BigFloat>(N);
    std::vector<BigFloat> s(N + 1, BigFloat(0)), a(N + 1, BigFloat(0));
    for (std::size_t n = 1; n <= N; ++n) {
        s[n] = conv_at(s, w, n) / 2 + w[n] * toll.value_big(n);
        a[n] = s[n] / w[n];
    }
    return a;
}

template <class T>
MomentTable<T> raw_moments(const TollSpec& toll, std::size_t N, unsigned K, const MomentCaps& caps) {
    check_request(toll, N, K, caps);
    FieldTraits<T>::check(toll, N);
    OptionalScope scope(FieldTraits<T>::precision(toll));
    return run_moments<T>(toll, N, K, CenteringKind::None, T(0), {});
}

template <class T>
MomentTable<T> centered_moments(const TollSpec& toll, const T& c0, std::size_t N, unsigned K,
                                const MomentCaps& caps) {
    check_request(toll, N, K, caps);
    FieldTraits<T>::check(toll, N);
    OptionalScope scope(FieldTraits<T>::precision(toll));
    return run_moments<T>(toll, N, K, CenteringKind::Linear, T(c0), {});
}

template <class T>
MomentTable<T> profile_centered_moments(const TollSpec& toll, const std::vector<T>& g, std::size_t N,
                                        unsigned K, const MomentCaps& caps) {
    check_request(toll, N, K, caps);
    FieldTraits<T>::check(toll, N);
    if (g.size() < N + 1) throw ArgumentError("centering profile must cover n = 0..N");
    OptionalScope scope(FieldTraits<T>::precision(toll));
    std::vector<T> gg(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(N + 1));
    return run_moments<T>(toll, N, K, CenteringKind::Profile, T(0), gg);
}

template <class T>
std::vector<T> variance_profile(const MomentTable<T>& table) {
    if (table.K < 2) throw OrderError("variance needs K >= 2");
    OptionalScope scope(FieldTraits<T>::precision(table.toll));
    std::vector<T> v(table.N + 1);
    for (std::size_t n = 0; n <= table.N; ++n) {
        const auto& r = table.values[n];
        v[n] = r[2] - r[1] * r[1];
    }
    return v;
}

template <class T>
std::vector<T> central_moment_profile(const MomentTable<T>& table, unsigned k) {
    if (k > table.K) throw OrderError("central moment order exceeds table order");
    OptionalScope scope(FieldTraits<T>::precision(table.toll));
    auto binom = binomial_table(k);
    std::vector<T> out(table.N + 1);
    for (std::size_t n = 0; n <= table.N; ++n) {
        const auto& r = table.values[n];
        T m = -r[1];
        T s = 0;
        T mp = 1;
        // sum_i C(k,i) E[Z^{k-i}] (-EZ)^i
        for (unsigned i = 0; i <= k; ++i) {
            s += T(binom[k][i]) * r[k - i] * mp;
            mp *= m;
        }
        out[n] = s;
    }
    return out;
}

template <class T>
MomentTable<T> uncenter(const MomentTable<T>& table) {
    MomentTable<T> out = table;
    out.centering = CenteringKind::None;
    out.profile.clear();
    out.c0 = 0;
    if (table.centering == CenteringKind::None) return out;
    OptionalScope scope(FieldTraits<T>::precision(table.toll));
    auto binom = binomial_table(table.K);
    for (std::size_t n = 0; n <= table.N; ++n) {
        T g = table.centering == CenteringKind::Linear ? T(table.c0 * T(n + 1)) : table.profile[n];
        const auto& r = table.values[n];
        for (unsigned k = 0; k <= table.K; ++k) {
            T s = 0;
            T gp = 1;
            for (unsigned i = 0; i <= k; ++i) {
                s += T(binom[k][i]) * r[k - i] * gp;
                gp *= g;
            }
            out.values[n][k] = s;
        }
    }
    return out;
}

AnyMomentTable compute_moments(const TollSpec& toll, std::size_t N, unsigned K, CenteringKind centering,
                               const std::string& c0, const MomentCaps& caps) {
    if (centering == CenteringKind::Profile)
        throw ArgumentError("profile centering needs an explicit sequence");
    Rational c = parse_rational(c0);
    if (toll.field().kind == FieldKind::Rational) {
        if (centering == CenteringKind::None) return raw_moments<Rational>(toll, N, K, caps);
        return centered_moments<Rational>(toll, c, N, K, caps);
    }
    PrecisionScope scope(toll.field().precision_bits);
    if (centering == CenteringKind::None) return raw_moments<BigFloat>(toll, N, K, caps);
    return centered_moments<BigFloat>(toll, BigFloat(c), N, K, caps);
}

std::string centering_name(CenteringKind c) {
    switch (c) {
        case CenteringKind::None: return "none";
        case CenteringKind::Linear: return "linear";
        case CenteringKind::Profile: return "profile";
    }
    return "?";
}

std::string format_value(const Rational& x) { return format_rational(x); }
std::string format_value(const BigFloat& x) { return format_big(x, 17); }

template <class T>
void write_csv(std::ostream& os, const MomentTable<T>& table) {
    os << "n,k,value\n";
    for (std::size_t n = 0; n <= table.N; ++n)
        for (unsigned k = 0; k <= table.K; ++k) os << n << ',' << k << ',' << format_value(table.values[n][k]) << '\n';
}

template <class T>
void write_json(std::ostream& os, const MomentTable<T>& table) {
    nlohmann::ordered_json j;
    j["toll"] = table.toll.describe();
    nlohmann::ordered_json c;
    c["kind"] = centering_name(table.centering);
    if (table.centering == CenteringKind::Linear) c["c0"] = format_value(table.c0);
    j["centering"] = c;
    constexpr bool exact = std::is_same_v<T, Rational>;
    j["field"] = exact ? "rational" : "float";
    if (!exact) j["precision_bits"] = table.toll.field().precision_bits;
    j["N"] = table.N;
    j["K"] = table.K;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n <= table.N; ++n) {
        auto row = nlohmann::ordered_json::array();
        for (unsigned k = 0; k <= table.K; ++k) {
            if constexpr (exact)
                row.push_back(format_value(table.values[n][k]));
            else
                row.push_back(table.values[n][k].template convert_to<double>());
        }
        rows.push_back(row);
    }
    j["values"] = rows;
    os << j.dump(1) << '\n';
}

#define TREEMOMENTS_INSTANTIATE(T)                                                                        \
    template std::vector<T> catalan_weights<T>(std::size_t);                                              \
    template MomentTable<T> raw_moments<T>(const TollSpec&, std::size_t, unsigned, const MomentCaps&);    \
    template MomentTable<T> centered_moments<T>(const TollSpec&, const T&, std::size_t, unsigned,         \
                                                const MomentCaps&);                                       \
    template MomentTable<T> profile_centered_moments<T>(const TollSpec&, const std::vector<T>&,           \
                                                        std::size_t, unsigned, const MomentCaps&);        \
    template std::vector<T> variance_profile<T>(const MomentTable<T>&);                                   \
    template std::vector<T> central_moment_profile<T>(const MomentTable<T>&, unsigned);                   \
    template MomentTable<T> uncenter<T>(const MomentTable<T>&);                                           \
    template void write_csv<T>(std::ostream&, const MomentTable<T>&);                                     \
    template void write_json<T>(std::ostream&, const MomentTable<T>&);

TREEMOMENTS_INSTANTIATE(Rational)
TREEMOMENTS_INSTANTIATE(BigFloat)

#undef TREEMOMENTS_INSTANTIATE

}  // namespace treemoments
