#pragma once

#include "treemoments/numeric.hpp"
#include "treemoments/toll.hpp"

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace treemoments {

enum class CenteringKind { None, Linear, Profile };

struct MomentCaps {
    std::size_t max_n = 8192;
    unsigned max_k = 6;
};

// Moments of X_n (raw) or of X_n - g(n) (centered) for 0 <= n <= N, 0 <= k <= K.
// Linear centering uses g(n) = c0 (n+1).
template <class T>
struct MomentTable {
    TollSpec toll;
    std::size_t N = 0;
    unsigned K = 0;
    CenteringKind centering = CenteringKind::None;
    T c0 = 0;
    std::vector<T> profile;  // g(0..N) when centering is Profile
    std::vector<std::vector<T>> values;  // values[n][k]
    std::vector<T> weights;  // catalan(n) / 4^n

    const T& at(std::size_t n, unsigned k) const { return values[n][k]; }
};

using ExactTable = MomentTable<Rational>;
using FloatTable = MomentTable<BigFloat>;

// catalan(n) / 4^n for n = 0..N, via w_n = w_{n-1} (2n-1)/(2n+2).
template <class T>
std::vector<T> catalan_weights(std::size_t N);

// a_0..a_N with a_0 = 0. The rational version runs the recurrence on exact
// Catalan numbers; the float version on the normalized weights.
template <class T>
std::vector<T> mean_profile(const TollSpec& toll, std::size_t N);

template <class T>
MomentTable<T> raw_moments(const TollSpec& toll, std::size_t N, unsigned K, const MomentCaps& caps = {});

template <class T>
MomentTable<T> centered_moments(const TollSpec& toll, const T& c0, std::size_t N, unsigned K,
                                const MomentCaps& caps = {});

// Centering by an arbitrary sequence g(0..N).
template <class T>
MomentTable<T> profile_centered_moments(const TollSpec& toll, const std::vector<T>& g, std::size_t N,
                                        unsigned K, const MomentCaps& caps = {});

// Var X_n for n = 0..N; independent of the centering.
template <class T>
std::vector<T> variance_profile(const MomentTable<T>& table);

// E (X_n - E X_n)^k for n = 0..N, k <= K; independent of the centering.
template <class T>
std::vector<T> central_moment_profile(const MomentTable<T>& table, unsigned k);

// Undo a linear or profile centering: raw moments from a centered table.
template <class T>
MomentTable<T> uncenter(const MomentTable<T>& table);

using AnyMomentTable = std::variant<ExactTable, FloatTable>;

// Picks the field from the toll's hint; rational requests for irrational
// tolls raise FieldError. c0 is parsed as an exact rational.
AnyMomentTable compute_moments(const TollSpec& toll, std::size_t N, unsigned K, CenteringKind centering,
                               const std::string& c0 = "0", const MomentCaps& caps = {});

std::string centering_name(CenteringKind c);

template <class T>
void write_csv(std::ostream& os, const MomentTable<T>& table);
template <class T>
void write_json(std::ostream& os, const MomentTable<T>& table);

std::string format_value(const Rational& x);
std::string format_value(const BigFloat& x);

}  // namespace treemoments
