#pragma once

#include "treemoments/numeric.hpp"

#include <string>
#include <vector>

namespace treemoments {

enum class TollKind { Power, Log, PathLength, Custom };
enum class FieldKind { Rational, Float };

struct NumericField {
    FieldKind kind = FieldKind::Float;
    unsigned precision_bits = kDefaultPrecisionBits;
};

// The toll sequence b_n driving an additive functional.
class TollSpec {
public:
    static TollSpec power(double alpha, NumericField field = {});
    static TollSpec log(NumericField field = {});
    static TollSpec path_length(NumericField field = {});
    // values[i] is b_{i+1}
    static TollSpec custom(std::vector<Rational> values, NumericField field = {});

    // "pow:1", "pow:0.25", "log", "path", "custom:1,0,0"
    static TollSpec parse(const std::string& text, NumericField field = {});

    TollKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const std::vector<Rational>& custom_values() const { return custom_; }
    const NumericField& field() const { return field_; }
    TollSpec with_field(NumericField f) const;

    // Largest n with b_n defined (unbounded for the built-in tolls).
    std::size_t max_size() const;
    bool is_rational() const;
    std::string describe() const;

    Rational value_rational(std::size_t n) const;
    BigFloat value_big(std::size_t n) const;
    double value_double(std::size_t n) const;

    template <class T>
    T value(std::size_t n) const;

    // b_0..b_n in double; b_0 is 0.
    std::vector<double> table_double(std::size_t n) const;

private:
    TollKind kind_ = TollKind::Power;
    double alpha_ = 1.0;
    std::vector<Rational> custom_;
    NumericField field_;
    void check_size(std::size_t n) const;
};

template <>
inline Rational TollSpec::value<Rational>(std::size_t n) const { return value_rational(n); }
template <>
inline BigFloat TollSpec::value<BigFloat>(std::size_t n) const { return value_big(n); }
template <>
inline double TollSpec::value<double>(std::size_t n) const { return value_double(n); }

}  // namespace treemoments
