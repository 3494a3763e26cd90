#include "treemoments/toll.hpp"

#include "treemoments/errors.hpp"

#include <cmath>
#include <sstream>

namespace treemoments {

TollSpec TollSpec::power(double alpha, NumericField field) {
    if (!(alpha > 0) || !std::isfinite(alpha))
        throw ArgumentError("power toll needs alpha > 0");
    TollSpec t;
    t.kind_ = TollKind::Power;
    t.alpha_ = alpha;
    t.field_ = field;
    return t;
}

TollSpec TollSpec::log(NumericField field) {
    TollSpec t;
    t.kind_ = TollKind::Log;
    t.field_ = field;
    return t;
}

TollSpec TollSpec::path_length(NumericField field) {
    TollSpec t;
    t.kind_ = TollKind::PathLength;
    t.field_ = field;
    return t;
}

TollSpec TollSpec::custom(std::vector<Rational> values, NumericField field) {
    TollSpec t;
    t.kind_ = TollKind::Custom;
    t.custom_ = std::move(values);
    t.field_ = field;
    return t;
}

TollSpec TollSpec::parse(const std::string& text, NumericField field) {
    if (text == "log") return log(field);
    if (text == "path" || text == "path-length" || text == "pathlength") return path_length(field);
    if (text.rfind("pow:", 0) == 0) {
        std::string a = text.substr(4);
        double alpha;
        try {
            std::size_t used = 0;
            alpha = std::stod(a, &used);
            if (used != a.size()) throw std::invalid_argument(a);
        } catch (const std::exception&) {
            throw ArgumentError("bad power exponent in '" + text + "'");
        }
        return power(alpha, field);
    }
    if (text.rfind("custom:", 0) == 0) {
        std::vector<Rational> v;
        std::stringstream ss(text.substr(7));
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
        if (v.empty()) throw ArgumentError("custom toll needs at least one value");
        return custom(std::move(v), field);
    }
    throw ArgumentError("unknown toll '" + text + "' (expected pow:A, log, path or custom:b1,b2,...)");
}

TollSpec TollSpec::with_field(NumericField f) const {
    TollSpec t = *this;
    t.field_ = f;
    return t;
}

std::size_t TollSpec::max_size() const {
    return kind_ == TollKind::Custom ? custom_.size() : static_cast<std::size_t>(-1);
}

bool TollSpec::is_rational() const {
    switch (kind_) {
        case TollKind::Power: return alpha_ == std::floor(alpha_) && alpha_ <= 64;
        case TollKind::Log: return false;
        case TollKind::PathLength: return true;
        case TollKind::Custom: return true;
    }
    return false;
}

std::string TollSpec::describe() const {
    switch (kind_) {
        case TollKind::Power: {
            std::ostringstream os;
            os.imbue(std::locale::classic());
            os.precision(17);
            os << "pow:" << alpha_;
            return os.str();
        }
        case TollKind::Log: return "log";
        case TollKind::PathLength: return "path";
        case TollKind::Custom: {
            std::string s = "custom:";
            for (std::size_t i = 0; i < custom_.size(); ++i) {
                if (i) s += ",";
                s += format_rational(custom_[i]);
            }
            return s;
        }
    }
    return "?";
}

void TollSpec::check_size(std::size_t n) const {
    if (kind_ == TollKind::Custom && n > custom_.size())
        throw ArgumentError("custom toll defines b_1..b_" + std::to_string(custom_.size()) +
                            " but b_" + std::to_string(n) + " is needed");
}

Rational TollSpec::value_rational(std::size_t n) const {
    if (n == 0) return 0;
    check_size(n);
    switch (kind_) {
        case TollKind::Power: {
            if (!is_rational()) throw FieldError("toll " + describe() + " is not rational");
            BigInt r;
            mpz_ui_pow_ui(r.backend().data(), n, static_cast<unsigned long>(alpha_));
            return Rational(r);
        }
        case TollKind::Log: throw FieldError("toll log is not rational");
        case TollKind::PathLength: return Rational(static_cast<long long>(n) - 1);
        case TollKind::Custom: return custom_[n - 1];
    }
    return 0;
}

BigFloat TollSpec::value_big(std::size_t n) const {
    if (n == 0) return BigFloat(0);
    check_size(n);
    switch (kind_) {
        case TollKind::Power:
            if (alpha_ == std::floor(alpha_)) return BigFloat(value_rational(n));
            return boost::multiprecision::pow(BigFloat(n), BigFloat(alpha_));
        case TollKind::Log: return boost::multiprecision::log(BigFloat(n));
        case TollKind::PathLength: return BigFloat(static_cast<long long>(n) - 1);
        case TollKind::Custom: return BigFloat(custom_[n - 1]);
    }
    return BigFloat(0);
}

double TollSpec::value_double(std::size_t n) const {
    if (n == 0) return 0.0;
    check_size(n);
    switch (kind_) {
        case TollKind::Power: return std::pow(static_cast<double>(n), alpha_);
        case TollKind::Log: return std::log(static_cast<double>(n));
        case TollKind::PathLength: return static_cast<double>(n) - 1.0;
        case TollKind::Custom: return custom_[n - 1].convert_to<double>();
    }
    return 0.0;
}

std::vector<double> TollSpec::table_double(std::size_t n) const {
    check_size(n);
    std::vector<double> t(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) t[i] = value_double(i);
    return t;
}

}  // namespace treemoments
