#pragma once

#include <functional>
#include <vector>

namespace treemoments {

struct QuadratureSpec {
    double tolerance = 1e-12;  // absolute
    unsigned max_levels = 12;
    static constexpr unsigned kLevelCap = 20;
    void validate() const;
};

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    unsigned levels = 0;
    std::vector<double> level_errors;  // |I_l - I_{l-1}| for l = 1..levels
};

// Integrand on (0,1) given log x and log(1-x) (both accurate near the
// endpoints); returns log|f| and the sign of f.
struct LogValue {
    double log_abs;
    int sign;
};
using LogIntegrand = std::function<LogValue(double log_x, double log_y)>;

// Tanh-sinh quadrature over (0,1) with step halving.
QuadratureResult tanh_sinh(const LogIntegrand& f, const QuadratureSpec& spec = {});

// J_{k1,k2,k3} = int_0^1 x^{k1 a - 3/2} (1-x)^{k2 a - 3/2} B(x)^{k3} dx with
// a = alpha + 1/2, B = x^a + (1-x)^a - 1, or for alpha = 1/2
// B = x log x + (1-x) log(1-x).
QuadratureResult j_integral(unsigned k1, unsigned k2, unsigned k3, double alpha, const QuadratureSpec& spec = {});

// Gamma(k1 a - 1/2) Gamma(k2 a - 1/2) / Gamma((k1+k2) a - 1), a = alpha + 1/2.
double j_beta_closed_form(unsigned k1, unsigned k2, double alpha);

struct CenteredMomentSeq {
    double alpha = 0;
    bool half = false;
    std::vector<double> m;  // m_0..m_K
};

CenteredMomentSeq mk_sequence(double alpha, unsigned K, const QuadratureSpec& spec = {});
CenteredMomentSeq mk_sequence_half(unsigned K, const QuadratureSpec& spec = {});

}  // namespace treemoments
