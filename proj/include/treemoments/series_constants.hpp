#pragma once

#include "treemoments/toll.hpp"

#include <cstddef>
#include <ostream>
#include <string>

namespace treemoments {

struct SeriesConstant {
    std::string name;      // "C0", "D0", "D1", "K"
    std::string toll;      // context, empty when not toll dependent
    double value = 0;
    double bound = 0;      // truncation plus rounding bound
    std::size_t cutoff = 0;  // terms summed directly
    unsigned tail_terms = 0; // correction terms in the tail expansion
};

struct SeriesOptions {
    std::size_t cutoff = 0;     // 0: pick the smallest power-of-two multiple of 1000 meeting tol
    unsigned tail_terms = 3;    // corrections after the leading n^{-3/2}
};

// sum_n b_n catalan(n)/4^n for Power(alpha < 1/2), Log, or a finite Custom toll.
SeriesConstant c0_constant(const TollSpec& toll, double tol = 1e-10, const SeriesOptions& opt = {});
// sum_n n^{1/2} (catalan(n)/4^n - n^{-3/2}/sqrt(pi))
SeriesConstant d0_constant(double tol = 1e-10, const SeriesOptions& opt = {});
// (2 log 2 + gamma + sqrt(pi) D0) / sqrt(pi)
SeriesConstant d1_constant(double tol = 1e-10, const SeriesOptions& opt = {});
double d1_from_d0(double d0);
// sum_n (log n)^2 catalan(n)/4^n
SeriesConstant k_constant(double tol = 1e-10, const SeriesOptions& opt = {});

void write_json(std::ostream& os, const SeriesConstant& c);

}  // namespace treemoments
