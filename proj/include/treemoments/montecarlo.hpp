#pragma once

#include "treemoments/toll.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace treemoments {

enum class Standardization {
    Exact,      // (X - E X) / sqrt(Var X) with DP moments, empirical if out of DP range
    Empirical,  // sample mean and variance
};

struct ExperimentSpec {
    TollSpec toll = TollSpec::power(1.0);
    std::size_t n = 1;
    std::size_t samples = 1;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    unsigned K = 4;
    Standardization standardization = Standardization::Exact;
    std::size_t block_size = 1024;  // samples per RNG stream
    std::size_t dp_limit = 8192;    // largest n for exact targets
    unsigned histogram_bins = 40;
    double histogram_range = 4.0;   // standardized values in [-range, range]
    void validate() const;
};

struct MomentEstimate {
    double value = 0;
    double std_error = 0;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<MomentEstimate> raw;           // E X^k, k = 0..K
    std::vector<MomentEstimate> standardized;  // E W^k
    std::vector<MomentEstimate> scaled;        // E (X / n^{alpha+1/2})^k for power tolls
    std::optional<std::vector<double>> exact_raw;
    std::optional<std::vector<double>> exact_standardized;
    std::optional<std::vector<double>> limit_scaled;        // E Y^k
    std::optional<std::vector<double>> limit_standardized;  // standardized limit moments
    double center = 0;
    double scale = 1;
    bool exact_standardization = false;
    std::vector<double> histogram_edges;
    std::vector<std::size_t> histogram_counts;
    std::size_t below_range = 0;
    std::size_t above_range = 0;
};

// The i-th sample always uses the stream of its block, so the report does
// not depend on the worker count.
ExperimentReport run_experiment(const ExperimentSpec& spec);

// Per-sample values in sample order (exposed for tests).
std::vector<double> sample_values(const ExperimentSpec& spec);

void write_json(std::ostream& os, const ExperimentReport& report);
void write_histogram_csv(std::ostream& os, const ExperimentReport& report);

}  // namespace treemoments
