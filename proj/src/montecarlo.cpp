#include "treemoments/montecarlo.hpp"

#include "treemoments/errors.hpp"
#include "treemoments/exact_moments.hpp"
#include "treemoments/integrals.hpp"
#include "treemoments/limit_law.hpp"
#include "treemoments/rng.hpp"
#include "treemoments/tree.hpp"

#include "json.hpp"

#include <cmath>
#include <thread>

namespace treemoments {

void ExperimentSpec::validate() const {
    if (n < 1) throw ArgumentError("n must be at least 1");
    if (samples < 1) throw ArgumentError("sample count must be at least 1");
    if (workers < 1) throw ArgumentError("worker count must be at least 1");
    if (K < 2) throw OrderError("K must be at least 2");
    if (block_size < 1) throw ArgumentError("block size must be positive");
    if (histogram_bins < 1 || !(histogram_range > 0)) throw ArgumentError("bad histogram settings");
    if (n > toll.max_size()) throw ArgumentError("custom toll shorter than n");
}

std::vector<double> sample_values(const ExperimentSpec& spec) {
    spec.validate();
    const std::vector<double> table = spec.toll.table_double(spec.n);
    std::vector<double> values(spec.samples);
    const std::size_t blocks = (spec.samples + spec.block_size - 1) / spec.block_size;
    auto work = [&](unsigned w) {
        for (std::size_t b = w; b < blocks; b += spec.workers) {
            CounterRng rng(CounterRng::derive(spec.seed, b));
            const std::size_t end = std::min(spec.samples, (b + 1) * spec.block_size);
            for (std::size_t i = b * spec.block_size; i < end; ++i)
                values[i] = evaluate_functional(sample_uniform(spec.n, rng), table);
        }
    };
    if (spec.workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < spec.workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return values;
}

namespace {

std::vector<MomentEstimate> moments_of(const std::vector<double>& xs, unsigned K, double center, double scale) {
    std::vector<CompensatedSum<double>> s(K + 1), s2(K + 1);
    for (double x : xs) {
        const double z = (x - center) / scale;
        double p = 1;
        for (unsigned k = 0; k <= K; ++k) {
            s[k].add(p);
            s2[k].add(p * p);
            p *= z;
        }
    }
    const double S = static_cast<double>(xs.size());
    std::vector<MomentEstimate> out(K + 1);
    for (unsigned k = 0; k <= K; ++k) {
        const double m = s[k].value() / S;
        const double var = std::max(0.0, s2[k].value() / S - m * m);
        out[k] = {m, S > 1 ? std::sqrt(var / (S - 1)) : 0.0};
    }
    return out;
}

// E W^k from central moments E (X - EX)^k
std::vector<double> standardize(const std::vector<double>& central) {
    std::vector<double> out(central.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = central[k] / std::pow(central[2], k / 2.0);
    return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentReport rep;
    rep.spec = spec;
    const std::vector<double> xs = sample_values(spec);
    const unsigned K = spec.K;
    rep.raw = moments_of(xs, K, 0.0, 1.0);

    // exact targets from the DP
    std::optional<std::vector<double>> exact_central;
    if (spec.n <= spec.dp_limit && K <= 6) {
        TollSpec t = spec.toll.with_field({FieldKind::Float, kDefaultPrecisionBits});
        PrecisionScope scope(kDefaultPrecisionBits);
        auto table = raw_moments<BigFloat>(t, spec.n, K, MomentCaps{spec.dp_limit, 6});
        std::vector<double> raw(K + 1), central(K + 1);
        for (unsigned k = 0; k <= K; ++k) {
            raw[k] = table.at(spec.n, k).convert_to<double>();
            central[k] = central_moment_profile(table, k)[spec.n].convert_to<double>();
        }
        rep.exact_raw = raw;
        exact_central = central;
    }

    const double emp_mean = rep.raw[1].value;
    const double emp_var = std::max(0.0, rep.raw[2].value - emp_mean * emp_mean);
    if (spec.standardization == Standardization::Exact && exact_central) {
        rep.center = (*rep.exact_raw)[1];
        rep.scale = std::sqrt((*exact_central)[2]);
        rep.exact_standardization = true;
        rep.exact_standardized = standardize(*exact_central);
    } else {
        rep.center = emp_mean;
        rep.scale = std::sqrt(emp_var);
    }
    // degenerate distributions (e.g. n = 2 with toll n) standardize by 1
    if (!(rep.scale > 0)) rep.scale = 1;
    rep.standardized = moments_of(xs, K, rep.center, rep.scale);

    // limit targets
    const TollKind kind = spec.toll.kind();
    if (kind == TollKind::Log) {
        std::vector<double> g(K + 1, 0.0);
        for (unsigned k = 0; k <= K; k += 2) {
            double v = 1;
            for (unsigned i = 1; i < k; i += 2) v *= i;
            g[k] = v;
        }
        rep.limit_standardized = g;
    } else if (kind == TollKind::Power || kind == TollKind::PathLength) {
        const double alpha = kind == TollKind::Power ? spec.toll.alpha() : 1.0;
        if (alpha != 0.5) {
            LimitLaw law = limit_law(alpha, K);
            std::vector<double> ey(K + 1), central(K + 1);
            for (unsigned k = 0; k <= K; ++k) {
                ey[k] = law.moments[k].convert_to<double>();
                central[k] = law.central[k].convert_to<double>();
            }
            rep.limit_standardized = standardize(central);
            // the raw scaling only has a limit when alpha > 1/2
            if (alpha > 0.5) {
                rep.limit_scaled = ey;
                rep.scaled = moments_of(xs, K, 0.0, std::pow(static_cast<double>(spec.n), alpha + 0.5));
            }
        } else {
            auto m = mk_sequence_half(K);
            rep.limit_standardized = standardize(m.m);
        }
    }

    const unsigned bins = spec.histogram_bins;
    const double lo = -spec.histogram_range, hi = spec.histogram_range;
    rep.histogram_edges.resize(bins + 1);
    for (unsigned i = 0; i <= bins; ++i) rep.histogram_edges[i] = lo + (hi - lo) * i / bins;
    rep.histogram_counts.assign(bins, 0);
    for (double x : xs) {
        const double z = (x - rep.center) / rep.scale;
        if (z < lo) {
            ++rep.below_range;
        } else if (z >= hi) {
            ++rep.above_range;
        } else {
            auto b = static_cast<unsigned>((z - lo) / (hi - lo) * bins);
            rep.histogram_counts[std::min(b, bins - 1)]++;
        }
    }
    return rep;
}

namespace {

nlohmann::ordered_json estimates_json(const std::vector<MomentEstimate>& v) {
    auto a = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < v.size(); ++k)
        a.push_back({{"k", k}, {"value", v[k].value}, {"std_error", v[k].std_error}});
    return a;
}

}  // namespace

void write_json(std::ostream& os, const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["toll"] = r.spec.toll.describe();
    j["n"] = r.spec.n;
    j["samples"] = r.spec.samples;
    j["seed"] = r.spec.seed;
    j["workers"] = r.spec.workers;
    j["K"] = r.spec.K;
    j["standardization"] = r.exact_standardization ? "exact" : "empirical";
    j["center"] = r.center;
    j["scale"] = r.scale;
    j["raw"] = estimates_json(r.raw);
    j["standardized"] = estimates_json(r.standardized);
    if (!r.scaled.empty()) j["scaled"] = estimates_json(r.scaled);
    if (r.exact_raw) j["exact_raw"] = *r.exact_raw;
    if (r.exact_standardized) j["exact_standardized"] = *r.exact_standardized;
    if (r.limit_scaled) j["limit_scaled"] = *r.limit_scaled;
    if (r.limit_standardized) j["limit_standardized"] = *r.limit_standardized;
    j["histogram"] = {{"bins", r.histogram_counts.size()},
                      {"range", r.spec.histogram_range},
                      {"below", r.below_range},
                      {"above", r.above_range}};
    os << j.dump(1) << '\n';
}

void write_histogram_csv(std::ostream& os, const ExperimentReport& r) {
    os << "bin,count\n";
    for (std::size_t i = 0; i < r.histogram_counts.size(); ++i) {
        const double center = (r.histogram_edges[i] + r.histogram_edges[i + 1]) / 2;
        os << format_double(center) << ',' << r.histogram_counts[i] << '\n';
    }
}

}  // namespace treemoments
