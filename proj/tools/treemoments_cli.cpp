#include "treemoments/errors.hpp"
#include "treemoments/exact_moments.hpp"
#include "treemoments/integrals.hpp"
#include "treemoments/limit_law.hpp"
#include "treemoments/montecarlo.hpp"
#include "treemoments/polylog.hpp"
#include "treemoments/series_constants.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace treemoments;
using json = nlohmann::ordered_json;

namespace {

struct Output {
    std::string format = "csv";
    std::string path;
};

void add_output(CLI::App* cmd, Output& out, const std::string& default_format) {
    out.format = default_format;
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out.path, "Write to this file instead of stdout");
}

void emit(const Output& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.path);
    if (!f) throw ArgumentError("cannot open output file '" + out.path + "'");
    f << text;
}

std::string fmt(const BigFloat& x) { return format_big(x, 17); }

// ---- exact

struct ExactArgs {
    std::string toll;
    std::size_t n = 10;
    unsigned k = 2;
    std::string field = "float";
    unsigned precision = kDefaultPrecisionBits;
    std::string centering = "none";
    std::string c0 = "0";
    Output out;
};

int run_exact(const ExactArgs& a) {
    NumericField field{a.field == "rational" ? FieldKind::Rational : FieldKind::Float, a.precision};
    TollSpec toll = TollSpec::parse(a.toll, field);
    CenteringKind c = a.centering == "linear" ? CenteringKind::Linear : CenteringKind::None;
    if (c == CenteringKind::None && a.c0 != "0") throw ArgumentError("--c0 needs --centering linear");
    AnyMomentTable table = compute_moments(toll, a.n, a.k, c, a.c0);
    std::ostringstream os;
    std::visit(
        [&](const auto& t) {
            if (a.out.format == "json")
                write_json(os, t);
            else
                write_csv(os, t);
        },
        table);
    emit(a.out, os.str());
    return 0;
}

// ---- limit

struct LimitArgs {
    double alpha = 1;
    bool shape = false;
    unsigned k = 6;
    std::string mode = "eq49";
    Output out;
};

int run_limit(const LimitArgs& a, bool alpha_given) {
    if (a.shape == alpha_given) throw ArgumentError("give exactly one of --alpha and --shape");
    std::ostringstream os;
    if (a.shape) {
        ShapeLimit s = shape_limit_moments(a.k);
        if (a.out.format == "json") {
            json j;
            j["law"] = "shape";
            j["sigma2"] = s.sigma2.convert_to<double>();
            json m = json::array();
            for (auto& v : s.moments) m.push_back(v.convert_to<double>());
            j["moments"] = m;
            json c = json::array();
            for (std::size_t i = 1; i < s.c2k0.size(); ++i) c.push_back(s.c2k0[i].convert_to<double>());
            j["C2k0"] = c;
            os << j.dump(1) << '\n';
        } else {
            os << "quantity,k,value\n";
            os << "sigma2,," << fmt(s.sigma2) << '\n';
            for (unsigned k = 0; k < s.moments.size(); ++k) os << "moment," << k << ',' << fmt(s.moments[k]) << '\n';
            for (unsigned k = 1; k < s.c2k0.size(); ++k) os << "C2k0," << 2 * k << ',' << fmt(s.c2k0[k]) << '\n';
        }
        emit(a.out, os.str());
        return 0;
    }
    if (!(a.alpha > 0)) throw ArgumentError("--alpha must be positive");
    if (a.mode == "mk") {
        CenteredMomentSeq m = a.alpha == 0.5 ? mk_sequence_half(a.k) : mk_sequence(a.alpha, a.k);
        if (a.out.format == "json") {
            json j;
            j["alpha"] = a.alpha;
            j["mode"] = "mk";
            j["m"] = m.m;
            j["sigma2"] = m.m.size() > 2 ? m.m[2] : NAN;
            os << j.dump(1) << '\n';
        } else {
            os << "quantity,k,value\n";
            for (unsigned k = 0; k < m.m.size(); ++k) os << "m," << k << ',' << format_double(m.m[k]) << '\n';
            if (m.m.size() > 2) os << "sigma2,," << format_double(m.m[2]) << '\n';
        }
        emit(a.out, os.str());
        return 0;
    }
    if (a.alpha == 0.5)
        throw ArgumentError("alpha = 1/2 has no eq49 normalization; use --mode mk for the centred moments");
    LimitLaw law = limit_law(a.alpha, a.k);
    std::vector<ExactMoment> exact;
    std::vector<Rational> exact_c;
    const bool integer_alpha = a.alpha == std::floor(a.alpha) && a.alpha <= 64;
    if (integer_alpha) {
        exact = limit_moments_exact(static_cast<unsigned>(a.alpha), a.k);
        exact_c = ck_sequence_exact(static_cast<unsigned>(a.alpha), a.k);
    }
    auto exact_text = [&](unsigned k) {
        std::string s = format_rational(exact[k].coefficient);
        return exact[k].sqrt_pi_power ? s + "*sqrt(pi)" : s;
    };
    if (a.out.format == "json") {
        json j;
        j["alpha"] = a.alpha;
        j["mode"] = "eq49";
        j["sigma2"] = law.sigma2.convert_to<double>();
        json rows = json::array();
        for (unsigned k = 1; k <= a.k; ++k) {
            json r;
            r["k"] = k;
            r["C"] = law.C[k].convert_to<double>();
            r["EY"] = law.moments[k].convert_to<double>();
            r["central"] = law.central[k].convert_to<double>();
            if (integer_alpha) {
                r["C_exact"] = format_rational(exact_c[k]);
                r["EY_exact"] = exact_text(k);
            }
            rows.push_back(r);
        }
        j["moments"] = rows;
        os << j.dump(1) << '\n';
    } else {
        os << "k,C,EY,central" << (integer_alpha ? ",C_exact,EY_exact" : "") << '\n';
        for (unsigned k = 1; k <= a.k; ++k) {
            os << k << ',' << fmt(law.C[k]) << ',' << fmt(law.moments[k]) << ',' << fmt(law.central[k]);
            if (integer_alpha) os << ',' << format_rational(exact_c[k]) << ',' << exact_text(k);
            os << '\n';
        }
        os << "sigma2,,," << fmt(law.sigma2) << (integer_alpha ? ",," : "") << '\n';
    }
    emit(a.out, os.str());
    return 0;
}

// ---- figures

struct FigureArgs {
    std::string which = "variance";
    double from = 0.1, to = 3.0, step = 0.1;
    std::vector<double> grid;
    Output out;
};

int run_figures(const FigureArgs& a) {
    std::vector<double> grid = a.grid;
    if (grid.empty()) {
        if (!(a.step > 0)) throw ArgumentError("--step must be positive");
        const long count = static_cast<long>(std::floor((a.to - a.from) / a.step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) grid.push_back(a.from + a.step * static_cast<double>(i));
    }
    if (grid.empty()) throw ArgumentError("empty alpha grid");
    for (double x : grid)
        if (!(x > 0)) throw ArgumentError("grid values must be positive");
    std::ostringstream os;
    const std::string column = a.which == "variance" ? "sigma2" : "third_central_moment";
    json rows = json::array();
    if (a.out.format == "csv") os << "alpha," << column << '\n';
    for (double x : grid) {
        double v;
        if (std::abs(x - 0.5) < 1e-12)
            v = a.which == "variance" ? sigma_sq_half().convert_to<double>() : mk_sequence_half(3).m[3];
        else
            v = (a.which == "variance" ? sigma_sq(x) : limit_law(x, 3).central[3]).convert_to<double>();
        if (a.out.format == "csv")
            os << format_double(x) << ',' << format_double(v) << '\n';
        else
            rows.push_back({{"alpha", x}, {column, v}});
    }
    if (a.out.format == "json") os << json{{"figure", a.which}, {"rows", rows}}.dump(1) << '\n';
    emit(a.out, os.str());
    return 0;
}

// ---- constants

struct ConstantArgs {
    std::string name;
    std::string toll = "log";
    double tol = 1e-10;
    std::size_t cutoff = 0;
    unsigned tail_terms = 3;
    Output out;
};

int run_constants(const ConstantArgs& a) {
    SeriesOptions opt;
    opt.cutoff = a.cutoff;
    opt.tail_terms = a.tail_terms;
    SeriesConstant c;
    if (a.name == "c0")
        c = c0_constant(TollSpec::parse(a.toll), a.tol, opt);
    else if (a.name == "d0")
        c = d0_constant(a.tol, opt);
    else if (a.name == "d1")
        c = d1_constant(a.tol, opt);
    else
        c = k_constant(a.tol, opt);
    std::ostringstream os;
    if (a.out.format == "json") {
        write_json(os, c);
    } else {
        os << "name,toll,value,bound,cutoff\n"
           << c.name << ',' << c.toll << ',' << format_double(c.value) << ',' << format_double(c.bound) << ','
           << c.cutoff << '\n';
    }
    emit(a.out, os.str());
    return 0;
}

// ---- sample

struct SampleArgs {
    std::string toll;
    std::size_t n = 0;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    unsigned k = 4;
    std::string standardization = "exact";
    std::string histogram;
    Output out;
};

int run_sample(const SampleArgs& a) {
    ExperimentSpec spec;
    spec.toll = TollSpec::parse(a.toll);
    spec.n = a.n;
    spec.samples = a.samples;
    spec.seed = a.seed;
    spec.workers = a.workers;
    spec.K = a.k;
    spec.standardization = a.standardization == "exact" ? Standardization::Exact : Standardization::Empirical;
    ExperimentReport rep = run_experiment(spec);
    std::ostringstream os;
    if (a.out.format == "json") {
        write_json(os, rep);
    } else {
        os << "quantity,k,value,std_error\n";
        for (unsigned k = 0; k <= a.k; ++k)
            os << "raw," << k << ',' << format_double(rep.raw[k].value) << ',' << format_double(rep.raw[k].std_error) << '\n';
        for (unsigned k = 0; k <= a.k; ++k)
            os << "standardized," << k << ',' << format_double(rep.standardized[k].value) << ','
               << format_double(rep.standardized[k].std_error) << '\n';
    }
    emit(a.out, os.str());
    if (!a.histogram.empty()) {
        std::ostringstream hs;
        write_histogram_csv(hs, rep);
        emit(Output{"csv", a.histogram}, hs.str());
    }
    return 0;
}

// ---- polylog-check

struct PolylogArgs {
    double alpha = 0.5;
    unsigned r = 0;
    std::vector<double> grid;
    bool reconstruction = false;
    Output out;
};

int run_polylog(const PolylogArgs& a) {
    std::vector<double> grid = a.grid.empty() ? default_residual_grid() : a.grid;
    ResidualReport rep = a.reconstruction ? reconstruction_check(a.alpha, a.r, grid)
                                          : expansion_residual_check({a.alpha, a.r}, li_expansion({a.alpha, a.r}), grid);
    std::ostringstream os;
    const char* verdict = rep.passed ? "PASS" : "FAIL";
    if (a.out.format == "json") {
        json j;
        j["alpha"] = a.alpha;
        j["r"] = a.r;
        j["check"] = a.reconstruction ? "reconstruction" : "expansion";
        j["z"] = rep.z;
        j["residual"] = rep.residual;
        j["ratio"] = rep.ratio;
        j["tail_slope"] = rep.tail_slope;
        j["verdict"] = verdict;
        os << j.dump(1) << '\n';
    } else {
        os << "z,residual,ratio\n";
        for (std::size_t i = 0; i < rep.z.size(); ++i)
            os << format_double(rep.z[i]) << ',' << format_double(rep.residual[i]) << ',' << format_double(rep.ratio[i])
               << '\n';
        std::cerr << verdict << " tail slope " << format_double(rep.tail_slope) << '\n';
    }
    emit(a.out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moments of additive functionals on random binary trees"};
    app.require_subcommand(1);

    ExactArgs ea;
    auto* exact = app.add_subcommand("exact", "Exact or high-precision moment table");
    exact->add_option("--toll", ea.toll, "pow:A, log, path or custom:b1,b2,...")->required();
    exact->add_option("--n", ea.n, "Largest tree size N")->check(CLI::PositiveNumber);
    exact->add_option("--k", ea.k, "Largest moment order K")->check(CLI::PositiveNumber);
    exact->add_option("--field", ea.field)->check(CLI::IsMember({"rational", "float"}));
    exact->add_option("--precision", ea.precision, "Float mantissa bits")->check(CLI::Range(16u, 4096u));
    exact->add_option("--centering", ea.centering)->check(CLI::IsMember({"none", "linear"}));
    exact->add_option("--c0", ea.c0, "Linear centering constant (exact decimal or p/q)");
    add_output(exact, ea.out, "csv");

    LimitArgs la;
    auto* limit = app.add_subcommand("limit", "Limit-law moment sequences");
    auto* alpha_opt = limit->add_option("--alpha", la.alpha, "Toll exponent");
    limit->add_flag("--shape", la.shape, "Log toll (shape functional)");
    limit->add_option("--k", la.k)->check(CLI::Range(1u, 60u));
    limit->add_option("--mode", la.mode)->check(CLI::IsMember({"eq49", "mk"}));
    add_output(limit, la.out, "csv");

    FigureArgs fa;
    auto* figures = app.add_subcommand("figures", "Data for the sigma^2 and third-central-moment curves");
    figures->add_option("--which", fa.which)->check(CLI::IsMember({"variance", "mc3"}));
    figures->add_option("--from", fa.from);
    figures->add_option("--to", fa.to);
    figures->add_option("--step", fa.step);
    figures->add_option("--grid", fa.grid, "Explicit alpha values")->delimiter(',');
    add_output(figures, fa.out, "csv");

    ConstantArgs ca;
    auto* constants = app.add_subcommand("constants", "Series constants with error bounds");
    constants->add_option("--name", ca.name)->required()->check(CLI::IsMember({"c0", "d0", "d1", "k"}));
    constants->add_option("--toll", ca.toll, "Toll for c0");
    constants->add_option("--tol", ca.tol)->check(CLI::PositiveNumber);
    constants->add_option("--cutoff", ca.cutoff, "Fixed direct-summation cutoff");
    constants->add_option("--tail-terms", ca.tail_terms)->check(CLI::Range(0u, 12u));
    add_output(constants, ca.out, "json");

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "Monte Carlo moments on uniform random trees");
    sample->add_option("--toll", sa.toll)->required();
    sample->add_option("--n", sa.n)->required()->check(CLI::PositiveNumber);
    sample->add_option("--samples", sa.samples)->check(CLI::PositiveNumber);
    sample->add_option("--seed", sa.seed);
    sample->add_option("--workers", sa.workers)->check(CLI::Range(1u, 256u));
    sample->add_option("--k", sa.k)->check(CLI::Range(2u, 6u));
    sample->add_option("--standardization", sa.standardization)->check(CLI::IsMember({"exact", "empirical"}));
    sample->add_option("--histogram", sa.histogram, "Write the standardized histogram CSV here");
    add_output(sample, sa.out, "json");

    PolylogArgs pa;
    auto* polylog = app.add_subcommand("polylog-check", "Residual check of a polylogarithm singular expansion");
    polylog->add_option("--alpha", pa.alpha)->required();
    polylog->add_option("--r", pa.r)->check(CLI::Range(0u, 4u));
    polylog->add_option("--grid", pa.grid)->delimiter(',');
    polylog->add_flag("--reconstruction", pa.reconstruction, "Check the inverse (1-z)^{a-1} L^r expansion instead");
    add_output(polylog, pa.out, "csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*exact) return run_exact(ea);
        if (*limit) return run_limit(la, alpha_opt->count() > 0);
        if (*figures) return run_figures(fa);
        if (*constants) return run_constants(ca);
        if (*sample) return run_sample(sa);
        if (*polylog) return run_polylog(pa);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
