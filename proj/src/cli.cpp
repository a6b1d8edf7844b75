#include "toeplitz_spectra/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "toeplitz_spectra/band_decay.hpp"
#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/hankel.hpp"
#include "toeplitz_spectra/predictor.hpp"
#include "toeplitz_spectra/spectra.hpp"
#include "toeplitz_spectra/symbol_io.hpp"
#include "toeplitz_spectra/toeplitz.hpp"

namespace toeplitz::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string command;
    std::string symbol;
    std::optional<int> N;
    std::vector<int> sweep;
    std::string out_path;
    std::string summary_path;
    bool check_oracle = false;
    std::uint64_t seed = 0;
    std::optional<double> tol;

    // invert
    std::string entry;
    std::optional<int> column;
    bool full = false;
    // decay
    std::optional<double> rho;
    // predictor
    std::optional<int> M;
    std::vector<int> lemma1;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// json cannot hold inf/nan
json jnum(double x)
{
    if (std::isfinite(x))
        return x;
    return num(x);
}

std::shared_ptr<spdlog::logger> logger()
{
    static std::shared_ptr<spdlog::logger> log = [] {
        auto l = std::make_shared<spdlog::logger>("toeplitz", std::make_shared<spdlog::sinks::stderr_sink_mt>());
        l->set_pattern("[%l] %v");
        const char* env = std::getenv("TOEPLITZ_SPECTRA_LOG");
        const std::string level = env ? env : "quiet";
        if (level == "debug")
            l->set_level(spdlog::level::debug);
        else if (level == "info")
            l->set_level(spdlog::level::info);
        else
            l->set_level(spdlog::level::off);
        return l;
    }();
    return log;
}

std::vector<int> Ns(const RunConfig& cfg)
{
    if (cfg.N && !cfg.sweep.empty())
        throw UsageError("--N and --N-sweep are exclusive");
    if (cfg.N)
        return {*cfg.N};
    if (cfg.sweep.empty())
        throw UsageError("--N or --N-sweep is required");
    return cfg.sweep;
}

int single_N(const RunConfig& cfg)
{
    if (!cfg.sweep.empty())
        throw UsageError(cfg.command + " takes a single --N");
    if (!cfg.N)
        throw UsageError("--N is required");
    return *cfg.N;
}

double tolerance(const RunConfig& cfg, double fallback)
{
    return cfg.tol ? *cfg.tol : fallback;
}

RootOptions root_options(const RunConfig& cfg)
{
    RootOptions o;
    o.seed = cfg.seed;
    return o;
}

bool cmd_factor(const RunConfig& cfg, const TrigSymbol& sym, std::ostream& csv, json& summary)
{
    const SpectralFactorization f = wiener_hopf_factor(sym, root_options(cfg));
    csv << "index,re,im,modulus,multiplicity,location\n";
    int i = 0;
    for (const Root& r : f.roots.roots)
        csv << i++ << ',' << num(r.value.real()) << ',' << num(r.value.imag()) << ',' << num(std::abs(r.value))
            << ',' << r.multiplicity << ',' << (r.location == RootLocation::Inside ? "inside" : "outside") << '\n';
    const double tol = tolerance(cfg, 1e-10);
    summary["n0"] = f.n0();
    summary["rho"] = f.rho();
    summary["scale"] = f.scale;
    summary["phase"] = {f.phase.real(), f.phase.imag()};
    summary["reconstruction_error"] = f.reconstruction_error;
    if (!cfg.check_oracle)
        return true;
    summary["tol"] = tol;
    return f.reconstruction_error <= tol;
}

bool cmd_eigen(const RunConfig& cfg, const TrigSymbol& sym, std::ostream& csv, json& summary)
{
    const std::vector<int> sweep = Ns(cfg);
    const double tol = tolerance(cfg, 1e-5);
    bool ok = true;
    csv << "N,j,lambda,k,theta,f_grid,residual\n";
    json per_n = json::array();
    for (int N : sweep) {
        logger()->info("eigen N={}", N);
        const std::vector<double> lam = toeplitz_eigenvalues(sym, N);
        json item{{"N", N}};
        std::vector<GridLocation> loc;
        try {
            loc = grid_localize(sym, N, lam);
        } catch (const Error& e) {
            if (e.code() != Errc::LocalizationFailure)
                throw;
            item["localization_failure"] = e.what();
            item["unplaced"] = e.value();
            ok = false;
        }
        double max_theta = 0.0;
        for (std::size_t j = 0; j < lam.size(); ++j) {
            csv << N << ',' << j << ',' << num(lam[j]);
            if (loc.empty()) {
                csv << ",,,,\n";
                continue;
            }
            const double grid = loc[j].k * kPi / (N + 2);
            const double fg = sym(grid);
            max_theta = std::max(max_theta, std::abs(loc[j].theta_shift));
            csv << ',' << loc[j].k << ',' << num(loc[j].theta_shift) << ',' << num(fg) << ',' << num(lam[j] - fg)
                << '\n';
        }
        if (!loc.empty())
            item["max_abs_theta"] = max_theta;
        if (cfg.check_oracle) {
            // determinant equation roots must match the dense spectrum
            const double span = std::max(1.0, sym.sup_norm());
            const double lo = sym.min_value(4096) - 1e-6 * span;
            const double hi = -TrigSymbol(sym.scaled(-1.0)).min_value(4096) + 1e-6 * span;
            const DetRootsResult dr = det_equation_roots(sym, N, lo, hi);
            std::vector<bool> used(lam.size(), false);
            double worst = 0.0;
            bool matched = true;
            for (double r : dr.roots) {
                std::size_t best = lam.size();
                for (std::size_t j = 0; j < lam.size(); ++j)
                    if (!used[j] && (best == lam.size() || std::abs(lam[j] - r) < std::abs(lam[best] - r)))
                        best = j;
                if (best == lam.size()) {
                    matched = false;
                    break;
                }
                used[best] = true;
                worst = std::max(worst, std::abs(lam[best] - r));
            }
            // unmatched eigenvalues must sit in skipped windows
            for (std::size_t j = 0; j < lam.size() && matched; ++j) {
                if (used[j])
                    continue;
                bool skipped = false;
                for (const auto& [a, b] : dr.skipped)
                    skipped = skipped || (lam[j] >= a - tol && lam[j] <= b + tol);
                matched = skipped;
            }
            const bool pass = matched && worst <= tol && dr.phase_ok;
            item["oracle"] = {{"det_roots", dr.roots.size()},
                              {"skipped_windows", dr.skipped.size()},
                              {"max_diff", worst},
                              {"max_imag_ratio", dr.max_imag_ratio},
                              {"pass", pass}};
            ok = ok && pass;
        }
        per_n.push_back(item);
    }
    summary["runs"] = per_n;
    if (sweep.size() > 1) {
        try {
            const MinEigenSweep s = min_eigen_sweep(sym, sweep);
            json g = json::array();
            for (const MinEigenReport& r : s.reports)
                g.push_back({{"N", r.N}, {"lambda_min", r.lambda_min}, {"grid_point", r.grid_point}});
            summary["min_eigen"] = {{"theta0", s.reports.front().theta0}, {"points", g}, {"converging", s.converging}};
        } catch (const Error& e) {
            if (e.code() != Errc::NonUniqueMinimum)
                throw;
            summary["min_eigen"] = nullptr;
        }
    }
    return ok;
}

bool cmd_invert(const RunConfig& cfg, const TrigSymbol& sym, std::ostream& csv, json& summary)
{
    const int N = single_N(cfg);
    const int modes = (cfg.entry.empty() ? 0 : 1) + (cfg.column ? 1 : 0) + (cfg.full ? 1 : 0);
    if (modes > 1)
        throw UsageError("--entry, --column and --full are exclusive");

    std::vector<std::pair<int, int>> cells;
    if (!cfg.entry.empty()) {
        int k = 0, l = 0;
        char comma = 0;
        std::istringstream in(cfg.entry);
        if (!(in >> k >> comma >> l) || comma != ',' || !in.eof())
            throw UsageError("--entry expects k,l");
        cells.emplace_back(k, l);
    } else if (cfg.column) {
        for (int k = 0; k <= N; ++k)
            cells.emplace_back(k, *cfg.column);
    } else {
        for (int k = 0; k <= N; ++k)
            for (int l = 0; l <= N; ++l)
                cells.emplace_back(k, l);
    }
    for (const auto& [k, l] : cells)
        if (k < 0 || l < 0 || k > N || l > N)
            throw UsageError("index outside 0.." + std::to_string(N));

    const SpectralFactorization f = wiener_hopf_factor(sym, root_options(cfg));
    InverterOptions opt;
    opt.require_norm_condition = false;
    const HankelInverter inv(f, N, opt);
    summary["hankel_norm"] = inv.product().norm;
    summary["norm_condition"] = inv.product().norm < 1.0;

    std::optional<DenseMatrix> ref;
    if (cfg.check_oracle)
        ref = dense_invert(ToeplitzMatrix::build(sym, N));
    double worst = 0.0;
    csv << "k,l,re,im\n";
    for (const auto& [k, l] : cells) {
        const Complex v = inv.entry(k, l);
        csv << k << ',' << l << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
        if (ref)
            worst = std::max(worst, std::abs(v - (*ref)(k, l)));
    }
    if (!ref)
        return true;
    const double tol = tolerance(cfg, 1e-8);
    summary["oracle"] = {{"max_diff", worst}, {"tol", tol}};
    return worst <= tol;
}

bool cmd_decay(const RunConfig& cfg, const TrigSymbol& sym, std::ostream& csv, json& summary)
{
    const int N = single_N(cfg);
    DecayReport rep;
    if (cfg.rho) {
        RegularSymbol f;
        f.fn = [sym](double t) { return sym(t); };
        rep = corollary_decay_check(f, N, *cfg.rho);
        summary["mode"] = "regular";
        summary["rho_target"] = *cfg.rho;
    } else {
        const BandSymbol b = BandSymbol::from(sym, root_options(cfg));
        DecayOptions opt;
        opt.check_oracle = cfg.check_oracle;
        opt.slope_tol = tolerance(cfg, opt.slope_tol);
        rep = band_decay_report(b, N, opt);
        summary["mode"] = "band";
        summary["rho"] = b.rho;
        summary["n0"] = b.n0;
        summary["slope_tol"] = opt.slope_tol;
        if (cfg.check_oracle)
            summary["oracle_max_diff"] = rep.oracle_discrepancy;
    }
    csv << "d,M\n";
    for (std::size_t d = 0; d < rep.offset_max.size(); ++d)
        csv << d << ',' << num(rep.offset_max[d]) << '\n';
    summary["slope"] = jnum(rep.slope);
    summary["target"] = jnum(rep.target);
    summary["C"] = jnum(rep.constant);
    summary["fit_window"] = {rep.fit_lo, rep.fit_hi};
    summary["exact_band"] = rep.exact_band;
    return rep.pass;
}

bool cmd_predictor(const RunConfig& cfg, const TrigSymbol& sym, std::ostream& csv, json& summary)
{
    if (!cfg.M)
        throw UsageError("--M is required");
    const int M = *cfg.M;
    if (M < 0)
        throw UsageError("--M must be >= 0");
    const PredictorPoly p = levinson(sym, M);

    int maxN = M;
    for (int n : cfg.lemma1)
        maxN = std::max(maxN, n);
    int grid = 2048;
    while (grid < 8 * (maxN + 1))
        grid <<= 1;
    // beta_u tends to conj(b_0) b_u, b the outer factor of 1/h
    const ComplexVector b = cepstral_factor([&sym](double t) { return 1.0 / sym(t); }, maxN + 1, grid);

    csv << "u,beta_re,beta_im,limit_re,limit_im,err\n";
    for (int u = 0; u <= M; ++u) {
        const Complex lim = std::conj(b[0]) * b[u];
        csv << u << ',' << num(p.beta[u].real()) << ',' << num(p.beta[u].imag()) << ',' << num(lim.real()) << ','
            << num(lim.imag()) << ',' << num(std::abs(p.beta[u] - lim)) << '\n';
    }
    summary["error_variance"] = p.error_variance;
    bool ok = true;
    if (cfg.check_oracle) {
        const double tol = tolerance(cfg, 1e-8);
        const double res = property1_check(sym, M);
        summary["property1"] = {{"residual", res}, {"tol", tol}};
        ok = res <= tol;
    }
    if (!cfg.lemma1.empty()) {
        ComplexVector autocov(maxN + 1, Complex(0.0));
        for (int k = 0; k <= std::min(maxN, sym.degree()); ++k)
            autocov[k] = sym.coeff(k);
        const Lemma1Report rep = lemma1_rate(autocov, b, cfg.lemma1);
        json rows = json::array();
        for (std::size_t i = 0; i < rep.Ns.size(); ++i)
            rows.push_back({{"N", rep.Ns[i]}, {"err", rep.errors[i]}});
        summary["lemma1"] = {{"errors", rows}, {"slope", jnum(rep.slope)}, {"non_increasing", rep.non_increasing}};
    }
    return ok;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.N && *cfg.N < 1)
        throw UsageError("--N must be >= 1");
    for (int n : cfg.sweep)
        if (n < 1)
            throw UsageError("--N-sweep entries must be >= 1");
    if (cfg.tol && !(*cfg.tol > 0.0))
        throw UsageError("--tol must be positive");

    const TrigSymbol sym = load_symbol(cfg.symbol);
    logger()->debug("symbol degree {}", sym.degree());

    std::ostringstream csv;
    json summary{{"command", cfg.command}};
    bool pass = true;
    if (cfg.command == "factor")
        pass = cmd_factor(cfg, sym, csv, summary);
    else if (cfg.command == "eigen")
        pass = cmd_eigen(cfg, sym, csv, summary);
    else if (cfg.command == "invert")
        pass = cmd_invert(cfg, sym, csv, summary);
    else if (cfg.command == "decay")
        pass = cmd_decay(cfg, sym, csv, summary);
    else
        pass = cmd_predictor(cfg, sym, csv, summary);
    summary["pass"] = pass;

    if (cfg.out_path.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(cfg.out_path);
        if (!f)
            throw UsageError("cannot write " + cfg.out_path);
        f << csv.str();
    }
    if (cfg.summary_path.empty()) {
        err << summary.dump() << '\n';
    } else {
        std::ofstream f(cfg.summary_path);
        if (!f)
            throw UsageError("cannot write " + cfg.summary_path);
        f << summary.dump(2) << '\n';
    }
    logger()->info("{} {}", cfg.command, pass ? "passed" : "failed");
    return pass ? kOk : kCheckFailed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Toeplitz spectra, inverses and predictors"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&cfg](CLI::App* sub) {
        sub->add_option("--symbol", cfg.symbol, "symbol JSON or @file")->required();
        sub->add_option("--N", cfg.N, "matrix order (size N+1)");
        sub->add_option("--N-sweep", cfg.sweep, "comma separated orders")->delimiter(',');
        sub->add_option("--out", cfg.out_path, "CSV path (default stdout)");
        sub->add_option("--json-summary", cfg.summary_path, "summary path (default stderr)");
        sub->add_flag("--check-oracle", cfg.check_oracle, "compare against dense computations");
        sub->add_option("--seed", cfg.seed, "root finder seed");
        sub->add_option("--tol", cfg.tol, "check tolerance");
    };
    CLI::App* factor = app.add_subcommand("factor", "roots and spectral factorization");
    CLI::App* eigen = app.add_subcommand("eigen", "eigenvalues with grid locations");
    CLI::App* invert = app.add_subcommand("invert", "inverse entries from the Hankel formula");
    CLI::App* decay = app.add_subcommand("decay", "off-diagonal decay of the inverse");
    CLI::App* predictor = app.add_subcommand("predictor", "predictor polynomial");
    for (CLI::App* s : {factor, eigen, invert, decay, predictor})
        common(s);
    invert->add_option("--entry", cfg.entry, "single entry k,l");
    invert->add_option("--column", cfg.column, "column l");
    invert->add_flag("--full", cfg.full, "whole inverse (default)");
    decay->add_option("--rho", cfg.rho, "target radius > 1 for a regular symbol");
    predictor->add_option("--M", cfg.M, "predictor degree");
    predictor->add_option("--lemma1", cfg.lemma1, "orders for the convergence table")->delimiter(',');

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    for (CLI::App* s : {factor, eigen, invert, decay, predictor})
        if (s->parsed())
            cfg.command = s->get_name();

    try {
        return dispatch(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace toeplitz::cli
