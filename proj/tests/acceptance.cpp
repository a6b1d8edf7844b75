// One PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "toeplitz_spectra/band_decay.hpp"
#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/hankel.hpp"
#include "toeplitz_spectra/predictor.hpp"
#include "toeplitz_spectra/spectra.hpp"
#include "toeplitz_spectra/toeplitz.hpp"

using namespace toeplitz;
using support::cosine;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2 = nullptr)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double cov = n * sxy - sx * sy;
    if (r2)
        *r2 = cov * cov / ((n * sxx - sx * sx) * (n * syy - sy * sy));
    return cov / (n * sxx - sx * sx);
}

Outcome exact_spectrum()
{
    constexpr int N = 50;
    constexpr double tol = 1e-10, limit = 1.0;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> lam = toeplitz_eigenvalues(cosine({2.0, -2.0}), N);
    const double dt = seconds_since(t0);
    double err = 0.0;
    for (int k = 1; k <= N + 1; ++k)
        err = std::max(err, std::abs(lam[k - 1] - (2.0 - 2.0 * std::cos(k * kPi / (N + 2)))));
    return {err <= tol && dt < limit,
            "max err " + fmt("%.2e", err) + " (tol 1e-10), " + fmt("%.3f", dt) + " s (limit 1 s)"};
}

Outcome grid_form()
{
    constexpr double limit = 30.0;
    const std::vector<int> Ns{32, 64, 128};
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    int placed = 0, total = 0, converging = 0;
    double worst_theta = 0.0;
    for (int s = 0; s < 10; ++s) {
        const TrigSymbol f = support::random_unique_min_symbol(rng);
        for (int N : Ns) {
            const std::vector<double> lam = toeplitz_eigenvalues(f, N);
            total += N + 1;
            try {
                for (const GridLocation& g : grid_localize(f, N, lam)) {
                    worst_theta = std::max(worst_theta, std::abs(g.theta_shift));
                    placed += std::abs(g.theta_shift) < 1.0;
                }
            } catch (const Error& e) {
                placed += N + 1 - static_cast<int>(e.value());
            }
        }
        converging += min_eigen_sweep(f, Ns).converging;
    }
    const double dt = seconds_since(t0);
    return {placed == total && converging == 10 && dt < limit,
            std::to_string(placed) + "/" + std::to_string(total) + " localized, max |theta| " +
                fmt("%.3f", worst_theta) + ", " + std::to_string(converging) + "/10 min-eigen sweeps converging, " +
                fmt("%.2f", dt) + " s (limit 30 s)"};
}

Outcome det_equation()
{
    constexpr double tol = 1e-5;
    struct Case {
        TrigSymbol f;
        int N;
    };
    const std::vector<Case> cases{{cosine({2.0, -2.0}), 3}, {cosine({2.0, -2.0}), 8}, {cosine({2.1, -2.0, -0.1}), 8}};
    bool ok = true;
    double worst = 0.0;
    for (const Case& c : cases) {
        const std::vector<double> lam = hermitian_eigen(ToeplitzMatrix::build(c.f, c.N).dense()).values;
        const double lo = c.f.min_value(4096) - 1e-6;
        const double hi = -c.f.scaled(-1.0).min_value(4096) + 1e-6;
        const DetRootsResult r = det_equation_roots(c.f, c.N, lo, hi);
        if (r.roots.size() != lam.size()) {
            ok = false;
            continue;
        }
        for (std::size_t j = 0; j < lam.size(); ++j)
            worst = std::max(worst, std::abs(r.roots[j] - lam[j]));
    }
    ok = ok && worst <= tol;
    return {ok, "one-for-one over 3 cases, max diff " + fmt("%.2e", worst) + " (tol 1e-5)"};
}

Outcome inversion_formula()
{
    constexpr double tol = 1e-8;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> deg(1, 3);
    double worst = 0.0, worst_norm = 0.0;
    bool norm_ok = true;
    for (int s = 0; s < 20; ++s) {
        const int n0 = deg(rng);
        ComplexVector alphas;
        while (static_cast<int>(alphas.size()) < n0) {
            const Complex a = std::polar(0.2 + 0.65 * u(rng), 2.0 * kPi * u(rng));
            bool far = true;
            for (const Complex& b : alphas)
                far = far && std::abs(a - b) > 0.2;
            if (far)
                alphas.push_back(a);
        }
        const TrigSymbol f = support::symbol_from_inside_roots(alphas, 0.5 + u(rng));
        const SpectralFactorization fac = wiener_hopf_factor(f);
        for (int N : {2, 5, 8, 16, 24, 40}) {
            InverterOptions opt;
            opt.require_norm_condition = false;
            const HankelInverter inv(fac, N, opt);
            if (N >= 8) {
                worst_norm = std::max(worst_norm, inv.product().norm);
                norm_ok = norm_ok && inv.product().norm < 1.0;
            }
            const DenseMatrix ref = dense_invert(ToeplitzMatrix::build(f, N));
            worst = std::max(worst, (inv.full() - ref).cwiseAbs().maxCoeff());
        }
    }
    return {worst <= tol && norm_ok, "max entry diff " + fmt("%.2e", worst) + " (tol 1e-8), max norm for N >= 8 " +
                                         fmt("%.3e", worst_norm) + " (< 1)"};
}

Outcome band_decay()
{
    constexpr double tol = 0.05;
    const DecayReport a = band_decay_report(BandSymbol::from(cosine({1.25, -1.0})), 60);
    const DecayReport b = band_decay_report(BandSymbol::from(support::symbol_from_inside_roots({0.5, 0.8})), 80);
    const double ea = std::abs(a.slope - std::log(0.5));
    const double eb = std::abs(b.slope - std::log(0.8));
    return {ea <= tol && eb <= tol && a.oracle_discrepancy <= 1e-8 && b.oracle_discrepancy <= 1e-8,
            "slope " + fmt("%.5f", a.slope) + " vs log 0.5 " + fmt("%.5f", std::log(0.5)) + ", slope " +
                fmt("%.5f", b.slope) + " vs log 0.8 " + fmt("%.5f", std::log(0.8)) + " (tol 0.05)"};
}

Outcome hankel_norm()
{
    constexpr double rel = 0.10, r2_min = 0.999;
    struct Case {
        TrigSymbol f;
        double rho;
    };
    const std::vector<Case> cases{{cosine({1.25, -1.0}), 0.5}, {support::symbol_from_inside_roots({0.5, 0.8}), 0.8}};
    bool ok = true;
    std::string detail;
    for (const Case& c : cases) {
        const SpectralFactorization fac = wiener_hopf_factor(c.f);
        std::vector<double> x, y;
        for (int N = 8; N <= 24; ++N) {
            x.push_back(N);
            y.push_back(std::log(hankel_product_matrix(fac, N).norm));
        }
        double r2 = 0.0;
        const double s = ls_slope(x, y, &r2);
        const double target = 2.0 * std::log(c.rho);
        ok = ok && std::abs(s - target) <= rel * std::abs(target) && r2 >= r2_min;
        if (!detail.empty())
            detail += ", ";
        detail += "rho " + fmt("%.1f", c.rho) + ": slope " + fmt("%.5f", s) + " vs " + fmt("%.5f", target) +
                  " R^2 " + fmt("%.6f", r2);
    }
    return {ok, detail + " (tol 10%, R^2 >= 0.999)"};
}

Outcome property1()
{
    constexpr int M = 12;
    constexpr double tol = 1e-8;
    const double r1 = property1_check(TrigSymbol::constant(1.0), M);
    const double r2 = property1_check(cosine({1.25, -1.0}), M);
    ComplexVector ac(M + 1);
    for (int k = 0; k <= M; ++k)
        ac[k] = std::pow(0.5, k) / 0.75;
    const double r3 = property1_check(ac, levinson(ac, M));
    const double worst = std::max({r1, r2, r3});
    return {worst <= tol, "residuals " + fmt("%.2e", r1) + ", " + fmt("%.2e", r2) + ", " + fmt("%.2e", r3) +
                              " (tol 1e-8, M = 12)"};
}

Outcome lemma1()
{
    constexpr double slope_max = -2.4, rational_tol = 1e-10;
    ComplexVector b(4097);
    for (int k = 0; k <= 4096; ++k)
        b[k] = std::pow(1.0 + k, -4.0);
    const Lemma1Report r = lemma1_rate(autocov_from_inverse_factor(b, 256, 65536), b, {32, 64, 128, 256});
    const ComplexVector g{1.0, -0.5};
    const Lemma1Report q = lemma1_rate(autocov_from_inverse_factor(g, 64, 1024), g, {16});
    std::string errs;
    for (double e : r.errors)
        errs += (errs.empty() ? "" : " ") + fmt("%.2e", e);
    return {r.non_increasing && r.slope <= slope_max && q.errors[0] <= rational_tol,
            "err(N) " + errs + ", slope " + fmt("%.3f", r.slope) + " (<= -2.4), rational err(16) " +
                fmt("%.2e", q.errors[0]) + " (tol 1e-10)"};
}

Outcome corollary()
{
    RegularSymbol f;
    f.fn = [](double t) { return std::exp(std::cos(t)); };
    f.rho1 = 0.5;
    f.rho2 = 2.0;
    const DecayReport d = corollary_decay_check(f, 60, 1.5);
    const PerturbationCheck p = perturbation_check(f, 40, 1e-3);
    return {d.pass && std::isfinite(d.constant) && p.holds,
            "slope " + fmt("%.3f", d.slope) + " (<= " + fmt("%.3f", -std::log(1.5) + 0.1) + "), C " +
                fmt("%.3g", d.constant) + ", perturbation " + fmt("%.3e", p.lhs) + " <= " + fmt("%.3e", p.rhs) +
                " with q " + fmt("%.2e", p.q)};
}

Outcome weyl()
{
    constexpr double bound = 0.05;
    const std::vector<TestFunction> id{{"x", [](double x) { return x; }}};
    const TrigSymbol f = cosine({1.25, -1.0});
    const double g64 = weyl_gap(f, 64, id);
    const double g256 = weyl_gap(f, 256, id);
    return {g256 < g64 && g256 <= bound,
            "gap(64) " + fmt("%.3e", g64) + ", gap(256) " + fmt("%.3e", g256) + " (<= 0.05)"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact spectrum of 2 - 2 cos", exact_spectrum},
        {"grid localization", grid_form},
        {"determinant equation", det_equation},
        {"inversion formula vs dense", inversion_formula},
        {"band inverse decay", band_decay},
        {"Hankel product norm decay", hankel_norm},
        {"predictor moment identity", property1},
        {"predictor convergence rate", lemma1},
        {"regular symbol decay", corollary},
        {"Weyl gap", weyl},
    };
    int failed = 0;
    int i = 0;
    for (const auto& [name, fn] : criteria) {
        ++i;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", i, name.c_str(), o.detail.c_str());
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
