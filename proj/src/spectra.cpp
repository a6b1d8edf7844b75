#include "toeplitz_spectra/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/polynomial.hpp"
#include "toeplitz_spectra/toeplitz.hpp"

namespace toeplitz {

EigenDecomposition hermitian_eigen(const DenseMatrix& m, bool vectors)
{
    if (m.rows() != m.cols())
        throw Error(Errc::DimensionMismatch, "matrix is not square");
    EigenDecomposition out;
    if (m.size() == 0)
        return out;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw Error(Errc::NotHermitian, "matrix is not Hermitian", asym);

    const DenseMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h, vectors ? Eigen::ComputeEigenvectors
                                                                 : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error(Errc::EigenFailure, "eigenvalue iteration did not converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    out.values.assign(ev.data(), ev.data() + ev.size());
    if (vectors)
        out.vectors = solver.eigenvectors();
    return out;
}

std::vector<double> toeplitz_eigenvalues(const TrigSymbol& sym, int N)
{
    return hermitian_eigen(ToeplitzMatrix::build(sym, N).dense()).values;
}

std::vector<double> critical_points(const TrigSymbol& sym, int grid)
{
    std::vector<double> out{0.0};
    const double h = kPi / grid;
    double prev = sym.derivative(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double t = i * h;
        const double cur = sym.derivative(t);
        if (i < grid && prev * cur < 0.0) {
            double a = t - h;
            double b = t;
            double fa = prev;
            for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = sym.derivative(mid);
                if (fa * fm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            const double root = 0.5 * (a + b);
            if (root > 1e-9 && root < kPi - 1e-9 && root - out.back() > 1e-9)
                out.push_back(root);
        } else if (i < grid && cur == 0.0 && t - out.back() > 1e-9) {
            out.push_back(t);
        }
        prev = cur;
    }
    out.push_back(kPi);
    return out;
}

namespace {

double symbol_range(const TrigSymbol& sym)
{
    double lo = 1e300;
    double hi = -1e300;
    for (int i = 0; i <= 1024; ++i) {
        const double v = sym(kPi * i / 1024);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

double scale_of(const TrigSymbol& sym)
{
    double s = 0.0;
    for (const Complex& c : sym.coeffs())
        s += std::abs(c);
    return std::max(s, 1e-300);
}

// Root of f = lambda on a monotone branch [a, b].
double solve_on_branch(const TrigSymbol& sym, double lambda, double a, double b)
{
    double fa = sym(a) - lambda;
    for (int it = 0; it < 100 && b - a > 1e-16; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = sym(mid) - lambda;
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

struct Slot {
    int branch;
    int k;
    double antecedent;
    double shift;
};

bool augment(int u, const std::vector<std::vector<Slot>>& adj, int slots_per_branch,
             std::vector<int>& owner, std::vector<int>& seen, int stamp)
{
    for (const Slot& s : adj[u]) {
        const int id = s.branch * slots_per_branch + s.k;
        if (seen[id] == stamp)
            continue;
        seen[id] = stamp;
        if (owner[id] < 0 || augment(owner[id], adj, slots_per_branch, owner, seen, stamp)) {
            owner[id] = u;
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<GridLocation> grid_localize(const TrigSymbol& sym, int N, const std::vector<double>& eigenvalues)
{
    if (N < 1)
        throw Error(Errc::InvalidArgument, "grid localization needs N >= 1");
    if (!sym.is_even())
        throw Error(Errc::InvalidArgument, "grid localization needs an even symbol");

    const int n = static_cast<int>(eigenvalues.size());
    std::vector<GridLocation> out(n);
    const double scale = scale_of(sym);

    if (symbol_range(sym) <= 1e-14 * scale) {
        for (int j = 0; j < n; ++j) {
            out[j].k = std::min(j + 1, N + 1);
            out[j].degenerate = true;
        }
        return out;
    }

    const std::vector<double> crit = critical_points(sym);
    const int branches = static_cast<int>(crit.size()) - 1;
    const double step = kPi / (N + 2);
    const double tol = 1e-12 * scale;

    std::vector<std::vector<Slot>> adj(n);
    for (int j = 0; j < n; ++j) {
        const double lambda = eigenvalues[j];
        for (int b = 0; b < branches; ++b) {
            const double fa = sym(crit[b]);
            const double fb = sym(crit[b + 1]);
            const double lo = std::min(fa, fb);
            const double hi = std::max(fa, fb);
            if (lambda < lo - tol || lambda > hi + tol)
                continue;
            double theta;
            if (lambda <= lo)
                theta = fa <= fb ? crit[b] : crit[b + 1];
            else if (lambda >= hi)
                theta = fa >= fb ? crit[b] : crit[b + 1];
            else
                theta = solve_on_branch(sym, lambda, crit[b], crit[b + 1]);

            const double centre = theta / step;
            const int k_lo = std::max(0, static_cast<int>(std::floor(centre - 2.0)));
            const int k_hi = std::min(N + 1, static_cast<int>(std::ceil(centre + 2.0)));
            for (int k = k_lo; k <= k_hi; ++k) {
                const double shift = (theta - k * step) * N / kPi;
                if (std::abs(shift) < 1.0)
                    adj[j].push_back(Slot{b, k, theta, shift});
            }
        }
        std::sort(adj[j].begin(), adj[j].end(), [](const Slot& a, const Slot& b) {
            return std::abs(a.shift) < std::abs(b.shift);
        });
    }

    const int per_branch = N + 2;
    std::vector<int> owner(branches * per_branch, -1);
    std::vector<int> seen(branches * per_branch, -1);
    int unplaced = 0;
    for (int j = 0; j < n; ++j)
        if (!augment(j, adj, per_branch, owner, seen, j))
            ++unplaced;
    if (unplaced)
        throw Error(Errc::LocalizationFailure,
                    std::to_string(unplaced) + " eigenvalue(s) without a grid slot", unplaced);

    for (int id = 0; id < static_cast<int>(owner.size()); ++id) {
        if (owner[id] < 0)
            continue;
        const int j = owner[id];
        for (const Slot& s : adj[j]) {
            if (s.branch * per_branch + s.k == id) {
                out[j] = GridLocation{s.k, s.shift, s.branch, s.antecedent, false};
                break;
            }
        }
    }
    return out;
}

std::vector<double> cosine_to_power_basis(const TrigSymbol& sym)
{
    if (!sym.is_even())
        throw Error(Errc::InvalidArgument, "symbol is not an even cosine polynomial");
    const int d = sym.degree();
    // T_j in y = cos(theta), then y = 1 - x.
    std::vector<std::vector<double>> cheb(d + 1);
    cheb[0] = {1.0};
    if (d >= 1)
        cheb[1] = {0.0, 1.0};
    for (int j = 2; j <= d; ++j) {
        cheb[j].assign(j + 1, 0.0);
        for (std::size_t i = 0; i < cheb[j - 1].size(); ++i)
            cheb[j][i + 1] += 2.0 * cheb[j - 1][i];
        for (std::size_t i = 0; i < cheb[j - 2].size(); ++i)
            cheb[j][i] -= cheb[j - 2][i];
    }
    std::vector<double> in_y(d + 1, 0.0);
    for (int j = 0; j <= d; ++j) {
        const double c = j == 0 ? sym.coeff(0).real() : 2.0 * sym.coeff(j).real();
        for (int i = 0; i <= j; ++i)
            in_y[i] += c * cheb[j][i];
    }
    // sum_i a_i (1 - x)^i
    std::vector<double> out(d + 1, 0.0);
    for (int i = 0; i <= d; ++i) {
        double binom = 1.0;
        for (int k = 0; k <= i; ++k) {
            out[k] += in_y[i] * binom * ((k % 2) ? -1.0 : 1.0);
            binom = binom * (i - k) / (k + 1);
        }
    }
    return out;
}

EigenCharacterization characterize(const TrigSymbol& sym, double lambda, double tol)
{
    const TrigSymbol f = sym.trimmed();
    const std::vector<double> p = cosine_to_power_basis(f);
    const int d = static_cast<int>(p.size()) - 1;
    if (d < 1)
        throw Error(Errc::InvalidArgument, "constant symbol has no determinant equation");

    ComplexVector q(p.begin(), p.end());
    q[0] -= lambda;
    ComplexVector xs = aberth_roots(q);
    for (Complex& x : xs)
        if (std::abs(x.imag()) <= 1e-10 * std::max(1.0, std::abs(x)))
            x = x.real();
    std::sort(xs.begin(), xs.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    EigenCharacterization chr;
    chr.lambda = lambda;
    chr.lambda_primes = xs;
    chr.r = d;
    Complex scale = p[d];
    for (const Complex& x : xs) {
        const Complex b = 2.0 * (1.0 - x);
        const Complex disc = std::sqrt(b * b - 4.0);
        const Complex w1 = 0.5 * (b + disc);
        const Complex w2 = 0.5 * (b - disc);
        Complex w;
        if (x.imag() == 0.0 && x.real() >= 0.0 && x.real() <= 2.0) {
            // both unimodular: take conj(chi)
            w = w1.imag() < w2.imag() ? w1 : w2;
            const double theta = std::acos(std::clamp(1.0 - x.real(), -1.0, 1.0));
            chr.antecedents.push_back(theta);
            chr.antecedent_roots.push_back(std::polar(1.0, theta));
        } else {
            w = std::abs(w1) < std::abs(w2) ? w1 : w2;
        }
        chr.omegas.push_back(w);
        scale /= 2.0 * w;
    }
    chr.scale = scale;

    Complex cross = 1.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Complex wi = chr.omegas[i];
            const Complex wj = chr.omegas[j];
            if (i != j && std::abs(wi - wj) < tol)
                throw Error(Errc::ExcludedLambda, "repeated root at lambda", lambda);
            if (std::abs(1.0 - wi * wj) < tol)
                throw Error(Errc::ExcludedLambda, "antecedent product equals one at lambda", lambda);
            cross /= 1.0 - wi * wj;
        }
    }
    chr.cross_factor = cross;
    return chr;
}

DenseMatrix characteristic_matrix(const EigenCharacterization& chr, int N, double radius)
{
    const int r = static_cast<int>(chr.omegas.size());
    ComplexVector w(r);
    for (int j = 0; j < r; ++j)
        w[j] = radius * chr.omegas[j];

    ComplexVector a(r, Complex(1.0));
    for (int j = 0; j < r; ++j)
        for (int n = 0; n < r; ++n)
            if (n != j)
                a[j] /= 1.0 - w[n] / w[j];

    auto q = [&](int m, Complex z) {
        Complex v = 1.0;
        for (int n = 0; n < r; ++n)
            if (n != m)
                v *= 1.0 - w[n] * z;
        return v;
    };

    ComplexVector wp(r);
    for (int j = 0; j < r; ++j)
        wp[j] = std::pow(w[j], N + 2);

    DenseMatrix h(r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            Complex acc = 0.0;
            for (int m = 0; m < r; ++m)
                acc += a[m] * wp[m] * wp[i] * q(j, w[m]) * q(m, w[i]);
            h(i, j) = a[i] * acc;
        }
    }
    return h;
}

CharacteristicDeterminant characteristic_determinant(const TrigSymbol& sym, double lambda, int N)
{
    const EigenCharacterization chr = characterize(sym, lambda);
    const DenseMatrix h = characteristic_matrix(chr, N);
    const int r = static_cast<int>(h.rows());
    CharacteristicDeterminant out;
    out.det = dense_determinant(DenseMatrix::Identity(r, r) - h);
    const double phase = (N + 1) * std::arg(chr.scale) + std::arg(chr.cross_factor);
    out.normalized = out.det * std::polar(1.0, phase);
    out.log_modulus_factor = (N + 1) * std::log(std::abs(chr.scale)) + std::log(std::abs(chr.cross_factor));
    out.scale_h = 1.0 + h.norm();
    return out;
}

DetRootsResult det_equation_roots(const TrigSymbol& sym, int N, double lo, double hi,
                                  const DetRootsOptions& options)
{
    if (!(hi > lo))
        throw Error(Errc::InvalidArgument, "empty lambda window");
    if (options.n_samples < 2)
        throw Error(Errc::InvalidArgument, "need at least two samples");

    const TrigSymbol f = sym.trimmed();
    std::vector<double> critical_values;
    for (double t : critical_points(f))
        critical_values.push_back(f(t));

    DetRootsResult out;
    auto guarded = [&](double lambda) {
        for (double v : critical_values)
            if (std::abs(lambda - v) <= options.crit_tol)
                return true;
        return false;
    };
    // Real part of the normalized determinant, or NaN when excluded.
    auto value = [&](double lambda) {
        if (guarded(lambda))
            return std::nan("");
        try {
            const CharacteristicDeterminant d = characteristic_determinant(f, lambda, N);
            out.max_imag_ratio = std::max(out.max_imag_ratio, std::abs(d.normalized.imag()) / d.scale_h);
            return d.normalized.real();
        } catch (const Error& e) {
            if (e.code() == Errc::ExcludedLambda)
                return std::nan("");
            throw;
        }
    };

    const int n = options.n_samples;
    std::vector<double> grid(n);
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = lo + (hi - lo) * i / (n - 1);
        vals[i] = value(grid[i]);
    }

    double skip_start = std::nan("");
    for (int i = 0; i < n; ++i) {
        if (std::isnan(vals[i])) {
            if (std::isnan(skip_start))
                skip_start = grid[i];
            if (i == n - 1 || !std::isnan(vals[i + 1])) {
                out.skipped.emplace_back(skip_start, grid[i]);
                skip_start = std::nan("");
            }
            continue;
        }
        if (i == 0 || std::isnan(vals[i - 1]))
            continue;
        const double va = vals[i - 1];
        const double vb = vals[i];
        if (vb == 0.0) {
            out.roots.push_back(grid[i]);
            continue;
        }
        if (va == 0.0 || (va > 0.0) == (vb > 0.0))
            continue;
        double a = grid[i - 1];
        double b = grid[i];
        double fa = va;
        for (int it = 0; it < 200 && b - a > 4e-16 * std::max(1.0, std::abs(a)); ++it) {
            const double mid = 0.5 * (a + b);
            const double fm = value(mid);
            if (std::isnan(fm))
                break;
            if ((fm > 0.0) == (fa > 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        out.roots.push_back(0.5 * (a + b));
    }
    out.phase_ok = out.max_imag_ratio <= options.imag_tol;
    return out;
}

std::vector<TestFunction> default_test_functions()
{
    return {
        {"x", [](double x) { return x; }},
        {"x^2", [](double x) { return x * x; }},
        {"x^3", [](double x) { return x * x * x; }},
        {"x^4", [](double x) { return x * x * x * x; }},
        {"abs", [](double x) { return std::abs(x); }},
        {"exp", [](double x) { return std::exp(x); }},
    };
}

double weyl_gap(const TrigSymbol& sym, int N, const std::vector<double>& eigenvalues,
                const std::vector<TestFunction>& fns)
{
    if (N < 1)
        throw Error(Errc::InvalidArgument, "Weyl gap needs N >= 1");
    if (static_cast<int>(eigenvalues.size()) < N)
        throw Error(Errc::DimensionMismatch, "need at least N eigenvalues");
    std::vector<double> ev = eigenvalues;
    std::sort(ev.begin(), ev.end());
    double gap = 0.0;
    for (const TestFunction& h : fns) {
        double acc = 0.0;
        for (int j = 1; j <= N; ++j)
            acc += h.fn(ev[j - 1]) - h.fn(sym(-kPi + 2.0 * j * kPi / (N + 1)));
        gap = std::max(gap, std::abs(acc / N));
    }
    return gap;
}

double weyl_gap(const TrigSymbol& sym, int N, const std::vector<TestFunction>& fns)
{
    return weyl_gap(sym, N, toeplitz_eigenvalues(sym, N), fns);
}

namespace {

// Minimizer of f on [0, pi]; throws NonUniqueMinimum on a second global minimum.
double unique_minimizer(const TrigSymbol& sym)
{
    constexpr int grid = 4096;
    const double h = kPi / grid;
    std::vector<double> v(grid + 1);
    for (int i = 0; i <= grid; ++i)
        v[i] = sym(i * h);
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it;
    const double tol = 1e-9 * std::max(*hi_it - lo, 1e-300);

    std::vector<int> minima;
    for (int i = 0; i <= grid; ++i) {
        const bool left = i == 0 || v[i] <= v[i - 1];
        const bool right = i == grid || v[i] <= v[i + 1];
        if (left && right && v[i] <= lo + tol) {
            if (minima.empty() || i - minima.back() > 2)
                minima.push_back(i);
        }
    }
    if (minima.size() > 1)
        throw Error(Errc::NonUniqueMinimum,
                    "symbol attains its minimum at " + std::to_string(minima.size()) + " points",
                    static_cast<double>(minima.size()));

    const int i0 = minima.front();
    if (i0 == 0 || i0 == grid)
        return i0 * h;
    double a = (i0 - 1) * h;
    double b = (i0 + 1) * h;
    for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
        const double mid = 0.5 * (a + b);
        if (sym.derivative(mid) < 0.0)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

} // namespace

MinEigenReport min_eigen_report(const TrigSymbol& sym, int N)
{
    MinEigenReport rep;
    rep.N = N;
    const std::vector<double> ev = toeplitz_eigenvalues(sym, N);
    rep.lambda_min = ev.front();
    if (symbol_range(sym) <= 1e-14 * scale_of(sym)) {
        rep.location.k = 1;
        rep.location.degenerate = true;
        rep.f_theta0 = sym(0.0);
        rep.grid_point = kPi / (N + 2);
        return rep;
    }
    rep.theta0 = unique_minimizer(sym);
    rep.f_theta0 = sym(rep.theta0);
    const std::vector<GridLocation> loc = grid_localize(sym, N, ev);
    rep.location = loc.front();
    rep.grid_point = rep.location.k * kPi / (N + 2);
    return rep;
}

MinEigenSweep min_eigen_sweep(const TrigSymbol& sym, const std::vector<int>& Ns)
{
    MinEigenSweep out;
    for (int N : Ns)
        out.reports.push_back(min_eigen_report(sym, N));
    for (std::size_t i = 1; i < out.reports.size(); ++i) {
        const double prev = std::abs(out.reports[i - 1].grid_point - out.reports[i - 1].theta0);
        const double cur = std::abs(out.reports[i].grid_point - out.reports[i].theta0);
        if (cur > prev + 1e-12)
            out.converging = false;
    }
    return out;
}

} // namespace toeplitz
