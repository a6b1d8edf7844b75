#include "toeplitz_spectra/band_decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/fft.hpp"
#include "toeplitz_spectra/hankel.hpp"
#include "toeplitz_spectra/polynomial.hpp"
#include "toeplitz_spectra/toeplitz.hpp"

namespace toeplitz {

BandSymbol BandSymbol::from(const TrigSymbol& sym, const RootOptions& options)
{
    BandSymbol b;
    b.symbol = sym.trimmed();
    b.factorization = wiener_hopf_factor(b.symbol, options);
    b.n0 = b.factorization.n0();
    b.rho = b.factorization.rho();
    return b;
}

std::vector<double> offset_maxima(const DenseMatrix& m)
{
    const int n = static_cast<int>(m.rows());
    std::vector<double> out(n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            out[std::abs(k - l)] = std::max(out[std::abs(k - l)], std::abs(m(k, l)));
    return out;
}

void fit_decay(DecayReport& rep, int lo, int hi, double noise_floor)
{
    const std::vector<double>& M = rep.offset_max;
    hi = std::min(hi, static_cast<int>(M.size()) - 1);
    const double floor = noise_floor * M[0];
    int end = lo - 1;
    for (int d = lo; d <= hi; ++d) {
        if (!(M[d] > floor))
            break;
        end = d;
    }
    rep.fit_lo = lo;
    rep.fit_hi = end;
    const int n = end - lo + 1;
    if (n < 3)
        throw Error(Errc::WindowTooSmall,
                    "fit window [" + std::to_string(lo) + ", " + std::to_string(end) + "] has fewer than 3 offsets",
                    n);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int d = lo; d <= end; ++d) {
        const double y = std::log(M[d]);
        sx += d;
        sy += y;
        sxx += static_cast<double>(d) * d;
        sxy += d * y;
    }
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.intercept = (sy - rep.slope * sx) / n;
    rep.constant = 0.0;
    for (int d = lo; d <= end; ++d)
        rep.constant = std::max(rep.constant, M[d] * std::exp(-rep.target * d));
}

DecayReport band_decay_report(const BandSymbol& sym, int N, const DecayOptions& options)
{
    if (N < 1)
        throw Error(Errc::InvalidArgument, "decay report needs N >= 1");
    DecayReport rep;
    rep.N = N;

    const HankelInverter inv(sym.factorization, N);
    const DenseMatrix m = inv.full();
    if (options.check_oracle) {
        const DenseMatrix ref = dense_invert(ToeplitzMatrix::build(sym.symbol, N));
        rep.oracle_discrepancy = (m - ref).cwiseAbs().maxCoeff();
    }
    rep.offset_max = offset_maxima(m);
    const bool oracle_ok = !options.check_oracle || rep.oracle_discrepancy <= options.oracle_tol;

    if (sym.n0 == 0) {
        rep.exact_band = true;
        for (int d = 1; d <= N; ++d)
            rep.exact_band = rep.exact_band && rep.offset_max[d] == 0.0;
        rep.slope = -std::numeric_limits<double>::infinity();
        rep.target = -std::numeric_limits<double>::infinity();
        rep.pass = rep.exact_band && oracle_ok;
        return rep;
    }

    rep.target = std::log(sym.rho);
    fit_decay(rep, sym.n0 + 2, N / 2, options.noise_floor);
    rep.pass = std::abs(rep.slope - rep.target) <= options.slope_tol && oracle_ok;
    return rep;
}

void RegularSymbol::validate() const
{
    if (!fn)
        throw Error(Errc::InvalidArgument, "regular symbol without evaluation map");
    double lo = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2048; ++k)
        lo = std::min(lo, fn(2.0 * kPi * k / 2048));
    if (!(lo > 0.0))
        throw Error(Errc::InvalidArgument, "regular symbol is not positive on the circle", lo);
}

ComplexVector cepstral_factor(const std::function<double(double)>& f, int n_terms, int grid)
{
    if (n_terms < 1 || grid < 2 * n_terms)
        throw Error(Errc::InvalidArgument, "cepstral factor needs grid >= 2 n_terms");
    ComplexVector logf(grid);
    for (int k = 0; k < grid; ++k) {
        const double v = f(2.0 * kPi * k / grid);
        if (!(v > 0.0))
            throw Error(Errc::InvalidArgument, "cepstrum of a nonpositive function", v);
        logf[k] = std::log(v);
    }
    ComplexVector c = fft_forward(logf);
    for (Complex& v : c)
        v /= static_cast<double>(grid);

    // exp(c0/2 + sum_{u>=1} c_u x^u) as a power series
    ComplexVector e(n_terms);
    e[0] = std::exp(0.5 * c[0].real());
    for (int n = 1; n < n_terms; ++n) {
        Complex acc = 0.0;
        for (int k = 1; k <= n; ++k)
            acc += static_cast<double>(k) * c[k] * e[n - k];
        e[n] = acc / static_cast<double>(n);
    }
    return e;
}

RegularApprox approx_regular(const RegularSymbol& f, double eps)
{
    f.validate();
    if (!(eps > 0.0))
        throw Error(Errc::InvalidArgument, "tolerance must be positive");
    constexpr int L = 2048;
    constexpr int cap = 512;

    const ComplexVector e = cepstral_factor(f.fn, cap + 1, L);
    std::vector<double> values(L);
    for (int k = 0; k < L; ++k)
        values[k] = f.fn(2.0 * kPi * k / L);

    ComplexVector p(L, e[0]); // P_d on the grid
    RegularApprox out;
    auto grid_error = [&] {
        double err = 0.0;
        for (int k = 0; k < L; ++k)
            err = std::max(err, std::abs(std::norm(p[k]) - values[k]));
        return err;
    };
    out.error = grid_error();
    int d = 0;
    while (out.error > eps) {
        if (d == cap)
            throw Error(Errc::ApproxFailure, "degree cap reached", out.error);
        ++d;
        for (int k = 0; k < L; ++k)
            p[k] += e[d] * std::polar(1.0, 2.0 * kPi * static_cast<double>((static_cast<long>(d) * k) % L) / L);
        out.error = grid_error();
    }
    out.degree = d;
    out.coeffs.assign(e.begin(), e.begin() + d + 1);
    out.min_root_modulus = std::numeric_limits<double>::infinity();
    if (d > 0) {
        for (const Complex& z : aberth_roots(out.coeffs))
            out.min_root_modulus = std::min(out.min_root_modulus, std::abs(z));
        if (out.min_root_modulus <= 1.0)
            throw Error(Errc::ApproxFailure, "approximant has a root in the closed unit disk",
                        out.min_root_modulus);
    }
    return out;
}

TrigSymbol regular_truncation(const RegularSymbol& f, int N)
{
    int grid = 2048;
    while (grid < 8 * N)
        grid <<= 1;
    return TrigSymbol::from_coeffs(fourier_coeffs(f.fn, N, grid));
}

DecayReport corollary_decay_check(const RegularSymbol& f, int N, double rho_target, double approx_eps,
                                  const DecayOptions& options)
{
    if (!(rho_target > 1.0))
        throw Error(Errc::InvalidArgument, "target radius must exceed 1", rho_target);
    approx_regular(f, approx_eps);

    DecayReport rep;
    rep.N = N;
    const DenseMatrix inv = dense_invert(ToeplitzMatrix::build(regular_truncation(f, N), N));
    rep.offset_max = offset_maxima(inv);
    rep.exact_band = true;
    for (int d = 1; d <= N; ++d)
        rep.exact_band = rep.exact_band && rep.offset_max[d] <= 1e-14 * rep.offset_max[0];
    rep.target = -std::log(rho_target);
    if (rep.exact_band) {
        rep.slope = -std::numeric_limits<double>::infinity();
        rep.pass = true;
        return rep;
    }
    fit_decay(rep, 2, N / 2, options.noise_floor);
    rep.pass = rep.slope <= rep.target + 0.1 && std::isfinite(rep.constant);
    return rep;
}

PerturbationCheck perturbation_check(const RegularSymbol& f, int N, double eps)
{
    const RegularApprox p = approx_regular(f, eps);
    // |P|^2 has coefficients sum_n p_{n+j} conj(p_n)
    const int d = p.degree;
    ComplexVector c(2 * d + 1, Complex(0.0));
    for (int j = -d; j <= d; ++j)
        for (int n = 0; n <= d; ++n)
            if (n + j >= 0 && n + j <= d)
                c[d + j] += p.coeffs[n + j] * std::conj(p.coeffs[n]);
    const DenseMatrix tp = ToeplitzMatrix::build(TrigSymbol::from_coeffs(c), N).dense();
    const DenseMatrix tf = ToeplitzMatrix::build(regular_truncation(f, N), N).dense();
    const DenseMatrix a = dense_invert(tp);
    const DenseMatrix delta = tf - tp;

    auto norm2 = [](const DenseMatrix& m) {
        return Eigen::JacobiSVD<DenseMatrix>(m).singularValues()(0);
    };
    PerturbationCheck out;
    out.q = norm2(a * delta);
    out.lhs = norm2(dense_invert(tf) - a);
    const double na = norm2(a);
    out.rhs = out.q < 1.0 ? na * na * norm2(delta) / (1.0 - out.q) : std::numeric_limits<double>::infinity();
    out.holds = out.q < 1.0 && out.lhs <= out.rhs;
    return out;
}

} // namespace toeplitz
