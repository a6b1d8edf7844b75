#include "toeplitz_spectra/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/fft.hpp"
#include "toeplitz_spectra/polynomial.hpp"

namespace toeplitz {

Complex PredictorPoly::operator()(Complex chi) const { return poly_eval(beta, chi); }

PredictorPoly levinson(const ComplexVector& r, int M)
{
    if (M < 0)
        throw Error(Errc::InvalidArgument, "negative predictor degree");
    if (static_cast<int>(r.size()) < M + 1)
        throw Error(Errc::DimensionMismatch, "need autocovariances up to lag M");
    if (!(r[0].real() > 0.0))
        throw Error(Errc::NotPositiveDefinite, "non-positive variance", r[0].real());

    ComplexVector a(M + 1, Complex(0.0));
    a[0] = 1.0;
    double err = r[0].real();
    PredictorPoly p;
    p.degree = M;
    for (int m = 0; m < M; ++m) {
        Complex delta = 0.0;
        for (int j = 0; j <= m; ++j)
            delta += r[m + 1 - j] * a[j];
        const Complex kappa = -delta / err;
        const double mag = std::abs(kappa);
        if (mag >= 1.0)
            throw Error(Errc::NotPositiveDefinite, "reflection coefficient of modulus >= 1", mag);
        p.reflection.push_back(mag);
        ComplexVector next = a;
        for (int j = 1; j <= m + 1; ++j)
            next[j] += kappa * std::conj(a[m + 1 - j]);
        a = std::move(next);
        err *= 1.0 - mag * mag;
    }
    const double norm = 1.0 / std::sqrt(err);
    for (Complex& c : a)
        c *= norm;
    p.beta = std::move(a);
    p.error_variance = err;
    return p;
}

PredictorPoly levinson(const TrigSymbol& h, int M)
{
    if (h.min_value(1024) <= 0.0)
        throw Error(Errc::NotPositiveDefinite, "symbol is not positive on the circle", h.min_value(1024));
    ComplexVector r(M + 1);
    for (int k = 0; k <= M; ++k)
        r[k] = h.coeff(k);
    return levinson(r, M);
}

ComplexVector predictor_roots(const PredictorPoly& p) { return aberth_roots(p.beta); }

double property1_check(const ComplexVector& r, const PredictorPoly& p)
{
    const int M = p.degree;
    int grid = 1024;
    while (grid < 16 * M)
        grid <<= 1;
    ComplexVector samples(grid);
    double pmax = 0.0;
    double pmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const Complex v = p(std::polar(1.0, 2.0 * kPi * i / grid));
        pmax = std::max(pmax, std::abs(v));
        pmin = std::min(pmin, std::abs(v));
        samples[i] = 1.0 / std::norm(v);
    }
    if (pmin <= 1e-12 * pmax)
        throw Error(Errc::PredictorRootOnCircle, "predictor polynomial vanishes on the circle", pmin);

    const ComplexVector spec = fft_forward(samples);
    double res = 0.0;
    for (int s = -M; s <= M; ++s) {
        const Complex fs = spec[((s % grid) + grid) % grid] / static_cast<double>(grid);
        const Complex hs = s >= 0 ? r[s] : std::conj(r[-s]);
        res = std::max(res, std::abs(hs - fs));
    }
    return res;
}

double property1_check(const TrigSymbol& h, int M)
{
    const PredictorPoly p = levinson(h, M);
    ComplexVector r(M + 1);
    for (int k = 0; k <= M; ++k)
        r[k] = h.coeff(k);
    return property1_check(r, p);
}

ComplexVector autocov_from_inverse_factor(const ComplexVector& b, int max_lag, int grid)
{
    if (static_cast<int>(b.size()) > grid || max_lag >= grid)
        throw Error(Errc::AliasingRisk, "grid too small for the factor length");
    ComplexVector padded(grid, Complex(0.0));
    std::copy(b.begin(), b.end(), padded.begin());
    // G(theta_k) = sum_u b_u e^{i u theta_k}
    const ComplexVector g = fft_backward(padded);
    ComplexVector h(grid);
    for (int i = 0; i < grid; ++i)
        h[i] = 1.0 / std::norm(g[i]);
    const ComplexVector spec = fft_forward(h);
    ComplexVector out(max_lag + 1);
    for (int s = 0; s <= max_lag; ++s)
        out[s] = spec[s] / static_cast<double>(grid);
    return out;
}

Lemma1Report lemma1_rate(const ComplexVector& autocov, const ComplexVector& b, const std::vector<int>& Ns)
{
    Lemma1Report rep;
    rep.Ns = Ns;
    auto coeff = [&](int k) { return k < static_cast<int>(b.size()) ? b[k] : Complex(0.0); };
    for (int N : Ns) {
        const PredictorPoly p = levinson(autocov, N);
        double err = 0.0;
        for (int k = 0; k <= N / 2; ++k)
            err = std::max(err, std::abs(p.beta[k] - std::conj(coeff(0)) * coeff(k)));
        rep.errors.push_back(err);
    }
    for (std::size_t i = 1; i < rep.errors.size(); ++i)
        if (rep.errors[i] > 1.1 * rep.errors[i - 1])
            rep.non_increasing = false;

    const std::size_t n = Ns.size();
    if (n < 2) {
        rep.slope = std::nan("");
        return rep;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(rep.errors[i] > 0.0)) {
            rep.slope = -std::numeric_limits<double>::infinity();
            return rep;
        }
        const double x = std::log(static_cast<double>(Ns[i]));
        const double y = std::log(rep.errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

WienerClassEstimate wiener_class_estimate(const ComplexVector& beta, const ComplexVector& gamma, double s)
{
    WienerClassEstimate w;
    w.s = s;
    for (std::size_t u = 1; u < beta.size(); ++u)
        w.K = std::max(w.K, std::abs(beta[u]) * std::pow(static_cast<double>(u), s));
    for (std::size_t u = 1; u < gamma.size(); ++u)
        w.K_prime = std::max(w.K_prime, std::abs(gamma[u]) * std::pow(static_cast<double>(u), s));
    return w;
}

} // namespace toeplitz
