#include "toeplitz_spectra/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "toeplitz_spectra/error.hpp"

namespace toeplitz {

Complex poly_eval(std::span<const Complex> c, Complex z)
{
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

double poly_magnitude(std::span<const Complex> c, double abs_z)
{
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * abs_z + std::abs(*it);
    return acc;
}

ComplexVector poly_derivative(std::span<const Complex> c)
{
    if (c.size() <= 1)
        return {Complex(0.0)};
    ComplexVector d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k)
        d[k - 1] = static_cast<double>(k) * c[k];
    return d;
}

ComplexVector poly_multiply(std::span<const Complex> a, std::span<const Complex> b)
{
    if (a.empty() || b.empty())
        return {};
    ComplexVector out(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

ComplexVector poly_from_roots(std::span<const Complex> roots)
{
    ComplexVector p{Complex(1.0)};
    for (const Complex& r : roots) {
        ComplexVector next(p.size() + 1, Complex(0.0));
        for (std::size_t k = 0; k < p.size(); ++k) {
            next[k + 1] += p[k];
            next[k] -= r * p[k];
        }
        p = std::move(next);
    }
    return p;
}

namespace {

bool backward_small(std::span<const Complex> c, Complex z, Complex value, double tol)
{
    return std::abs(value) <= tol * poly_magnitude(c, std::abs(z));
}

} // namespace

ComplexVector aberth_roots(std::span<const Complex> coeffs, const AberthOptions& options)
{
    std::size_t hi = coeffs.size();
    while (hi > 0 && coeffs[hi - 1] == Complex(0.0))
        --hi;
    if (hi == 0)
        throw Error(Errc::InvalidArgument, "zero polynomial has no finite root set");

    std::size_t lo = 0;
    while (coeffs[lo] == Complex(0.0))
        ++lo;

    ComplexVector roots(lo, Complex(0.0));
    const std::span<const Complex> c = coeffs.subspan(lo, hi - lo);
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0)
        return roots;
    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }

    const ComplexVector dc = poly_derivative(c);
    const double eps = std::numeric_limits<double>::epsilon();

    // Start on a circle of the geometric-mean root radius, rotated by a seeded angle.
    const double radius = std::pow(std::abs(c[0]) / std::abs(c[n]), 1.0 / n);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi / n);
    const double offset = angle(rng) + 0.4;
    ComplexVector z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(radius, offset + 2.0 * kPi * k / n);

    std::vector<bool> done(n, false);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        bool all_done = true;
        for (int k = 0; k < n; ++k) {
            if (done[k])
                continue;
            const Complex p = poly_eval(c, z[k]);
            if (backward_small(c, z[k], p, 4.0 * eps)) {
                done[k] = true;
                continue;
            }
            all_done = false;
            const Complex ratio = p / poly_eval(dc, z[k]);
            Complex repulsion = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    repulsion += 1.0 / (z[k] - z[j]);
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                continue;
            z[k] -= step;
            if (std::abs(step) <= 2.0 * eps * std::abs(z[k]))
                done[k] = true;
        }
        if (all_done)
            break;
    }

    for (int k = 0; k < n; ++k) {
        if (!backward_small(c, z[k], poly_eval(c, z[k]), options.stagnation_tol))
            throw Error(Errc::RootFindFailure, "Aberth iteration did not converge",
                        std::abs(poly_eval(c, z[k])));
        roots.push_back(z[k]);
    }
    return roots;
}

} // namespace toeplitz
