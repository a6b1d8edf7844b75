#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "toeplitz_spectra/polynomial.hpp"
#include "toeplitz_spectra/symbol.hpp"

namespace support {

using toeplitz::Complex;
using toeplitz::ComplexVector;
using toeplitz::TrigSymbol;

inline TrigSymbol cosine(std::initializer_list<double> c)
{
    const std::vector<double> v(c);
    return TrigSymbol::cosine(v);
}

// scale * |prod_i (1 - alpha_i chi)|^2
inline TrigSymbol symbol_from_inside_roots(const ComplexVector& alphas, double scale = 1.0)
{
    const ComplexVector p = toeplitz::poly_from_roots(alphas);
    const int d = static_cast<int>(p.size()) - 1;
    ComplexVector c(2 * d + 1, Complex(0.0));
    for (int j = -d; j <= d; ++j)
        for (int k = 0; k <= d; ++k)
            if (k + j >= 0 && k + j <= d)
                c[d + j] += scale * p[k + j] * std::conj(p[k]);
    return TrigSymbol::from_coeffs(c);
}

// Even cosine polynomial of degree 1..3 with min value 1 attained only at 0 or
// pi; every other local minimum on [0, pi] lies at least 0.05 higher.
inline TrigSymbol random_unique_min_symbol(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, 3);
    constexpr int grid = 4000;
    for (;;) {
        const int d = deg(rng);
        std::vector<double> c(d + 1, 0.0);
        for (int j = 1; j <= d; ++j)
            c[j] = u(rng);
        std::vector<double> v(grid + 1);
        for (int i = 0; i <= grid; ++i) {
            const double t = toeplitz::kPi * i / grid;
            v[i] = 0.0;
            for (int j = 1; j <= d; ++j)
                v[i] += c[j] * std::cos(j * t);
        }
        int imin = 0;
        for (int i = 1; i <= grid; ++i)
            if (v[i] < v[imin])
                imin = i;
        if (imin != 0 && imin != grid)
            continue;
        bool ok = true;
        for (int i = 0; i <= grid && ok; ++i) {
            if (i == imin)
                continue;
            const bool left = i == 0 || v[i] < v[i - 1];
            const bool right = i == grid || v[i] < v[i + 1];
            if (left && right && v[i] < v[imin] + 0.05)
                ok = false;
        }
        if (!ok)
            continue;
        c[0] = 1.0 - v[imin];
        return TrigSymbol::cosine(c);
    }
}

} // namespace support
