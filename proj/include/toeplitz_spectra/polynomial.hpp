#pragma once

#include <cstdint>
#include <span>

#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

// Polynomials are stored with ascending coefficients: c[0] + c[1] z + ...

Complex poly_eval(std::span<const Complex> c, Complex z);

/// Sum |c_k| |z|^k, the natural scale for backward-error tests at z.
double poly_magnitude(std::span<const Complex> c, double abs_z);

ComplexVector poly_derivative(std::span<const Complex> c);
ComplexVector poly_multiply(std::span<const Complex> a, std::span<const Complex> b);

/// Monic polynomial prod (z - r_k).
ComplexVector poly_from_roots(std::span<const Complex> roots);

struct AberthOptions {
    int max_iterations = 800;
    std::uint64_t seed = 0;
    /// Accepted backward error when the iteration stagnates (multiple roots).
    double stagnation_tol = 1e-9;
};

/// All roots of a polynomial by simultaneous Aberth-Ehrlich iteration.
/// Leading zero coefficients are trimmed; exact zero roots are split off first.
ComplexVector aberth_roots(std::span<const Complex> c, const AberthOptions& options = {});

} // namespace toeplitz
