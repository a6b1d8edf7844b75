#pragma once

#include <functional>
#include <vector>

#include "toeplitz_spectra/symbol.hpp"
#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

/// Trigonometric polynomial of degree n0 with its root split.
struct BandSymbol {
    TrigSymbol symbol;
    SpectralFactorization factorization;
    int n0 = 0;
    double rho = 0.0;

    static BandSymbol from(const TrigSymbol& sym, const RootOptions& options = {});
};

struct DecayReport {
    int N = 0;
    std::vector<double> offset_max; // M(d), d = 0..N
    int fit_lo = 0;
    int fit_hi = -1;
    double slope = 0.0;
    double intercept = 0.0;
    double target = 0.0; // expected slope
    /// max over the fit window of M(d) / base^d, base = exp(target)
    double constant = 0.0;
    bool exact_band = false;
    /// max |structured - dense| when the oracle was consulted, else -1
    double oracle_discrepancy = -1.0;
    bool pass = false;
};

struct DecayOptions {
    double slope_tol = 0.05;
    bool check_oracle = true;
    double oracle_tol = 1e-8;
    /// offsets with M(d) below noise_floor * M(0) end the fit window
    double noise_floor = 1e-12;
};

/// M(d) = max_{|k-l| = d} |m(k, l)|.
std::vector<double> offset_maxima(const DenseMatrix& m);

/// Least-squares fit of log M(d) over d in [lo, hi], truncated at the first
/// offset below noise_floor * M(0). Throws WindowTooSmall for fewer than 3 points.
void fit_decay(DecayReport& rep, int lo, int hi, double noise_floor);

/// Inverse from the Hankel formula (checked against the dense inverse when
/// requested); slope over d in [n0 + 2, N/2] compared with log rho.
DecayReport band_decay_report(const BandSymbol& sym, int N, const DecayOptions& options = {});

/// Continuous positive symbol on the circle; (rho1, rho2) is the annulus the
/// caller asserts positivity on.
struct RegularSymbol {
    std::function<double(double)> fn;
    double rho1 = 1.0;
    double rho2 = 1.0;

    /// Throws InvalidArgument unless fn > 0 on a 2048 point grid.
    void validate() const;
};

struct RegularApprox {
    ComplexVector coeffs; // P(chi) = sum_n coeffs[n] chi^n
    int degree = 0;
    double error = 0.0; // max | |P|^2 - f | on the grid
    double min_root_modulus = 0.0;
};

/// First n_terms power-series coefficients of the outer factor G of a
/// positive f (|G|^2 = f, G(0) > 0), from the cepstrum on `grid` points.
ComplexVector cepstral_factor(const std::function<double(double)>& f, int n_terms, int grid = 2048);

/// Cepstral outer factor of f truncated at the first degree with
/// max | |P|^2 - f | <= eps on 2048 points. Throws ApproxFailure past degree 512
/// or when P has a root in the closed unit disk.
RegularApprox approx_regular(const RegularSymbol& f, double eps);

/// T_N(f) with quadrature coefficients.
TrigSymbol regular_truncation(const RegularSymbol& f, int N);

/// Dense inverse of T_N(f); the decay base is 1/rho_target and the fit
/// window is d in [2, N/2]. Passes when slope <= -log(rho_target) + slope_tol.
DecayReport corollary_decay_check(const RegularSymbol& f, int N, double rho_target, double approx_eps = 1e-6,
                                  const DecayOptions& options = {});

struct PerturbationCheck {
    double lhs = 0.0; // |T(f)^{-1} - T(|P|^2)^{-1}|
    double rhs = 0.0; // |A|^2 |D| / (1 - q)
    double q = 0.0;   // |A D|, A = T(|P|^2)^{-1}, D = T(f) - T(|P|^2)
    bool holds = false;
};

PerturbationCheck perturbation_check(const RegularSymbol& f, int N, double eps);

} // namespace toeplitz
