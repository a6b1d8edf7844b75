#pragma once

#include <vector>

#include "toeplitz_spectra/symbol.hpp"
#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

/// P_M(chi) = sum_u beta_u chi^u with beta_u = x_u / sqrt(x_0), x the first
/// column of T_M(h)^{-1}.
struct PredictorPoly {
    int degree = 0;
    ComplexVector beta;
    /// Final prediction error variance; x_0 = 1 / error_variance.
    double error_variance = 0.0;
    std::vector<double> reflection; // |kappa_m|

    Complex operator()(Complex chi) const;
};

/// Levinson-Durbin on autocovariances r(0..M), r(k) = h^(k).
/// Throws NotPositiveDefinite when a reflection coefficient reaches 1.
PredictorPoly levinson(const ComplexVector& autocov, int M);
PredictorPoly levinson(const TrigSymbol& h, int M);

/// Roots of sum_u beta_u z^u.
ComplexVector predictor_roots(const PredictorPoly& p);

/// max_{|s| <= M} |h^(s) - F^(s)| with F = 1/|P_M|^2, F^ by quadrature on
/// a power-of-two grid of at least max(1024, 16 M) points.
/// Throws PredictorRootOnCircle when P_M nearly vanishes on the grid.
double property1_check(const TrigSymbol& h, int M);
double property1_check(const ComplexVector& autocov, const PredictorPoly& p);

/// Autocovariances h^(0..max_lag) of h = 1/|G|^2, G(chi) = sum_u b_u chi^u,
/// by FFT on `grid` points.
ComplexVector autocov_from_inverse_factor(const ComplexVector& b, int max_lag, int grid);

struct Lemma1Report {
    std::vector<int> Ns;
    std::vector<double> errors;
    /// least-squares slope of log error against log N; -inf when an error is 0
    double slope = 0.0;
    /// each error at most 1.1 times the previous one
    bool non_increasing = true;
};

/// err(N) = max_{k <= N/2} |beta_{k,N} - conj(b_0) b_k| for h built from the
/// inverse factor coefficients b (b_k = 0 beyond the given range).
Lemma1Report lemma1_rate(const ComplexVector& autocov, const ComplexVector& b, const std::vector<int>& Ns);

struct WienerClassEstimate {
    double s = 0.0;
    double K = 0.0;
    double K_prime = 0.0;
};

/// Smallest K, K' with |beta_u| <= K/u^s, |gamma_u| <= K'/u^s for u >= 1.
WienerClassEstimate wiener_class_estimate(const ComplexVector& beta, const ComplexVector& gamma, double s);

} // namespace toeplitz
