#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "toeplitz_spectra/symbol.hpp"
#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

struct EigenDecomposition {
    std::vector<double> values; // ascending
    DenseMatrix vectors;        // columns, empty unless requested
};

/// Eigenvalues (and optionally eigenvectors) of a Hermitian matrix.
/// Throws NotHermitian when |M - M*| exceeds 1e-12 max(1, |M|) entrywise.
EigenDecomposition hermitian_eigen(const DenseMatrix& m, bool vectors = false);

/// Eigenvalues of T_N(f).
std::vector<double> toeplitz_eigenvalues(const TrigSymbol& sym, int N);

/// Stationary points of an even symbol in [0, pi], endpoints included.
/// Consecutive entries bound the monotone branches.
std::vector<double> critical_points(const TrigSymbol& sym, int grid = 4096);

struct GridLocation {
    int k = 0;
    /// (antecedent - k pi/(N+2)) N / pi
    double theta_shift = 0.0;
    int branch = 0;
    double antecedent = 0.0;
    /// Constant symbol: no antecedent, shift 0 by convention.
    bool degenerate = false;
};

/// Assigns every eigenvalue to a grid point k pi/(N+2), 0 <= k <= N+1, on
/// some monotone branch of f with |theta_shift| < 1. Slots (branch, k) are
/// used at most once. Throws LocalizationFailure when no complete
/// assignment exists; the error value is the number of unplaced eigenvalues.
std::vector<GridLocation> grid_localize(const TrigSymbol& sym, int N, const std::vector<double>& eigenvalues);

/// Cosine polynomial f(theta) = p(1 - cos theta), p in the power basis.
std::vector<double> cosine_to_power_basis(const TrigSymbol& sym);

/// Data of the determinant equation at one lambda for an even cosine
/// polynomial f of degree d. With x_j the roots of p(x) = lambda,
///   f - lambda = scale * prod_j (1 - w_j chi)(1 - w_j conj(chi)),
/// w_j + 1/w_j = 2 (1 - x_j), |w_j| <= 1; a unimodular w_j equals
/// conj(chi_j) for the antecedent chi_j = (1 - x_j) + i sqrt(1 - (x_j - 1)^2).
struct EigenCharacterization {
    double lambda = 0.0;
    ComplexVector lambda_primes; // x_j
    ComplexVector omegas;        // w_j
    ComplexVector antecedent_roots;
    std::vector<double> antecedents; // theta_j in (0, pi)
    int r = 0;                       // matrix dimension, = d
    Complex scale{1.0, 0.0};
    /// prod_{i,j} 1/(1 - w_i w_j)
    Complex cross_factor{1.0, 0.0};
};

/// Throws ExcludedLambda when two w_j coincide or w_i w_j = 1 for some pair
/// (including i = j), within `tol`.
EigenCharacterization characterize(const TrigSymbol& sym, double lambda, double tol = 1e-9);

/// H with entries A_i sum_h A_h w_h^{N+2} w_i^{N+2} Q_j(w_h) Q_h(w_i),
/// A_j = 1/prod_{n != j}(1 - w_n/w_j), Q_m(z) = prod_{n != m}(1 - w_n z).
/// `radius` scales every w_j first.
DenseMatrix characteristic_matrix(const EigenCharacterization& chr, int N, double radius = 1.0);

struct CharacteristicDeterminant {
    Complex det;        // det(I - H)
    Complex normalized; // det(I - H) exp(i arg(scale^{N+1} cross_factor)), real for Hermitian T_N
    double log_modulus_factor = 0.0; // log |scale^{N+1} cross_factor|
    double scale_h = 1.0;            // 1 + |H|_F
};

CharacteristicDeterminant characteristic_determinant(const TrigSymbol& sym, double lambda, int N);

struct DetRootsResult {
    std::vector<double> roots;
    std::vector<std::pair<double, double>> skipped;
    /// max |Im normalized| / (1 + |H|_F) over the samples
    double max_imag_ratio = 0.0;
    /// max_imag_ratio <= imag_tol
    bool phase_ok = true;
};

struct DetRootsOptions {
    int n_samples = 4000;
    double crit_tol = 1e-6;
    double imag_tol = 1e-8;
};

/// Real roots of det(I - H_{N,lambda}) in (lo, hi) by sampling and bisection.
/// Lambdas within crit_tol of a critical value of f (including f(0), f(pi))
/// and excluded lambdas are skipped and listed.
DetRootsResult det_equation_roots(const TrigSymbol& sym, int N, double lo, double hi,
                                  const DetRootsOptions& options = {});

struct TestFunction {
    std::string name;
    std::function<double(double)> fn;
};

/// x, x^2, x^3, x^4, |x|, exp.
std::vector<TestFunction> default_test_functions();

/// max over h of |(1/N) sum_{j=1..N} [h(lambda_j) - h(f(-pi + 2 j pi/(N+1)))]|
/// with eigenvalues ascending.
double weyl_gap(const TrigSymbol& sym, int N, const std::vector<TestFunction>& fns);
double weyl_gap(const TrigSymbol& sym, int N, const std::vector<double>& eigenvalues,
                const std::vector<TestFunction>& fns);

struct MinEigenReport {
    int N = 0;
    double lambda_min = 0.0;
    GridLocation location;
    double theta0 = 0.0;
    double f_theta0 = 0.0;
    double grid_point = 0.0; // k pi/(N+2)
};

/// Throws NonUniqueMinimum when f attains its minimum at two separated
/// points of [0, pi].
MinEigenReport min_eigen_report(const TrigSymbol& sym, int N);

struct MinEigenSweep {
    std::vector<MinEigenReport> reports;
    /// |grid_point - theta0| non-increasing across the sweep
    bool converging = true;
};

MinEigenSweep min_eigen_sweep(const TrigSymbol& sym, const std::vector<int>& Ns);

} // namespace toeplitz
