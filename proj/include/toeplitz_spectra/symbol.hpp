#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

/// Real symbol on the torus held as its Fourier coefficients a(-d..d), with an
/// optional exact evaluation map for symbols that are not trigonometric
/// polynomials (the coefficients are then a truncation).
class TrigSymbol {
public:
    using SampleFn = std::function<double(double)>;

    TrigSymbol();

    /// Coefficients a(-d), ..., a(d); odd length. Hermitian symmetry
    /// a(-j) = conj(a(j)) is required up to 1e-12 relative and then enforced.
    static TrigSymbol from_coeffs(ComplexVector centered);

    /// Coefficients a(offset), a(offset+1), ...; missing indices are zero.
    static TrigSymbol from_range(const ComplexVector& coeffs, int offset);

    /// sum_j c[j] cos(j theta).
    static TrigSymbol cosine(std::span<const double> c);

    static TrigSymbol constant(double c);

    /// Truncation to degree `degree` of a general real symbol; coefficients by
    /// rectangle-rule quadrature on `grid_size` points (0 picks max(1024, 8d)).
    static TrigSymbol sampled(SampleFn fn, int degree, int grid_size = 0);

    int degree() const { return degree_; }
    Complex coeff(int j) const;
    const ComplexVector& coeffs() const { return coeffs_; }

    bool is_even(double tol = 1e-12) const;
    bool has_sample_fn() const { return static_cast<bool>(sample_fn_); }

    /// Symbol value; uses the exact map when present.
    double operator()(double theta) const;
    /// Value of the truncated Fourier series.
    double series_value(double theta) const;
    double derivative(double theta) const;

    /// max |f| on a uniform grid.
    double sup_norm(int grid = 1024) const;
    double min_value(int grid = 1024) const;

    TrigSymbol shifted(double lambda) const;
    TrigSymbol scaled(double factor) const;
    /// Drops outer coefficients with |a(+-d)| <= rel_tol * max |a|.
    TrigSymbol trimmed(double rel_tol = 1e-14) const;

    friend TrigSymbol operator+(const TrigSymbol& a, const TrigSymbol& b);

private:
    TrigSymbol(ComplexVector centered, SampleFn fn);

    ComplexVector coeffs_;
    int degree_ = 0;
    SampleFn sample_fn_;
};

/// Fourier coefficients a(-d..d) of a real function by quadrature on
/// theta_k = 2 pi k / grid_size. Hermitian symmetry is enforced by averaging.
/// Throws AliasingRisk unless grid_size >= 8d and is a power of two.
ComplexVector fourier_coeffs(const std::function<double(double)>& fn, int d, int grid_size);

/// K(z) = sum_{n=-n0}^{n0} a_n z^{n+n0} as an ordinary polynomial.
struct LaurentPoly {
    ComplexVector coeffs;
    int n0 = 0;

    static LaurentPoly from_symbol(const TrigSymbol& sym);
    Complex leading() const { return coeffs.back(); }
};

enum class RootLocation { Inside, Outside };

struct Root {
    Complex value;
    int multiplicity = 1;
    RootLocation location = RootLocation::Inside;
};

struct RootSet {
    std::vector<Root> roots;

    int count(RootLocation where) const;
    /// Largest modulus among inside roots, 0 when there is none.
    double rho() const;
};

struct RootOptions {
    double unit_circle_tol = 1e-8;
    double cluster_tol = 1e-6;
    double root_tol = 1e-10;
    std::uint64_t seed = 0;
};

RootSet laurent_roots(const LaurentPoly& k, const RootOptions& options = {});

/// (value, multiplicity) for a factor (1 - value * x)^multiplicity.
struct FactorTerm {
    Complex value;
    int multiplicity = 1;
};

/// coeff / (1 - pole * x)^order.
struct PartialFraction {
    Complex pole;
    int order = 1;
    Complex coeff;
};

/// 1 / prod_j (1 - w_j x)^{m_j} = sum_j sum_{h <= m_j} c_{j,h} / (1 - w_j x)^h.
/// Throws DegeneratePoles for coincident poles and InvalidArgument for a zero pole.
std::vector<PartialFraction> partial_fractions(std::span<const FactorTerm> poles);

/// f = scale * g1 * g2 on the circle, with
///   g1 = phase * prod_j (1 - w_j chi)^{t_j}        (zeros outside the disk)
///   g2 = prod_i (1 - alpha_i conj(chi))^{s_i}      (alpha_i the inside roots)
/// and partial fractions of 1/g1 (phase included) and 1/g2.
struct SpectralFactorization {
    double scale = 1.0;
    Complex phase{1.0, 0.0};
    std::vector<FactorTerm> g1_factors;
    std::vector<FactorTerm> g2_factors;
    std::vector<PartialFraction> g1_inverse;
    std::vector<PartialFraction> g2_inverse;
    RootSet roots;
    double reconstruction_error = 0.0;

    int n0() const;
    double rho() const;
    Complex g1(Complex chi) const;
    Complex g2(Complex chi) const;
    Complex value(double theta) const;
};

SpectralFactorization wiener_hopf_factor(const TrigSymbol& sym, const RootOptions& options = {});

} // namespace toeplitz
