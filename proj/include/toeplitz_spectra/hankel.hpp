#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "toeplitz_spectra/rational.hpp"
#include "toeplitz_spectra/symbol.hpp"
#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

// Throughout, f = g1 g2 with g1 = scale * phase * prod (1 - w_j chi)^{t_j}
// and g2 = prod (1 - alpha_i conj(chi))^{s_i}, Phi = chi^{N+1} g1/g2 and
// Phi~ = chi^{-N-1} g2/g1. E is spanned by 1/(1 - w_j chi)^n, n <= t_j, and
// its partner by conj(chi)/(1 - alpha_i conj(chi))^n, n <= s_i.

enum class HankelDirection {
    Forward,  // psi -> pi_-(Phi psi), psi in E plus polynomials
    Backward, // psi -> pi_+(Phi~ psi), psi in the partner space plus negative powers
};

RationalHardyElement hankel_apply(const SpectralFactorization& f, int N, const RationalHardyElement& x,
                                  HankelDirection direction);

/// <e|e'> for e = 1/(1 - p chi)^h, e' = 1/(1 - q chi)^k on the circle.
Complex fraction_inner_product(Complex p, int h, Complex q, int k);

struct HankelProductMatrix {
    int N = 0;
    std::vector<std::pair<Complex, int>> basis; // (w_j, n)
    DenseMatrix entries;                        // H~ H on the basis of E
    DenseMatrix gram;                           // gram(a, b) = <e_b|e_a>
    /// Operator norm of H~ H on E with the L2 inner product.
    double norm = 0.0;
};

HankelProductMatrix hankel_product_matrix(const SpectralFactorization& f, int N);

struct InverterOptions {
    /// Throw NeumannCondition when |H~ H| >= 1.
    bool require_norm_condition = true;
};

/// T_N(f)^{-1} through the Hankel correction on E. Construction solves
/// nothing yet; each query costs O(N n0^3) or less.
class HankelInverter {
public:
    HankelInverter(const SpectralFactorization& f, int N, const InverterOptions& options = {});
    ~HankelInverter();
    HankelInverter(HankelInverter&&) noexcept;
    HankelInverter& operator=(HankelInverter&&) noexcept;

    int order() const;
    const HankelProductMatrix& product() const;

    /// T_N(f)^{-1} Q for Q of degree <= N.
    ComplexVector apply(const ComplexVector& q) const;

    /// (T_N^{-1})_{k,l}, 0-based, as T1 + T2.
    Complex entry(int k, int l) const;
    std::pair<Complex, Complex> entry_terms(int k, int l) const;

    DenseMatrix full() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ComplexVector invert_apply(const SpectralFactorization& f, int N, const ComplexVector& q);
Complex inverse_entry(const SpectralFactorization& f, int N, int k, int l);

} // namespace toeplitz
