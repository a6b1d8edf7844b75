#pragma once

#include <cstdint>
#include <vector>

#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

/// B_h(u) = C(u + h - 1, h - 1), the Taylor coefficients of 1/(1 - x)^h.
double series_binomial(int h, long u);

/// tau_m(u) = (u + m - 1)...(u + 1), tau_1 = 1, and the integer polynomials
/// phi_{k,m}(r) with tau_m(w + r) = sum_{k<=m} phi_{k,m}(r) tau_k(w).
/// phi_{k,m}(r) = C(m-1, k-1) r (r + 1)...(r + m - k - 1).
class TauExpansion {
public:
    explicit TauExpansion(int m);

    int order() const { return m_; }
    /// Coefficients of phi_{k,m} in r, ascending; degree m - k.
    const std::vector<std::int64_t>& phi_coeffs(int k) const { return phi_[k - 1]; }

    std::int64_t phi(int k, std::int64_t r) const;
    static std::int64_t tau(int m, std::int64_t u);

    /// Same expansion for B_h: B_m(w + r) = sum_k psi_{k,m}(r) B_k(w),
    /// psi_{k,m}(r) = C(r + m - k - 1, m - k).
    static double psi(int k, int m, long r);

private:
    int m_;
    std::vector<std::vector<std::int64_t>> phi_;
};

/// coeff * chi^shift / (1 - pole chi)^order      on the plus side,
/// coeff * chi^shift / (1 - pole conj(chi))^order on the minus side.
struct RationalTerm {
    Complex pole;
    int order = 1;
    Complex coeff;
    int shift = 0;
};

/// Laurent polynomial plus simple-fraction terms on the circle.
struct RationalHardyElement {
    ComplexVector poly; // coefficient of chi^{poly_offset + i}
    int poly_offset = 0;
    std::vector<RationalTerm> plus;
    std::vector<RationalTerm> minus;

    bool empty() const { return poly.empty() && plus.empty() && minus.empty(); }
    Complex operator()(Complex chi) const;
    /// Exact Fourier coefficient of chi^n.
    Complex fourier_coeff(long n) const;

    void add_monomial(int exponent, Complex c);
    /// Merges terms with identical (pole, order, shift) and trims zero
    /// polynomial coefficients at both ends.
    RationalHardyElement simplified() const;
};

/// Orthogonal projections onto H+ (frequencies >= 0) and its complement,
/// in closed form; the result is again a RationalHardyElement.
RationalHardyElement project_plus(const RationalHardyElement& x);
RationalHardyElement project_minus(const RationalHardyElement& x);

} // namespace toeplitz
