#pragma once

#include <iosfwd>
#include <string>

#include "toeplitz_spectra/symbol.hpp"
#include "toeplitz_spectra/types.hpp"

namespace toeplitz {

/// T_N(f): (N+1) x (N+1), entry (k, l) = a(k - l) with 0-based k, l.
class ToeplitzMatrix {
public:
    static ToeplitzMatrix build(const TrigSymbol& sym, int N);

    int order() const { return order_; }
    int size() const { return order_ + 1; }
    int bandwidth() const { return bandwidth_; }

    /// a(j) for |j| <= N, zero beyond the symbol degree.
    Complex coeff(int j) const;
    Complex operator()(int k, int l) const { return coeff(k - l); }

    ComplexVector matvec(const ComplexVector& x) const;
    DenseMatrix dense() const;

private:
    int order_ = 0;
    int bandwidth_ = 0;
    ComplexVector coeffs_; // a(-N..N)
};

/// Pivoted LU inverse. Throws SingularMatrix when the smallest pivot is below
/// 1e-14 times the largest; the error value carries that pivot magnitude.
DenseMatrix dense_invert(const DenseMatrix& m);
DenseMatrix dense_invert(const ToeplitzMatrix& t);

Complex dense_determinant(const DenseMatrix& m);

/// One row per line, entries "re+imi" with 17 significant digits.
void write_csv(std::ostream& os, const DenseMatrix& m);
std::string format_complex(Complex z);

} // namespace toeplitz
