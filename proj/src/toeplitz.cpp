#include "toeplitz_spectra/toeplitz.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "toeplitz_spectra/error.hpp"

namespace toeplitz {

ToeplitzMatrix ToeplitzMatrix::build(const TrigSymbol& sym, int N)
{
    if (N < 0)
        throw Error(Errc::InvalidArgument, "negative matrix order");
    ToeplitzMatrix t;
    t.order_ = N;
    t.bandwidth_ = std::min(sym.degree(), N);
    t.coeffs_.assign(2 * N + 1, Complex(0.0));
    for (int j = -t.bandwidth_; j <= t.bandwidth_; ++j)
        t.coeffs_[N + j] = sym.coeff(j);
    return t;
}

Complex ToeplitzMatrix::coeff(int j) const
{
    if (j < -order_ || j > order_)
        return Complex(0.0);
    return coeffs_[order_ + j];
}

ComplexVector ToeplitzMatrix::matvec(const ComplexVector& x) const
{
    const int n = size();
    if (static_cast<int>(x.size()) != n)
        throw Error(Errc::DimensionMismatch,
                    "vector length " + std::to_string(x.size()) + " vs matrix size " + std::to_string(n));
    ComplexVector y(n, Complex(0.0));
    for (int k = 0; k < n; ++k) {
        const int lo = std::max(0, k - bandwidth_);
        const int hi = std::min(n - 1, k + bandwidth_);
        Complex acc = 0.0;
        for (int l = lo; l <= hi; ++l)
            acc += coeffs_[order_ + k - l] * x[l];
        y[k] = acc;
    }
    return y;
}

DenseMatrix ToeplitzMatrix::dense() const
{
    const int n = size();
    DenseMatrix m(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            m(k, l) = coeffs_[order_ + k - l];
    return m;
}

namespace {

Eigen::PartialPivLU<DenseMatrix> checked_lu(const DenseMatrix& m)
{
    if (m.rows() != m.cols())
        throw Error(Errc::DimensionMismatch, "matrix is not square");
    Eigen::PartialPivLU<DenseMatrix> lu(m);
    const auto diag = lu.matrixLU().diagonal().cwiseAbs();
    const double largest = diag.size() ? diag.maxCoeff() : 0.0;
    const double smallest = diag.size() ? diag.minCoeff() : 0.0;
    if (diag.size() && !(smallest > 1e-14 * largest))
        throw Error(Errc::SingularMatrix, "numerically singular matrix", smallest);
    return lu;
}

} // namespace

DenseMatrix dense_invert(const DenseMatrix& m)
{
    if (m.size() == 0)
        return m;
    return checked_lu(m).inverse();
}

DenseMatrix dense_invert(const ToeplitzMatrix& t) { return dense_invert(t.dense()); }

Complex dense_determinant(const DenseMatrix& m)
{
    if (m.rows() != m.cols())
        throw Error(Errc::DimensionMismatch, "matrix is not square");
    if (m.size() == 0)
        return 1.0;
    return Eigen::PartialPivLU<DenseMatrix>(m).determinant();
}

std::string format_complex(Complex z)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

void write_csv(std::ostream& os, const DenseMatrix& m)
{
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        for (Eigen::Index l = 0; l < m.cols(); ++l) {
            if (l)
                os << ',';
            os << format_complex(m(k, l));
        }
        os << '\n';
    }
}

} // namespace toeplitz
