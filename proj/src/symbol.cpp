#include "toeplitz_spectra/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/fft.hpp"
#include "toeplitz_spectra/polynomial.hpp"

namespace toeplitz {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(int n)
{
    int p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

} // namespace

// ---------------------------------------------------------------- TrigSymbol

TrigSymbol::TrigSymbol() : coeffs_{Complex(0.0)} {}

TrigSymbol::TrigSymbol(ComplexVector centered, SampleFn fn)
    : coeffs_(std::move(centered)), sample_fn_(std::move(fn))
{
    if (coeffs_.empty() || coeffs_.size() % 2 == 0)
        throw Error(Errc::InvalidArgument, "symbol coefficient list must have odd length 2d+1");
    degree_ = static_cast<int>(coeffs_.size() / 2);

    double scale = 0.0;
    for (const Complex& c : coeffs_)
        scale = std::max(scale, std::abs(c));
    for (int j = 0; j <= degree_; ++j) {
        const Complex plus = coeffs_[degree_ + j];
        const Complex minus = coeffs_[degree_ - j];
        if (std::abs(minus - std::conj(plus)) > 1e-12 * std::max(scale, 1e-300))
            throw Error(Errc::InvalidArgument, "symbol is not real: a(-j) != conj(a(j)) for j = " +
                                                   std::to_string(j));
        const Complex avg = 0.5 * (plus + std::conj(minus));
        coeffs_[degree_ + j] = avg;
        coeffs_[degree_ - j] = std::conj(avg);
    }
}

TrigSymbol TrigSymbol::from_coeffs(ComplexVector centered) { return TrigSymbol(std::move(centered), {}); }

TrigSymbol TrigSymbol::from_range(const ComplexVector& coeffs, int offset)
{
    if (coeffs.empty())
        throw Error(Errc::InvalidArgument, "empty coefficient list");
    const int last = offset + static_cast<int>(coeffs.size()) - 1;
    const int d = std::max(std::abs(offset), std::abs(last));
    ComplexVector centered(2 * d + 1, Complex(0.0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        centered[offset + static_cast<int>(i) + d] = coeffs[i];
    return TrigSymbol(std::move(centered), {});
}

TrigSymbol TrigSymbol::cosine(std::span<const double> c)
{
    if (c.empty())
        throw Error(Errc::InvalidArgument, "empty cosine coefficient list");
    const int d = static_cast<int>(c.size()) - 1;
    ComplexVector centered(2 * d + 1, Complex(0.0));
    centered[d] = c[0];
    for (int j = 1; j <= d; ++j) {
        centered[d + j] = 0.5 * c[j];
        centered[d - j] = 0.5 * c[j];
    }
    return TrigSymbol(std::move(centered), {});
}

TrigSymbol TrigSymbol::constant(double c) { return TrigSymbol(ComplexVector{Complex(c)}, {}); }

TrigSymbol TrigSymbol::sampled(SampleFn fn, int degree, int grid_size)
{
    if (degree < 0)
        throw Error(Errc::InvalidArgument, "negative truncation degree");
    if (grid_size == 0)
        grid_size = next_power_of_two(std::max(1024, 8 * degree));
    ComplexVector c = fourier_coeffs(fn, degree, grid_size);
    return TrigSymbol(std::move(c), std::move(fn));
}

Complex TrigSymbol::coeff(int j) const
{
    if (j < -degree_ || j > degree_)
        return Complex(0.0);
    return coeffs_[degree_ + j];
}

bool TrigSymbol::is_even(double tol) const
{
    double scale = 1e-300;
    for (const Complex& c : coeffs_)
        scale = std::max(scale, std::abs(c));
    for (int j = 0; j <= degree_; ++j) {
        if (std::abs(coeffs_[degree_ + j].imag()) > tol * scale)
            return false;
    }
    return true;
}

double TrigSymbol::series_value(double theta) const
{
    double acc = coeffs_[degree_].real();
    for (int j = 1; j <= degree_; ++j)
        acc += 2.0 * (coeffs_[degree_ + j] * std::polar(1.0, j * theta)).real();
    return acc;
}

double TrigSymbol::operator()(double theta) const
{
    return sample_fn_ ? sample_fn_(theta) : series_value(theta);
}

double TrigSymbol::derivative(double theta) const
{
    double acc = 0.0;
    for (int j = 1; j <= degree_; ++j)
        acc += 2.0 * (Complex(0.0, j) * coeffs_[degree_ + j] * std::polar(1.0, j * theta)).real();
    return acc;
}

double TrigSymbol::sup_norm(int grid) const
{
    double m = 0.0;
    for (int k = 0; k < grid; ++k)
        m = std::max(m, std::abs((*this)(2.0 * kPi * k / grid)));
    return m;
}

double TrigSymbol::min_value(int grid) const
{
    double m = (*this)(0.0);
    for (int k = 1; k < grid; ++k)
        m = std::min(m, (*this)(2.0 * kPi * k / grid));
    return m;
}

TrigSymbol TrigSymbol::shifted(double lambda) const
{
    ComplexVector c = coeffs_;
    c[degree_] -= lambda;
    SampleFn fn;
    if (sample_fn_)
        fn = [inner = sample_fn_, lambda](double t) { return inner(t) - lambda; };
    return TrigSymbol(std::move(c), std::move(fn));
}

TrigSymbol TrigSymbol::scaled(double factor) const
{
    ComplexVector c = coeffs_;
    for (Complex& v : c)
        v *= factor;
    SampleFn fn;
    if (sample_fn_)
        fn = [inner = sample_fn_, factor](double t) { return factor * inner(t); };
    return TrigSymbol(std::move(c), std::move(fn));
}

TrigSymbol TrigSymbol::trimmed(double rel_tol) const
{
    double scale = 0.0;
    for (const Complex& c : coeffs_)
        scale = std::max(scale, std::abs(c));
    int d = degree_;
    while (d > 0 && std::abs(coeffs_[degree_ + d]) <= rel_tol * scale)
        --d;
    ComplexVector c(coeffs_.begin() + (degree_ - d), coeffs_.begin() + (degree_ + d + 1));
    return TrigSymbol(std::move(c), sample_fn_);
}

TrigSymbol operator+(const TrigSymbol& a, const TrigSymbol& b)
{
    const int d = std::max(a.degree(), b.degree());
    ComplexVector c(2 * d + 1);
    for (int j = -d; j <= d; ++j)
        c[d + j] = a.coeff(j) + b.coeff(j);
    TrigSymbol::SampleFn fn;
    if (a.has_sample_fn() || b.has_sample_fn())
        fn = [a, b](double t) { return a(t) + b(t); };
    return TrigSymbol(std::move(c), std::move(fn));
}

ComplexVector fourier_coeffs(const std::function<double(double)>& fn, int d, int grid_size)
{
    if (d < 0)
        throw Error(Errc::InvalidArgument, "negative degree");
    if (!is_power_of_two(grid_size) || grid_size < 8 * d)
        throw Error(Errc::AliasingRisk,
                    "grid size " + std::to_string(grid_size) + " must be a power of two >= 8d = " +
                        std::to_string(8 * d));
    ComplexVector samples(grid_size);
    for (int k = 0; k < grid_size; ++k)
        samples[k] = fn(2.0 * kPi * k / grid_size);
    const ComplexVector spectrum = fft_forward(samples);
    const double inv = 1.0 / grid_size;
    ComplexVector out(2 * d + 1);
    for (int j = 0; j <= d; ++j) {
        const Complex plus = spectrum[j] * inv;
        const Complex minus = spectrum[(grid_size - j) % grid_size] * inv;
        const Complex avg = 0.5 * (plus + std::conj(minus));
        out[d + j] = avg;
        out[d - j] = std::conj(avg);
    }
    return out;
}

// --------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::from_symbol(const TrigSymbol& sym)
{
    return LaurentPoly{sym.coeffs(), sym.degree()};
}

// ------------------------------------------------------------------ RootSet

int RootSet::count(RootLocation where) const
{
    int n = 0;
    for (const Root& r : roots)
        if (r.location == where)
            n += r.multiplicity;
    return n;
}

double RootSet::rho() const
{
    double m = 0.0;
    for (const Root& r : roots)
        if (r.location == RootLocation::Inside)
            m = std::max(m, std::abs(r.value));
    return m;
}

namespace {

ComplexVector nth_derivative(std::span<const Complex> c, int order)
{
    ComplexVector d(c.begin(), c.end());
    for (int k = 0; k < order; ++k)
        d = poly_derivative(d);
    return d;
}

int find_root(std::vector<int>& parent, int i)
{
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

} // namespace

RootSet laurent_roots(const LaurentPoly& k, const RootOptions& options)
{
    if (k.coeffs.size() < 2)
        throw Error(Errc::InvalidArgument, "Laurent polynomial has degree < 1");

    AberthOptions aberth;
    aberth.seed = options.seed;
    const ComplexVector raw = aberth_roots(k.coeffs, aberth);
    const int n = static_cast<int>(raw.size());

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(raw[i] - raw[j]) <= options.cluster_tol * std::max(1.0, std::abs(raw[i])))
                parent[find_root(parent, i)] = find_root(parent, j);

    std::vector<std::vector<int>> clusters(n);
    for (int i = 0; i < n; ++i)
        clusters[find_root(parent, i)].push_back(i);

    RootSet set;
    for (const auto& members : clusters) {
        if (members.empty())
            continue;
        const int m = static_cast<int>(members.size());
        Complex z = 0.0;
        for (int i : members)
            z += raw[i];
        z /= static_cast<double>(m);

        // A root of multiplicity m is a simple root of K^{(m-1)}.
        const ComplexVector dm1 = nth_derivative(k.coeffs, m - 1);
        const ComplexVector dm = poly_derivative(dm1);
        for (int it = 0; it < 20; ++it) {
            const Complex den = poly_eval(dm, z);
            if (den == Complex(0.0))
                break;
            const Complex step = poly_eval(dm1, z) / den;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z)))
                break;
        }

        const double residual = std::abs(poly_eval(k.coeffs, z));
        const double scale = poly_magnitude(k.coeffs, std::abs(z));
        if (residual > options.root_tol * scale)
            throw Error(Errc::RootFindFailure, "root residual above tolerance", residual / scale);
        if (std::abs(std::abs(z) - 1.0) < options.unit_circle_tol)
            throw Error(Errc::UnitModulusRoot, "root on the unit circle", std::abs(z));

        set.roots.push_back(Root{z, m, std::abs(z) < 1.0 ? RootLocation::Inside : RootLocation::Outside});
    }

    std::sort(set.roots.begin(), set.roots.end(), [](const Root& a, const Root& b) {
        if (a.location != b.location)
            return a.location == RootLocation::Inside;
        if (std::abs(a.value) != std::abs(b.value))
            return std::abs(a.value) < std::abs(b.value);
        return std::arg(a.value) < std::arg(b.value);
    });
    return set;
}

// ---------------------------------------------------------- partial fractions

std::vector<PartialFraction> partial_fractions(std::span<const FactorTerm> poles)
{
    std::vector<PartialFraction> out;
    for (std::size_t j = 0; j < poles.size(); ++j) {
        const Complex wj = poles[j].value;
        const int mj = poles[j].multiplicity;
        if (wj == Complex(0.0))
            throw Error(Errc::InvalidArgument, "zero pole in partial fraction request");
        if (mj < 1)
            throw Error(Errc::InvalidArgument, "pole order must be positive");

        // With x = 1 - w_j chi the remaining factors are ((1 - r) + r x)^{-m}, r = w_k / w_j.
        ComplexVector series(mj, Complex(0.0));
        series[0] = 1.0;
        for (std::size_t k = 0; k < poles.size(); ++k) {
            if (k == j)
                continue;
            const Complex r = poles[k].value / wj;
            if (std::abs(1.0 - r) < 1e-12)
                throw Error(Errc::DegeneratePoles, "coincident poles", std::abs(poles[k].value - wj));
            const int m = poles[k].multiplicity;
            const Complex q = r / (1.0 - r);
            const Complex lead = std::pow(1.0 - r, -m);
            // (1 + q x)^{-m} = sum_n C(m+n-1, n) (-q)^n x^n
            ComplexVector factor(mj);
            double binom = 1.0;
            Complex qn = 1.0;
            for (int n = 0; n < mj; ++n) {
                factor[n] = lead * binom * qn;
                binom = binom * (m + n) / (n + 1);
                qn *= -q;
            }
            ComplexVector next(mj, Complex(0.0));
            for (int a = 0; a < mj; ++a)
                for (int b = 0; a + b < mj; ++b)
                    next[a + b] += series[a] * factor[b];
            series = std::move(next);
        }
        for (int h = 1; h <= mj; ++h)
            out.push_back(PartialFraction{wj, h, series[mj - h]});
    }
    return out;
}

// ---------------------------------------------------- SpectralFactorization

int SpectralFactorization::n0() const
{
    int n = 0;
    for (const FactorTerm& t : g2_factors)
        n += t.multiplicity;
    return n;
}

double SpectralFactorization::rho() const
{
    double m = 0.0;
    for (const FactorTerm& t : g2_factors)
        m = std::max(m, std::abs(t.value));
    return m;
}

Complex SpectralFactorization::g1(Complex chi) const
{
    Complex v = phase;
    for (const FactorTerm& t : g1_factors)
        v *= std::pow(1.0 - t.value * chi, t.multiplicity);
    return v;
}

Complex SpectralFactorization::g2(Complex chi) const
{
    Complex v = 1.0;
    for (const FactorTerm& t : g2_factors)
        v *= std::pow(1.0 - t.value * std::conj(chi), t.multiplicity);
    return v;
}

Complex SpectralFactorization::value(double theta) const
{
    const Complex chi = std::polar(1.0, theta);
    return scale * g1(chi) * g2(chi);
}

SpectralFactorization wiener_hopf_factor(const TrigSymbol& sym, const RootOptions& options)
{
    const TrigSymbol trimmed = sym.trimmed();
    SpectralFactorization out;

    if (trimmed.degree() == 0) {
        const Complex a0 = trimmed.coeff(0);
        if (std::abs(a0) == 0.0)
            throw Error(Errc::InvalidArgument, "zero symbol has no factorization");
        out.scale = std::abs(a0);
        out.phase = a0 / out.scale;
        return out;
    }

    const LaurentPoly k = LaurentPoly::from_symbol(trimmed);
    out.roots = laurent_roots(k, options);
    const int inside = out.roots.count(RootLocation::Inside);
    const int outside = out.roots.count(RootLocation::Outside);
    if (inside != outside)
        throw Error(Errc::UnbalancedWinding,
                    std::to_string(inside) + " roots inside vs " + std::to_string(outside) + " outside",
                    inside - outside);

    // (chi - beta) = -beta (1 - chi / beta) for outside roots; (chi - alpha) = chi (1 - alpha conj(chi)).
    Complex kappa = k.leading();
    for (const Root& r : out.roots.roots) {
        if (r.location == RootLocation::Inside) {
            out.g2_factors.push_back({r.value, r.multiplicity});
        } else {
            out.g1_factors.push_back({1.0 / r.value, r.multiplicity});
            kappa *= std::pow(-r.value, r.multiplicity);
        }
    }
    out.scale = std::abs(kappa);
    out.phase = kappa / out.scale;

    out.g1_inverse = partial_fractions(out.g1_factors);
    for (PartialFraction& pf : out.g1_inverse)
        pf.coeff /= out.phase;
    out.g2_inverse = partial_fractions(out.g2_factors);

    double err = 0.0;
    double norm = 0.0;
    constexpr int grid = 1024;
    for (int i = 0; i < grid; ++i) {
        const double theta = 2.0 * kPi * i / grid;
        Complex series = 0.0;
        for (int j = -trimmed.degree(); j <= trimmed.degree(); ++j)
            series += trimmed.coeff(j) * std::polar(1.0, j * theta);
        err = std::max(err, std::abs(out.value(theta) - series));
        norm = std::max(norm, std::abs(series));
    }
    out.reconstruction_error = err / norm;
    return out;
}

} // namespace toeplitz
