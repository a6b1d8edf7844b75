#include "toeplitz_spectra/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/polynomial.hpp"

namespace toeplitz {

namespace {

// constant * prod_j (1 - v_j x)^{m_j} with x = chi on the plus side and
// x = conj(chi) on the minus side.
struct FactorSide {
    std::vector<FactorTerm> factors;
    Complex constant{1.0, 0.0};
    std::vector<PartialFraction> inv; // of the reciprocal, constant included
    std::vector<int> factor_of;       // basis index -> factor
    std::vector<int> base;            // factor -> first basis index
    int dim = 0;
    ComplexVector poly;                 // ascending in x
    std::vector<ComplexVector> reduced; // basis (j, n) -> poly / (1 - v_j x)^n

    FactorSide(std::vector<FactorTerm> f, Complex c) : factors(std::move(f)), constant(c)
    {
        inv = partial_fractions(factors);
        for (PartialFraction& t : inv)
            t.coeff /= constant;
        for (std::size_t j = 0; j < factors.size(); ++j) {
            base.push_back(dim);
            for (int n = 1; n <= factors[j].multiplicity; ++n)
                factor_of.push_back(static_cast<int>(j));
            dim += factors[j].multiplicity;
        }
        poly = product_without(-1, 0);
        for (std::size_t j = 0; j < factors.size(); ++j)
            for (int n = 1; n <= factors[j].multiplicity; ++n)
                reduced.push_back(product_without(static_cast<int>(j), n));
    }

    ComplexVector product_without(int skip, int n) const
    {
        ComplexVector p{constant};
        for (std::size_t j = 0; j < factors.size(); ++j) {
            const int m = factors[j].multiplicity - (static_cast<int>(j) == skip ? n : 0);
            const ComplexVector lin{Complex(1.0), -factors[j].value};
            for (int i = 0; i < m; ++i)
                p = poly_multiply(p, lin);
        }
        return p;
    }

    // Taylor coefficients of 1/(constant * prod) in x, up to degree n.
    ComplexVector reciprocal_series(int n) const
    {
        ComplexVector s(n + 1, Complex(0.0));
        for (const PartialFraction& t : inv) {
            Complex vp = t.coeff;
            for (int u = 0; u <= n; ++u) {
                s[u] += vp * series_binomial(t.order, u);
                vp *= t.pole;
            }
        }
        if (inv.empty())
            s[0] = 1.0 / constant;
        return s;
    }

    int basis_index(int factor, int order) const { return base[factor] + order - 1; }

    // Factor index whose value equals `pole`, or -1 (throws for near misses).
    int match(Complex pole) const
    {
        for (std::size_t j = 0; j < factors.size(); ++j) {
            const double gap = std::abs(pole - factors[j].value);
            const double ref = std::max(1.0, std::abs(factors[j].value));
            if (gap <= 1e-12 * ref)
                return static_cast<int>(j);
            if (gap < 1e-6 * ref)
                throw Error(Errc::DegeneratePoles, "pole nearly coincides with a factor pole", gap);
        }
        return -1;
    }
};

// One factorization at one order N; vectors on E (plus side) and on the
// partner space (minus side) are coefficient vectors over the bases above.
struct Engine {
    int N;
    FactorSide plus;
    FactorSide minus;
    ComplexVector s; // 1/g2 in conj(chi)
    ComplexVector t; // 1/g1 in chi

    Engine(int n, FactorSide p, FactorSide m) : N(n), plus(std::move(p)), minus(std::move(m))
    {
        s = minus.reciprocal_series(N + plus.dim + 2);
        t = plus.reciprocal_series(N + 1);
    }

    // acc += c * pi_+(chi^{-m} / g1), m >= 1
    void plus_of_negative(long m, Complex c, ComplexVector& acc) const
    {
        if (c == Complex(0.0))
            return;
        for (std::size_t b = 0; b < plus.inv.size(); ++b) {
            const PartialFraction& term = plus.inv[b];
            const Complex wm = c * term.coeff * std::pow(term.pole, m);
            const int j = plus.factor_of[b];
            for (int k = 1; k <= term.order; ++k)
                acc[plus.basis_index(j, k)] += wm * TauExpansion::psi(k, term.order, m);
        }
    }

    // acc += c * pi_-(chi^r / g2), r >= 0, on the conj(chi)/(1 - a conj(chi))^k basis
    void minus_of_positive(long r, Complex c, ComplexVector& acc) const
    {
        if (c == Complex(0.0))
            return;
        for (std::size_t b = 0; b < minus.inv.size(); ++b) {
            const PartialFraction& term = minus.inv[b];
            const Complex ar = c * term.coeff * std::pow(term.pole, r + 1);
            const int i = minus.factor_of[b];
            for (int k = 1; k <= term.order; ++k)
                acc[minus.basis_index(i, k)] += ar * TauExpansion::psi(k, term.order, r + 1);
        }
    }

    ComplexVector forward(const ComplexVector& e) const
    {
        ComplexVector g(plus.dim + 1, Complex(0.0));
        for (int b = 0; b < plus.dim; ++b)
            for (std::size_t m = 0; m < plus.reduced[b].size(); ++m)
                g[m] += e[b] * plus.reduced[b][m];
        ComplexVector out(minus.dim, Complex(0.0));
        for (std::size_t m = 0; m < g.size(); ++m)
            minus_of_positive(N + 1 + static_cast<long>(m), g[m], out);
        return out;
    }

    ComplexVector backward(const ComplexVector& v) const
    {
        ComplexVector l(minus.dim + 1, Complex(0.0));
        for (int b = 0; b < minus.dim; ++b)
            for (std::size_t q = 0; q < minus.reduced[b].size(); ++q)
                l[q] += v[b] * minus.reduced[b][q];
        ComplexVector out(plus.dim, Complex(0.0));
        for (std::size_t q = 0; q < l.size(); ++q)
            plus_of_negative(N + 2 + static_cast<long>(q), l[q], out);
        return out;
    }

    // pi_+(Q / g2), a polynomial of the same degree as Q.
    ComplexVector p_of(const ComplexVector& q) const
    {
        const int n = static_cast<int>(q.size());
        ComplexVector p(n, Complex(0.0));
        for (int v = 0; v < n; ++v)
            for (int u = 0; v + u < n; ++u)
                p[v] += q[v + u] * s[u];
        return p;
    }

    // pi_+(Phi~ p) for a polynomial p of degree <= N.
    ComplexVector x_of(const ComplexVector& p) const
    {
        const ComplexVector& g2 = minus.poly;
        std::map<long, Complex> lau; // exponent -m
        for (std::size_t n = 0; n < p.size(); ++n) {
            if (p[n] == Complex(0.0))
                continue;
            for (std::size_t q = 0; q < g2.size(); ++q)
                lau[N + 1 + static_cast<long>(q) - static_cast<long>(n)] += p[n] * g2[q];
        }
        ComplexVector out(plus.dim, Complex(0.0));
        for (const auto& [m, c] : lau)
            plus_of_negative(m, c, out);
        return out;
    }

    // pi_+(Phi y) for y in E, a polynomial of degree <= N + dim.
    ComplexVector phi_plus(const ComplexVector& y) const
    {
        ComplexVector g(plus.dim + 1, Complex(0.0));
        for (int b = 0; b < plus.dim; ++b)
            for (std::size_t m = 0; m < plus.reduced[b].size(); ++m)
                g[m] += y[b] * plus.reduced[b][m];
        ComplexVector out(N + plus.dim + 2, Complex(0.0));
        for (std::size_t m = 0; m < g.size(); ++m) {
            const long top = N + 1 + static_cast<long>(m);
            for (long v = 0; v <= top; ++v)
                out[v] += g[m] * s[top - v];
        }
        return out;
    }

    std::vector<std::pair<Complex, int>> plus_basis() const
    {
        std::vector<std::pair<Complex, int>> out;
        for (const FactorTerm& f : plus.factors)
            for (int n = 1; n <= f.multiplicity; ++n)
                out.emplace_back(f.value, n);
        return out;
    }
};

Engine make_engine(const SpectralFactorization& f, int N)
{
    if (N < 0)
        throw Error(Errc::InvalidArgument, "negative matrix order");
    return Engine(N, FactorSide(f.g1_factors, f.scale * f.phase), FactorSide(f.g2_factors, 1.0));
}

// g1* = conj(g2), g2* = conj(g1)
Engine make_conjugate_engine(const Engine& e)
{
    std::vector<FactorTerm> p, m;
    for (const FactorTerm& t : e.minus.factors)
        p.push_back({std::conj(t.value), t.multiplicity});
    for (const FactorTerm& t : e.plus.factors)
        m.push_back({std::conj(t.value), t.multiplicity});
    return Engine(e.N, FactorSide(p, std::conj(e.minus.constant)), FactorSide(m, std::conj(e.plus.constant)));
}

HankelProductMatrix product_matrix(const Engine& e)
{
    HankelProductMatrix h;
    h.N = e.N;
    h.basis = e.plus_basis();
    const int d = e.plus.dim;
    h.entries = DenseMatrix::Zero(d, d);
    h.gram = DenseMatrix::Zero(d, d);
    for (int b = 0; b < d; ++b) {
        ComplexVector unit(d, Complex(0.0));
        unit[b] = 1.0;
        const ComplexVector col = e.backward(e.forward(unit));
        for (int a = 0; a < d; ++a)
            h.entries(a, b) = col[a];
    }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            h.gram(a, b) = fraction_inner_product(h.basis[b].first, h.basis[b].second, h.basis[a].first,
                                                  h.basis[a].second);
    if (d > 0) {
        const DenseMatrix herm = 0.5 * (h.gram + h.gram.adjoint());
        Eigen::LLT<DenseMatrix> llt(herm);
        if (llt.info() != Eigen::Success)
            throw Error(Errc::DegeneratePoles, "basis of E is numerically dependent");
        const DenseMatrix r = llt.matrixU();
        const DenseMatrix weighted = r * h.entries * r.inverse();
        Eigen::JacobiSVD<DenseMatrix> svd(weighted);
        h.norm = svd.singularValues()(0);
    }
    return h;
}

} // namespace

Complex fraction_inner_product(Complex p, int h, Complex q, int k)
{
    const Complex z = p * std::conj(q);
    Complex acc = 0.0;
    Complex zi = 1.0;
    double bh = 1.0; // C(h-1, i)
    double bk = 1.0; // C(k-1, i)
    for (int i = 0; i <= std::min(h, k) - 1; ++i) {
        acc += bh * bk * zi;
        zi *= z;
        bh = bh * (h - 1 - i) / (i + 1);
        bk = bk * (k - 1 - i) / (i + 1);
    }
    return acc / std::pow(1.0 - z, h + k - 1);
}

RationalHardyElement hankel_apply(const SpectralFactorization& f, int N, const RationalHardyElement& x,
                                  HankelDirection direction)
{
    const Engine e = make_engine(f, N);
    RationalHardyElement out;

    if (direction == HankelDirection::Forward) {
        if (!x.minus.empty())
            throw Error(Errc::InvalidArgument, "forward Hankel input must lie in H+");
        // g1 x as a polynomial in chi
        std::map<long, Complex> g;
        for (std::size_t i = 0; i < x.poly.size(); ++i) {
            const long ex = x.poly_offset + static_cast<long>(i);
            if (ex < 0 && x.poly[i] != Complex(0.0))
                throw Error(Errc::InvalidArgument, "forward Hankel input has negative frequencies");
            for (std::size_t m = 0; m < e.plus.poly.size(); ++m)
                g[ex + static_cast<long>(m)] += x.poly[i] * e.plus.poly[m];
        }
        for (const RationalTerm& t : x.plus) {
            const int j = e.plus.match(t.pole);
            if (j < 0 || t.order > e.plus.factors[j].multiplicity || t.shift < 0)
                throw Error(Errc::InvalidArgument, "forward Hankel input outside the stable subspace");
            const ComplexVector& red = e.plus.reduced[e.plus.basis_index(j, t.order)];
            for (std::size_t m = 0; m < red.size(); ++m)
                g[t.shift + static_cast<long>(m)] += t.coeff * red[m];
        }
        ComplexVector acc(e.minus.dim, Complex(0.0));
        for (const auto& [ex, c] : g)
            e.minus_of_positive(N + 1 + ex, c, acc);
        for (std::size_t i = 0; i < e.minus.factors.size(); ++i)
            for (int k = 1; k <= e.minus.factors[i].multiplicity; ++k)
                out.minus.push_back(RationalTerm{e.minus.factors[i].value, k,
                                                 acc[e.minus.basis_index(static_cast<int>(i), k)], -1});
        return out.simplified();
    }

    if (!x.plus.empty())
        throw Error(Errc::InvalidArgument, "backward Hankel input must lie in the complement of H+");
    // g2 x as a Laurent polynomial in chi, all exponents negative
    std::map<long, Complex> l;
    for (std::size_t i = 0; i < x.poly.size(); ++i) {
        const long ex = x.poly_offset + static_cast<long>(i);
        if (ex >= 0 && x.poly[i] != Complex(0.0))
            throw Error(Errc::InvalidArgument, "backward Hankel input has non-negative frequencies");
        for (std::size_t q = 0; q < e.minus.poly.size(); ++q)
            l[ex - static_cast<long>(q)] += x.poly[i] * e.minus.poly[q];
    }
    for (const RationalTerm& t : x.minus) {
        const int j = e.minus.match(t.pole);
        if (j < 0 || t.order > e.minus.factors[j].multiplicity || t.shift >= 0)
            throw Error(Errc::InvalidArgument, "backward Hankel input outside the partner space");
        const ComplexVector& red = e.minus.reduced[e.minus.basis_index(j, t.order)];
        for (std::size_t q = 0; q < red.size(); ++q)
            l[t.shift - static_cast<long>(q)] += t.coeff * red[q];
    }
    ComplexVector acc(e.plus.dim, Complex(0.0));
    for (const auto& [ex, c] : l)
        e.plus_of_negative(N + 1 - ex, c, acc);
    for (std::size_t j = 0; j < e.plus.factors.size(); ++j)
        for (int k = 1; k <= e.plus.factors[j].multiplicity; ++k)
            out.plus.push_back(RationalTerm{e.plus.factors[j].value, k,
                                            acc[e.plus.basis_index(static_cast<int>(j), k)], 0});
    return out.simplified();
}

HankelProductMatrix hankel_product_matrix(const SpectralFactorization& f, int N)
{
    return product_matrix(make_engine(f, N));
}

struct HankelInverter::Impl {
    Engine main;
    Engine conj;
    HankelProductMatrix product;
    Eigen::PartialPivLU<DenseMatrix> lu;
    DenseMatrix cross; // cross(a, b) = <e_a | e*_b>
    std::vector<ComplexVector> y;
    std::vector<ComplexVector> z;

    Impl(Engine m, Engine c) : main(std::move(m)), conj(std::move(c)) {}

    ComplexVector solve(const ComplexVector& x) const
    {
        if (x.empty())
            return {};
        Eigen::VectorXcd rhs(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            rhs[i] = x[i];
        const Eigen::VectorXcd sol = lu.solve(rhs);
        return ComplexVector(sol.data(), sol.data() + sol.size());
    }

    ComplexVector unit(int l) const
    {
        ComplexVector q(l + 1, Complex(0.0));
        q[l] = 1.0;
        return q;
    }
};

HankelInverter::HankelInverter(const SpectralFactorization& f, int N, const InverterOptions& options)
{
    Engine m = make_engine(f, N);
    Engine c = make_conjugate_engine(m);
    impl_ = std::make_unique<Impl>(std::move(m), std::move(c));
    Impl& s = *impl_;
    s.product = product_matrix(s.main);
    if (options.require_norm_condition && s.product.norm >= 1.0)
        throw Error(Errc::NeumannCondition, "Hankel product norm is not below 1", s.product.norm);

    const int d = s.main.plus.dim;
    if (d > 0) {
        const DenseMatrix sys = DenseMatrix::Identity(d, d) - s.product.entries;
        s.lu.compute(sys);
        const auto diag = s.lu.matrixLU().diagonal().cwiseAbs();
        if (!(diag.minCoeff() > 1e-14 * std::max(1.0, diag.maxCoeff())))
            throw Error(Errc::SmallSystemSingular, "I - H~H is singular", diag.minCoeff());
    }

    const auto pb = s.main.plus_basis();
    const auto cb = s.conj.plus_basis();
    s.cross = DenseMatrix::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            s.cross(a, b) = fraction_inner_product(pb[a].first, pb[a].second, cb[b].first, cb[b].second);

    s.y.resize(N + 1);
    s.z.resize(N + 1);
    for (int l = 0; l <= N; ++l) {
        s.y[l] = s.solve(s.main.x_of(s.main.p_of(s.unit(l))));
        s.z[l] = s.conj.x_of(s.conj.p_of(s.unit(l)));
    }
}

HankelInverter::~HankelInverter() = default;
HankelInverter::HankelInverter(HankelInverter&&) noexcept = default;
HankelInverter& HankelInverter::operator=(HankelInverter&&) noexcept = default;

int HankelInverter::order() const { return impl_->main.N; }

const HankelProductMatrix& HankelInverter::product() const { return impl_->product; }

ComplexVector HankelInverter::apply(const ComplexVector& q) const
{
    const Impl& s = *impl_;
    const int N = s.main.N;
    if (static_cast<int>(q.size()) > N + 1)
        throw Error(Errc::DimensionMismatch, "right-hand side has degree above N");
    ComplexVector padded(q);
    padded.resize(N + 1, Complex(0.0));

    const ComplexVector p = s.main.p_of(padded);
    const ComplexVector y = s.solve(s.main.x_of(p));
    ComplexVector num = y.empty() ? ComplexVector(N + 1, Complex(0.0)) : s.main.phi_plus(y);
    for (Complex& v : num)
        v = -v;
    for (int v = 0; v <= N; ++v)
        num[v] += p[v];

    // num / g1, exact quotient a polynomial of degree <= N
    const ComplexVector& g1 = s.main.plus.poly;
    ComplexVector u(N + 1, Complex(0.0));
    for (int n = 0; n <= N; ++n) {
        Complex acc = num[n];
        for (int i = 1; i < static_cast<int>(g1.size()) && i <= n; ++i)
            acc -= g1[i] * u[n - i];
        u[n] = acc / g1[0];
    }
    return u;
}

std::pair<Complex, Complex> HankelInverter::entry_terms(int k, int l) const
{
    const Impl& s = *impl_;
    const int N = s.main.N;
    if (k < 0 || l < 0 || k > N || l > N)
        throw Error(Errc::InvalidArgument, "entry index outside 0..N");
    // T1: sum over v <= min(k, l) of S1 terms, grouped by pole into the
    // reciprocal series of g2 (index l - v) and g1 (index k - v).
    Complex t1 = 0.0;
    for (int v = 0; v <= std::min(k, l); ++v)
        t1 += s.main.s[l - v] * s.main.t[k - v];
    Complex t2 = 0.0;
    const ComplexVector& y = s.y[l];
    const ComplexVector& z = s.z[k];
    for (std::size_t a = 0; a < y.size(); ++a)
        for (std::size_t b = 0; b < z.size(); ++b)
            t2 -= y[a] * std::conj(z[b]) * s.cross(a, b);
    return {t1, t2};
}

Complex HankelInverter::entry(int k, int l) const
{
    const auto [t1, t2] = entry_terms(k, l);
    return t1 + t2;
}

DenseMatrix HankelInverter::full() const
{
    const int n = impl_->main.N + 1;
    DenseMatrix m(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            m(k, l) = entry(k, l);
    return m;
}

ComplexVector invert_apply(const SpectralFactorization& f, int N, const ComplexVector& q)
{
    return HankelInverter(f, N).apply(q);
}

Complex inverse_entry(const SpectralFactorization& f, int N, int k, int l)
{
    return HankelInverter(f, N).entry(k, l);
}

} // namespace toeplitz
