#include "toeplitz_spectra/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "toeplitz_spectra/error.hpp"

namespace toeplitz {

double series_binomial(int h, long u)
{
    if (u < 0)
        return 0.0;
    double b = 1.0;
    for (int i = 1; i < h; ++i)
        b = b * static_cast<double>(u + i) / i;
    return b;
}

TauExpansion::TauExpansion(int m) : m_(m)
{
    if (m < 1)
        throw Error(Errc::InvalidArgument, "tau order must be positive");
    for (int k = 1; k <= m; ++k) {
        // C(m-1, k-1) times the rising factorial r (r+1) ... (r + m - k - 1)
        std::int64_t binom = 1;
        for (int i = 1; i <= k - 1; ++i)
            binom = binom * (m - 1 - (k - 1) + i) / i;
        std::vector<std::int64_t> p{binom};
        for (int i = 0; i < m - k; ++i) {
            std::vector<std::int64_t> next(p.size() + 1, 0);
            for (std::size_t a = 0; a < p.size(); ++a) {
                next[a + 1] += p[a];
                next[a] += p[a] * i;
            }
            p = std::move(next);
        }
        phi_.push_back(std::move(p));
    }
}

std::int64_t TauExpansion::phi(int k, std::int64_t r) const
{
    const auto& c = phi_[k - 1];
    std::int64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        v = v * r + c[i];
    return v;
}

std::int64_t TauExpansion::tau(int m, std::int64_t u)
{
    std::int64_t v = 1;
    for (int i = 1; i < m; ++i)
        v *= u + i;
    return v;
}

double TauExpansion::psi(int k, int m, long r)
{
    const int top = m - k;
    if (top == 0)
        return 1.0;
    if (r <= 0)
        return 0.0;
    double b = 1.0;
    for (int i = 1; i <= top; ++i)
        b = b * static_cast<double>(r - 1 + i) / i;
    return b;
}

Complex RationalHardyElement::operator()(Complex chi) const
{
    Complex acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        acc += poly[i] * std::pow(chi, poly_offset + static_cast<int>(i));
    for (const RationalTerm& t : plus)
        acc += t.coeff * std::pow(chi, t.shift) / std::pow(1.0 - t.pole * chi, t.order);
    for (const RationalTerm& t : minus)
        acc += t.coeff * std::pow(chi, t.shift) / std::pow(1.0 - t.pole * std::conj(chi), t.order);
    return acc;
}

Complex RationalHardyElement::fourier_coeff(long n) const
{
    Complex acc = 0.0;
    const long idx = n - poly_offset;
    if (idx >= 0 && idx < static_cast<long>(poly.size()))
        acc += poly[idx];
    for (const RationalTerm& t : plus) {
        const long u = n - t.shift;
        if (u >= 0)
            acc += t.coeff * series_binomial(t.order, u) * std::pow(t.pole, u);
    }
    for (const RationalTerm& t : minus) {
        const long u = t.shift - n;
        if (u >= 0)
            acc += t.coeff * series_binomial(t.order, u) * std::pow(t.pole, u);
    }
    return acc;
}

void RationalHardyElement::add_monomial(int exponent, Complex c)
{
    if (poly.empty()) {
        poly_offset = exponent;
        poly.push_back(c);
        return;
    }
    if (exponent < poly_offset) {
        poly.insert(poly.begin(), poly_offset - exponent, Complex(0.0));
        poly_offset = exponent;
    }
    const std::size_t idx = exponent - poly_offset;
    if (idx >= poly.size())
        poly.resize(idx + 1, Complex(0.0));
    poly[idx] += c;
}

namespace {

std::vector<RationalTerm> merge_terms(const std::vector<RationalTerm>& terms)
{
    using Key = std::tuple<double, double, int, int>;
    std::map<Key, Complex> acc;
    for (const RationalTerm& t : terms)
        acc[Key{t.pole.real(), t.pole.imag(), t.order, t.shift}] += t.coeff;
    std::vector<RationalTerm> out;
    for (const auto& [key, c] : acc) {
        if (c == Complex(0.0))
            continue;
        const auto& [re, im, order, shift] = key;
        out.push_back(RationalTerm{Complex(re, im), order, c, shift});
    }
    return out;
}

} // namespace

RationalHardyElement RationalHardyElement::simplified() const
{
    RationalHardyElement out;
    std::size_t lo = 0;
    std::size_t hi = poly.size();
    while (lo < hi && poly[lo] == Complex(0.0))
        ++lo;
    while (hi > lo && poly[hi - 1] == Complex(0.0))
        --hi;
    out.poly.assign(poly.begin() + lo, poly.begin() + hi);
    out.poly_offset = out.poly.empty() ? 0 : poly_offset + static_cast<int>(lo);
    out.plus = merge_terms(plus);
    out.minus = merge_terms(minus);
    return out;
}

RationalHardyElement project_plus(const RationalHardyElement& x)
{
    RationalHardyElement out;
    for (std::size_t i = 0; i < x.poly.size(); ++i) {
        const int e = x.poly_offset + static_cast<int>(i);
        if (e >= 0)
            out.add_monomial(e, x.poly[i]);
    }
    for (const RationalTerm& t : x.plus) {
        if (t.shift >= 0) {
            out.plus.push_back(t);
            continue;
        }
        // chi^{-m}/(1 - w chi)^h -> w^m sum_k psi_{k,h}(m)/(1 - w chi)^k
        const long m = -t.shift;
        const Complex wm = std::pow(t.pole, m);
        for (int k = 1; k <= t.order; ++k)
            out.plus.push_back(RationalTerm{t.pole, k, t.coeff * wm * TauExpansion::psi(k, t.order, m), 0});
    }
    for (const RationalTerm& t : x.minus) {
        if (t.shift < 0)
            continue;
        // chi^r/(1 - a conj(chi))^h: frequencies r - u for u >= 0
        Complex apow = 1.0;
        for (int u = 0; u <= t.shift; ++u) {
            out.add_monomial(t.shift - u, t.coeff * apow * series_binomial(t.order, u));
            apow *= t.pole;
        }
    }
    return out.simplified();
}

RationalHardyElement project_minus(const RationalHardyElement& x)
{
    RationalHardyElement out;
    for (std::size_t i = 0; i < x.poly.size(); ++i) {
        const int e = x.poly_offset + static_cast<int>(i);
        if (e < 0)
            out.add_monomial(e, x.poly[i]);
    }
    for (const RationalTerm& t : x.plus) {
        if (t.shift >= 0)
            continue;
        // chi^r/(1 - w chi)^h with r < 0: frequencies r + u for 0 <= u < -r
        Complex wpow = 1.0;
        for (int u = 0; u < -t.shift; ++u) {
            out.add_monomial(t.shift + u, t.coeff * wpow * series_binomial(t.order, u));
            wpow *= t.pole;
        }
    }
    for (const RationalTerm& t : x.minus) {
        if (t.shift < 0) {
            out.minus.push_back(t);
            continue;
        }
        // chi^r/(1 - a conj(chi))^h -> a^{r+1} conj(chi) sum_k psi_{k,h}(r+1)/(1 - a conj(chi))^k
        const long r1 = t.shift + 1;
        const Complex ar = std::pow(t.pole, r1);
        for (int k = 1; k <= t.order; ++k)
            out.minus.push_back(RationalTerm{t.pole, k, t.coeff * ar * TauExpansion::psi(k, t.order, r1), -1});
    }
    return out.simplified();
}

} // namespace toeplitz
