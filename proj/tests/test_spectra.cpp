#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/fft.hpp"
#include "toeplitz_spectra/polynomial.hpp"
#include "toeplitz_spectra/spectra.hpp"
#include "toeplitz_spectra/toeplitz.hpp"

using namespace toeplitz;
using support::cosine;

namespace {

DenseMatrix random_hermitian(std::mt19937_64& rng, int n)
{
    std::normal_distribution<double> g(0.0, 1.0);
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = Complex(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

// Characteristic polynomial by Faddeev-LeVerrier, ascending coefficients.
ComplexVector char_poly(const DenseMatrix& a)
{
    const int n = static_cast<int>(a.rows());
    ComplexVector c(n + 1);
    c[n] = 1.0;
    DenseMatrix m = DenseMatrix::Zero(n, n);
    const DenseMatrix id = DenseMatrix::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * id;
        c[n - k] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

} // namespace

TEST_CASE("eigenvalues of small examples")
{
    const auto e = hermitian_eigen(ToeplitzMatrix::build(cosine({2.0, -2.0}), 2).dense());
    REQUIRE(e.values.size() == 3);
    CHECK(std::abs(e.values[0] - (2.0 - std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(e.values[1] - 2.0) < 1e-14);
    CHECK(std::abs(e.values[2] - (2.0 + std::sqrt(2.0))) < 1e-14);

    const auto c = hermitian_eigen(3.0 * DenseMatrix::Identity(4, 4));
    for (double v : c.values)
        CHECK(v == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("eigenvalues agree with characteristic polynomial roots")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const DenseMatrix a = random_hermitian(rng, 8);
        const auto e = hermitian_eigen(a);
        ComplexVector roots = aberth_roots(char_poly(a));
        std::vector<double> re;
        for (const Complex& z : roots)
            re.push_back(z.real());
        std::sort(re.begin(), re.end());
        for (int i = 0; i < 8; ++i)
            CHECK(std::abs(re[i] - e.values[i]) < 1e-8);
    }
}

TEST_CASE("eigenvector residuals, trace and determinant")
{
    std::mt19937_64 rng(4);
    for (int n : {5, 30, 65}) {
        const DenseMatrix a = random_hermitian(rng, n);
        const auto e = hermitian_eigen(a, true);
        const double norm = a.operatorNorm();
        for (int j = 0; j < n; ++j) {
            const Eigen::VectorXcd v = e.vectors.col(j);
            CHECK((a * v - e.values[j] * v).norm() <= 1e-9 * norm);
        }
        double sum = 0.0;
        double logdet = 0.0;
        int negative = 0;
        for (double v : e.values) {
            sum += v;
            logdet += std::log(std::abs(v));
            negative += v < 0.0;
        }
        CHECK(std::abs(a.trace() - sum) <= 1e-9 * norm);
        const Complex lu = dense_determinant(a);
        CHECK(std::abs(std::log(std::abs(lu)) - logdet) < 1e-8);
        CHECK(((lu.real() < 0.0) == (negative % 2 == 1)));
    }
}

TEST_CASE("non Hermitian input is rejected")
{
    DenseMatrix a(2, 2);
    a << 1.0, 2.0, 0.0, 1.0;
    try {
        hermitian_eigen(a);
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotHermitian);
    }
}

TEST_CASE("spectrum lies between the extreme values of the symbol")
{
    const TrigSymbol syms[] = {cosine({1.25, -1.0}), cosine({2.0, -2.0}), cosine({3.0, 0.7, -1.1, 0.4})};
    for (const TrigSymbol& f : syms) {
        const double lo = f.min_value(8192);
        const double hi = -f.scaled(-1.0).min_value(8192);
        for (int N : {4, 64, 256}) {
            const auto ev = toeplitz_eigenvalues(f, N);
            CHECK(ev.front() >= lo - 1e-10);
            CHECK(ev.back() <= hi + 1e-10);
        }
    }
}

TEST_CASE("grid localization of the laplacian")
{
    const TrigSymbol f = cosine({2.0, -2.0});
    const std::vector<double> ev{2.0 - std::sqrt(2.0)};
    const auto loc = grid_localize(f, 2, ev);
    CHECK(loc[0].k == 1);
    CHECK(std::abs(loc[0].theta_shift) < 1e-12);

    for (int N : {3, 10, 41}) {
        const auto all = grid_localize(f, N, toeplitz_eigenvalues(f, N));
        std::vector<int> ks;
        for (std::size_t j = 0; j < all.size(); ++j) {
            CHECK(std::abs(all[j].theta_shift) < 1e-9);
            ks.push_back(all[j].k);
        }
        std::sort(ks.begin(), ks.end());
        for (int j = 0; j <= N; ++j)
            CHECK(ks[j] == j + 1);
    }
}

TEST_CASE("grid localization of a constant is degenerate")
{
    const auto loc = grid_localize(TrigSymbol::constant(2.0), 4, std::vector<double>(5, 2.0));
    for (const auto& g : loc) {
        CHECK(g.degenerate);
        CHECK(g.theta_shift == 0.0);
    }
}

TEST_CASE("every eigenvalue of a random symbol localizes")
{
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 4; ++trial) {
        const TrigSymbol f = support::random_unique_min_symbol(rng);
        for (int N : {32, 64}) {
            const auto loc = grid_localize(f, N, toeplitz_eigenvalues(f, N));
            for (const auto& g : loc) {
                CHECK(std::abs(g.theta_shift) < 1.0);
                CHECK(g.k >= 0);
                CHECK(g.k <= N + 1);
            }
        }
    }
}

TEST_CASE("critical points of a cosine polynomial")
{
    // f' = -sin t - sin 2t vanishes at 0, 2 pi/3, pi
    const auto c = critical_points(cosine({0.0, 1.0, 0.5}));
    REQUIRE(c.size() == 3);
    CHECK(std::abs(c[1] - 2.0 * kPi / 3.0) < 1e-12);
}

TEST_CASE("power basis in 1 - cos")
{
    // 2.1 - 2 cos t - 0.1 cos 2t with cos = 1 - x: 0 + 2.4 x - 0.2 x^2... check by evaluation
    const TrigSymbol f = cosine({2.1, -2.0, -0.1, 0.3});
    const auto p = cosine_to_power_basis(f);
    for (double t : {0.1, 1.0, 2.5}) {
        const double x = 1.0 - std::cos(t);
        double v = 0.0;
        for (std::size_t i = p.size(); i-- > 0;)
            v = v * x + p[i];
        CHECK(std::abs(v - f(t)) < 1e-13);
    }
}

TEST_CASE("one antecedent characteristic matrix")
{
    const TrigSymbol f = cosine({2.0, -2.0});
    const auto chr = characterize(f, 1.3);
    REQUIRE(chr.r == 1);
    CHECK(chr.antecedents.size() == 1);
    CHECK(std::abs(std::abs(chr.antecedent_roots[0]) - 1.0) < 1e-15);
    CHECK(std::abs(chr.omegas[0] - std::conj(chr.antecedent_roots[0])) < 1e-14);
    const DenseMatrix h = characteristic_matrix(chr, 7);
    CHECK(std::abs(std::abs(h(0, 0)) - 1.0) < 1e-13);
    CHECK(std::abs(h(0, 0) - std::pow(chr.omegas[0], 18)) < 1e-13);

    const DenseMatrix small = characteristic_matrix(chr, 7, 1e-3);
    CHECK(small.cwiseAbs().maxCoeff() < 1e-40);
}

TEST_CASE("characteristic matrix against a truncated Hankel product")
{
    const int N = 4;
    const double R = 0.7;
    EigenCharacterization chr;
    chr.omegas = {std::polar(1.0, kPi / 3.0), std::polar(1.0, -kPi / 3.0)};
    chr.r = 2;
    const DenseMatrix h = characteristic_matrix(chr, N, R);

    // Phi = chi^{N+1} g1/g2, Phi~ = chi^{-N-1} g2/g1 with
    // g1 = prod (1 - w chi), g2 = prod (1 - w conj(chi)), w = R w_j.
    const int L = 4096;
    ComplexVector phi(L), phit(L);
    for (int i = 0; i < L; ++i) {
        const Complex chi = std::polar(1.0, 2.0 * kPi * i / L);
        Complex g1 = 1.0, g2 = 1.0;
        for (const Complex& w : chr.omegas) {
            g1 *= 1.0 - R * w * chi;
            g2 *= 1.0 - R * w * std::conj(chi);
        }
        phi[i] = std::pow(chi, N + 1) * g1 / g2;
        phit[i] = std::pow(chi, -N - 1) * g2 / g1;
    }
    ComplexVector ph = fft_forward(phi), pt = fft_forward(phit);
    auto at = [&](const ComplexVector& c, int n) { return c[((n % L) + L) % L] / static_cast<double>(L); };

    const int D = 64;
    DenseMatrix p(D, D);
    for (int k = 0; k < D; ++k)
        for (int n = 0; n < D; ++n) {
            Complex acc = 0.0;
            for (int m = 1; m < D; ++m)
                acc += at(pt, k + m) * at(ph, -m - n);
            p(k, n) = acc;
        }
    Eigen::ComplexEigenSolver<DenseMatrix> big(p);
    std::vector<Complex> ev_big(big.eigenvalues().data(), big.eigenvalues().data() + D);
    std::sort(ev_big.begin(), ev_big.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
    Eigen::ComplexEigenSolver<DenseMatrix> small(h);
    std::vector<Complex> ev_small(small.eigenvalues().data(), small.eigenvalues().data() + 2);
    std::sort(ev_small.begin(), ev_small.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
    CHECK(std::abs(ev_big[0] - ev_small[0]) < 1e-6);
    CHECK(std::abs(ev_big[1] - ev_small[1]) < 1e-6);
    CHECK(std::abs(ev_big[2]) < 1e-12);
}

TEST_CASE("characteristic determinant reproduces det T_N(f - lambda)")
{
    struct Case {
        TrigSymbol f;
        int N;
    };
    const Case cases[] = {{cosine({2.1, -2.0, -0.1}), 8}, {cosine({1.0, -0.3, 0.5, 0.2}), 10}, {cosine({2.0, -2.0}), 3}};
    int checked = 0;
    for (const Case& c : cases) {
        for (double lambda : {0.05, 0.6, 1.3, 2.2, 3.7}) {
            CharacteristicDeterminant d;
            try {
                d = characteristic_determinant(c.f, lambda, c.N);
            } catch (const Error&) {
                continue;
            }
            const DenseMatrix t = ToeplitzMatrix::build(c.f.shifted(lambda), c.N).dense();
            const Complex ref = dense_determinant(t);
            const Complex full = d.normalized * std::exp(d.log_modulus_factor);
            CHECK(std::abs(full - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
            CHECK(std::abs(d.normalized.imag()) <= 1e-9 * d.scale_h);
            ++checked;
        }
    }
    CHECK(checked >= 12);
}

TEST_CASE("determinant equation roots")
{
    SUBCASE("laplacian N = 3")
    {
        const auto res = det_equation_roots(cosine({2.0, -2.0}), 3, 0.1, 3.9);
        REQUIRE(res.roots.size() == 4);
        for (int k = 1; k <= 4; ++k)
            CHECK(std::abs(res.roots[k - 1] - (2.0 - 2.0 * std::cos(k * kPi / 5.0))) < 1e-6);
        CHECK(res.phase_ok);
    }
    SUBCASE("empty window")
    {
        const auto res = det_equation_roots(cosine({2.0, -2.0}), 3, -2.0, -1.0);
        CHECK(res.roots.empty());
    }
    SUBCASE("perturbed laplacian N = 8")
    {
        // 2 - 2 cos + 0.05 (2 - 2 cos 2)
        const TrigSymbol f = cosine({2.1, -2.0, -0.1});
        const auto ev = toeplitz_eigenvalues(f, 8);
        const auto res = det_equation_roots(f, 8, ev.front() - 0.05, ev.back() + 0.05);
        REQUIRE(res.roots.size() == ev.size());
        for (std::size_t j = 0; j < ev.size(); ++j)
            CHECK(std::abs(res.roots[j] - ev[j]) < 1e-5);
        CHECK(res.phase_ok);
    }
}

TEST_CASE("weyl gap")
{
    const auto fns = default_test_functions();
    CHECK(weyl_gap(TrigSymbol::constant(1.5), 10, fns) == 0.0);

    const std::vector<TestFunction> id{fns[0]};
    const TrigSymbol lap = cosine({2.0, -2.0});
    CHECK(weyl_gap(lap, 256, id) < weyl_gap(lap, 64, id));
    CHECK(weyl_gap(cosine({1.25, -1.0}), 128, id) <= 0.05);
}

TEST_CASE("minimum eigenvalue reports")
{
    const auto rep = min_eigen_report(cosine({2.0, -2.0}), 50);
    CHECK(std::abs(rep.lambda_min - (2.0 - 2.0 * std::cos(kPi / 52.0))) < 1e-12);
    CHECK(rep.location.k == 1);
    CHECK(std::abs(rep.location.theta_shift) < 1e-9);
    CHECK(rep.theta0 == 0.0);

    const auto c = min_eigen_report(TrigSymbol::constant(0.7), 6);
    CHECK(std::abs(c.lambda_min - 0.7) < 1e-15);

    const auto sweep = min_eigen_sweep(cosine({1.25, -1.0}), {16, 32, 64, 128});
    CHECK(sweep.converging);
    CHECK(sweep.reports.back().grid_point < sweep.reports.front().grid_point);

    try {
        min_eigen_report(cosine({1.0, 0.0, 0.0, 0.0, 1.0}), 10);
        FAIL("expected NonUniqueMinimum");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonUniqueMinimum);
    }
}
