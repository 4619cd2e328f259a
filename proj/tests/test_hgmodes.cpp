#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tmsort/errors.hpp"
#include "tmsort/fft.hpp"
#include "tmsort/hgmodes.hpp"
#include "tmsort/quadrature.hpp"

using namespace tmsort;
constexpr double pi = std::numbers::pi;

TEST(Hermite, KnownValues) {
    EXPECT_NEAR(hermite_function(0, 0.0), std::pow(pi, -0.25), 1e-15);
    EXPECT_NEAR(hermite_function(0, 0.0), 0.7511255444649425, 1e-15);
    // h1 = sqrt(2) x exp(-x^2/2) / pi^{1/4}
    EXPECT_NEAR(hermite_function(1, 0.7), std::sqrt(2.0) * 0.7 * std::exp(-0.245) * std::pow(pi, -0.25), 1e-15);
    // h3 = (2x^3 - 3x)/sqrt(3) exp(-x^2/2) / pi^{1/4}
    double x = 1.3;
    EXPECT_NEAR(hermite_function(3, x),
                (2 * x * x * x - 3 * x) / std::sqrt(3.0) * std::exp(-x * x / 2) * std::pow(pi, -0.25), 1e-14);
    for (int n = 1; n < 40; n += 2) EXPECT_EQ(hermite_function(n, 0.0), 0.0);
    auto all = hermite_functions(10, 0.4);
    for (int n = 0; n <= 10; ++n) EXPECT_DOUBLE_EQ(all[n], hermite_function(n, 0.4));
}

TEST(Hermite, HighOrderStable) {
    // far tails underflow to zero, no NaN
    for (int n : {100, 300}) {
        EXPECT_TRUE(std::isfinite(hermite_function(n, 5.0)));
        EXPECT_EQ(hermite_function(n, 60.0), 0.0);
    }
    // h_n norm by quadrature at n = 60
    double s = integrate([](double x) { return std::pow(hermite_function(60, x), 2); }, -16.0, 16.0);
    EXPECT_NEAR(s, 1.0, 1e-10);
}

TEST(HGMode, Eval) {
    EXPECT_NEAR(eval(HGMode{0, 1.0, 0.0}, 0.0).real(), 0.7511255444649425, 1e-15);
    EXPECT_NEAR(std::abs(eval(HGMode{5, 2.0, 1.5}, 1.5)), 0.0, 1e-300);
    EXPECT_NEAR(eval(HGMode{2, 4.0, 0.0}, 0.0).real(), hermite_function(2, 0.0) / 2.0, 1e-15);
}

TEST(HGMode, NormByQuadrature) {
    double tau = 1.7;
    double s = integrate([&](double t) { return std::norm(eval(HGMode{5, tau, 0.0}, t)); }, -12 * tau, 12 * tau);
    EXPECT_NEAR(s, 1.0, 1e-10);
}

TEST(HGMode, Orthonormality) {
    double tau = 1.0;
    auto g = standard_grid(tau, 10);
    EXPECT_EQ(g.n_points, 4096u);
    std::vector<SampledEnvelope> m;
    for (int n = 0; n <= 10; ++n) m.push_back(sample(HGMode{n, tau, 0.0}, g));
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) EXPECT_NEAR(std::abs(overlap(m[i], m[j]) - (i == j ? 1.0 : 0.0)), 0.0, 1e-8);
}

TEST(HGMode, ShiftedOverlap) {
    double tau = 0.8;
    auto g = TimeGrid::spanning(4097, 20.0, tau);
    auto a = sample(HGMode{0, tau, 5 * tau}, g);
    auto b = sample(HGMode{0, tau, 0.0}, g);
    cplx o = overlap(a, b);
    EXPECT_NEAR(o.real(), std::exp(-25.0 / 4.0), 1e-12);
    EXPECT_NEAR(o.imag(), 0.0, 1e-15);
    EXPECT_THROW(overlap(a, sample(HGMode{0, tau, 0.0}, TimeGrid::spanning(4096, 20.0))), IncompatibleGrid);
}

TEST(HGMode, SpectrumParityAndShape) {
    double tau = 1.3;
    for (int n = 0; n <= 5; ++n) {
        HGMode m{n, tau, 0.0};
        for (double W : {0.1, 0.9, 2.4}) {
            cplx p = spectrum(m, W), q = spectrum(m, -W);
            EXPECT_NEAR(std::abs(q - (n % 2 ? -p : p)), 0.0, 1e-12);
            // h_n is an eigenfunction of the Fourier transform: psi_n = i^n sqrt(2 pi tau) h_n(W tau)
            cplx ex = std::pow(cplx(0, 1), n) * std::sqrt(2 * pi * tau) * hermite_function(n, W * tau);
            EXPECT_NEAR(std::abs(p - ex), 0.0, 1e-10);
        }
    }
}

TEST(HGMode, SpectrumNormalization) {
    double tau = 0.6;
    double s = integrate([&](double W) { return std::norm(spectrum(HGMode{1, tau, 0.0}, W)); }, -20 / tau, 20 / tau,
                         1e-10);
    EXPECT_NEAR(s / (2 * pi), 1.0, 1e-8);
}

TEST(HGMode, TimeBandwidthProduct) {
    // intensity FWHMs of Psi_0 and |psi_0|^2
    double tau = 2.0;
    double T = 2 * tau * std::sqrt(std::log(2.0));
    double half = std::norm(spectrum(HGMode{0, tau, 0.0}, 0.0)) / 2;
    // bisection for the spectral half-maximum
    double lo = 0.0, hi = 5.0 / tau;
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2;
        (std::norm(spectrum(HGMode{0, tau, 0.0}, mid)) > half ? lo : hi) = mid;
    }
    EXPECT_NEAR(T * 2 * lo, 4 * std::log(2.0), 1e-9);
}

TEST(LctImage, Identity) {
    auto im = lct_image(HGMode{3, 1.1, 0.0}, identity_matrix());
    EXPECT_NEAR(std::abs(im.phase - 1.0), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(im.beta, 1.0);
    for (double t : {-2.0, 0.3, 1.7}) EXPECT_NEAR(std::abs(im.eval(t) - eval(HGMode{3, 1.1, 0.0}, t)), 0.0, 1e-15);
}

TEST(LctImage, DispersedWidth) {
    double tau = 1.5, D = 4.0;
    auto im = lct_image(HGMode{0, tau, 0.0}, prop(D));
    EXPECT_NEAR(tau * im.beta, tau * std::sqrt(1 + D * D / std::pow(tau, 4)), 1e-14);
    EXPECT_NEAR(std::abs(im.phase), 1.0, 1e-15);
}

TEST(LctImage, FrftEigen) {
    double tau = 0.9;
    for (int n = 0; n <= 6; ++n) {
        double g = -pi / 3;
        auto im = lct_image(HGMode{n, tau, 0.0}, frft_matrix(g, tau));
        EXPECT_NEAR(im.beta, 1.0, 1e-14);
        EXPECT_NEAR(std::abs(im.alpha), 0.0, 1e-14);
        cplx net = im.phase * std::polar(1.0, g / 2);
        EXPECT_NEAR(std::abs(net - std::polar(1.0, -g * n)), 0.0, 1e-13);
    }
}

TEST(LctImage, RejectsShifted) { EXPECT_THROW(lct_image(HGMode{0, 1.0, 0.5}, prop(1.0)), UnsupportedInput); }

TEST(HGMode, TruncatedCompleteness) {
    // projecting a bandlimited test function onto n <= N converges monotonically
    double tau = 1.0;
    auto g = standard_grid(tau, 40);
    SampledEnvelope f(g);
    for (std::size_t j = 0; j < g.n_points; ++j) {
        double t = g.t(j);
        f.samples[j] = std::exp(-(t - 0.8) * (t - 0.8) / 1.5) * cplx(1.0, 0.3 * t);
    }
    double prev = 1e300;
    SampledEnvelope proj(g);
    for (int n = 0; n <= 40; ++n) {
        auto psi = sample(HGMode{n, tau, 0.0}, g);
        cplx c = overlap(psi, f);
        for (std::size_t j = 0; j < g.n_points; ++j) proj.samples[j] += c * psi.samples[j];
        double err = 0.0;
        for (std::size_t j = 0; j < g.n_points; ++j) err += std::norm(proj.samples[j] - f.samples[j]);
        // monotone until roundoff
        if (prev * g.dt > 1e-24) EXPECT_LE(err, prev * (1 + 1e-12));
        prev = err;
    }
    EXPECT_LT(std::sqrt(prev * g.dt / f.norm2()), 1e-6);
}
