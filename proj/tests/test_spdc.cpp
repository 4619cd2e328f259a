#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tmsort/errors.hpp"
#include "tmsort/hgmodes.hpp"
#include "tmsort/spdc.hpp"

using namespace tmsort;
constexpr double pi = std::numbers::pi;

namespace {

double taup_for_K(double K, double tau_o) { return delta_s() * tau_o * (K + std::sqrt(K * K - 1.0)); }

SPDCParams operating_point() { return SPDCParams::symmetric_gvm(2.95, 24.0); }

}  // namespace

TEST(Params, Derived) {
    auto p = operating_point();
    EXPECT_NEAR(p.Omega_p(), std::sqrt(2 * std::log(2.0)) / 24.0, 1e-15);
    EXPECT_NEAR(p.T_o(), std::sqrt(2.0) * p.Omega_p() * 2.95 / 1.61, 1e-15);
    EXPECT_DOUBLE_EQ(p.T_e(), -p.T_o());
    EXPECT_NEAR(delta_s(), 1.0343, 1e-4);
    EXPECT_NEAR(c_m(), 2.68, 5e-3);
    EXPECT_TRUE(p.symmetric());
}

TEST(Params, Validation) {
    auto p = operating_point();
    p.gain = 0.1 / p.Omega_p();
    EXPECT_THROW(p.validate(), OutOfRegime);
    p.gain = 0.099 / p.Omega_p();
    EXPECT_NO_THROW(p.validate());
    auto q = operating_point();
    q.tau_p = -1.0;
    EXPECT_THROW(q.validate(), InvalidParameter);
}

TEST(Jsa, Values) {
    auto p = operating_point();
    EXPECT_NEAR(std::abs(jsa(p, 0.0, 0.0) - 2 * pi * p.gain), 0.0, 1e-18);
    // sinc zeros along tau_o W + tau_e W' = k pi
    for (int k : {-2, -1, 1, 3}) {
        double W = 0.1, Wp = (k * pi - p.tau_o * W) / p.tau_e;
        EXPECT_NEAR(std::abs(jsa(p, W, Wp)), 0.0, 1e-18);
    }
    for (double W : {-0.7, 0.2, 1.3})
        for (double Wp : {-0.4, 0.9}) EXPECT_NEAR(std::abs(jsa(p, W, Wp)), std::abs(jsa(p, Wp, W)), 1e-18);
}

TEST(Rect, Midpoint) {
    EXPECT_EQ(rect(0.0), 1.0);
    EXPECT_EQ(rect(0.5), 0.5);
    EXPECT_EQ(rect(-0.5), 0.5);
    EXPECT_EQ(rect(0.51), 0.0);
    EXPECT_EQ(aligned_step(0.1, 1.0), 1.0 / 9.5);
    EXPECT_THROW(aligned_step(0.0, 1.0), InvalidParameter);
}

TEST(JtaExact, SupportAndSymmetry) {
    auto p = operating_point();
    auto J = jta_exact_centered(p, 256);
    const auto& g = J.t_grid;
    ASSERT_TRUE(g.is_symmetric());
    const auto n = static_cast<Eigen::Index>(g.n_points);
    const double tol = 1e-12 * J.values.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            double d = std::abs(g.t(i) - g.t(j));
            if (d > 2 * p.tau_o + 1e-9) EXPECT_EQ(J.values(i, j), cplx(0.0));
            EXPECT_LE(std::abs(J.values(i, j) - J.values(n - 1 - i, n - 1 - j)), tol);
            EXPECT_EQ(J.values(i, j), J.values(j, i));
        }
}

TEST(JtaExact, NormIsPbPrime) {
    auto p = operating_point();
    double Pb = generation_probability_exact(p);
    EXPECT_NEAR(Pb, 2 * std::pow(pi / 2, 1.5) * p.gain * p.gain * p.Omega_p() / p.tau_o, 1e-20);
    EXPECT_NEAR(jta_exact_centered(p, 512).norm2() / Pb, 1.0, 1e-6);
    EXPECT_NEAR(jta_exact(p, 512).norm2() / Pb, 1.0, 1e-6);
}

TEST(JtaExact, CenteredIsShiftedGeneral) {
    auto p = operating_point();
    auto g = default_jta_grid(p, 128);
    auto C = jta_exact_centered(p, g);
    auto tg = g, tpg = g;
    tg.t_start += p.tau_o;
    tpg.t_start += p.tau_e;
    auto E = jta_exact(p, tg, tpg);
    EXPECT_LT((E.values - C.values).norm(), 1e-12 * C.values.norm());
}

TEST(JtaExact, Singular) {
    SPDCParams p;
    p.tau_e = p.tau_o;
    auto g = TimeGrid::centered(8, 1.0);
    EXPECT_THROW(jta_exact(p, g, g), SingularConfiguration);
    EXPECT_THROW(jta_exact_centered(SPDCParams{2.0, -1.0, 24.0}, g), InvalidParameter);
}

TEST(JtaGauss, NormIsPb) {
    for (double K : {1.0, 2.0, 4.0, 8.0}) {
        auto p = SPDCParams::symmetric_gvm(2.95, taup_for_K(K, 2.95));
        double Pb = generation_probability_gauss(p);
        EXPECT_NEAR(Pb, 2 * pi * std::pow(p.gain * p.Omega_p(), 2) / std::abs(p.T_o() - p.T_e()), 1e-20);
        EXPECT_NEAR(jta_gauss(p, 256).norm2() / Pb, 1.0, 1e-6) << K;
        EXPECT_NEAR(jta_gauss_centered(p, 256).norm2() / Pb, 1.0, 1e-6) << K;
    }
    // asymmetric GVM
    SPDCParams a{3.0, -1.0, 10.0};
    EXPECT_NEAR(jta_gauss(a, 384).norm2() / generation_probability_gauss(a), 1.0, 1e-6);
}

TEST(JtaGauss, MPositiveDefinite) {
    for (double to : {1.0, 2.95, 5.0})
        for (double te : {-4.0, -1.0, -0.2, 0.5})
            for (double tp : {3.0, 10.0, 24.0}) {
                SPDCParams p{to, te, tp};
                if (!(1 + p.T_o() * p.T_e() > 0) || to == te) continue;
                auto M = gauss_M(p);
                EXPECT_EQ(M(0, 1), M(1, 0));
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
                EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
            }
}

TEST(JtaGauss, CenteredMatchesM) {
    auto p = operating_point();
    auto M = gauss_M(p);
    double T = p.T_o(), O2 = p.Omega_p() * p.Omega_p();
    EXPECT_NEAR(M(0, 0), O2 * (T * T + 1) / (4 * T * T), 1e-15);
    EXPECT_NEAR(M(0, 1), O2 * (T * T - 1) / (4 * T * T), 1e-15);
}

TEST(JtaGauss, SeparableAtKOne) {
    auto p = SPDCParams::symmetric_gvm(2.95, delta_s() * 2.95);
    auto sn = schmidt_numeric(jta_gauss(p, 256), 2);
    EXPECT_LT(sn.singular_values[1] / sn.singular_values[0], 1e-8);
}

TEST(JtaSymmetry, GaussCentered) {
    auto J = jta_gauss_centered(operating_point(), 200);
    const Eigen::Index n = J.values.rows();
    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            err = std::max({err, std::abs(J.values(i, j) - J.values(n - 1 - i, n - 1 - j)),
                            std::abs(J.values(i, j) - J.values(j, i))});
    EXPECT_LT(err, 1e-12 * J.values.cwiseAbs().maxCoeff());
}

TEST(JtaOverlap, ExactVsGauss) {
    // measured 0.9366 at the operating point; a rectangle cannot beat ~0.94 against a Gaussian
    auto p = operating_point();
    auto g = default_jta_grid(p, 512);
    auto E = jta_exact_centered(p, g), G = jta_gauss_centered(p, g);
    double ov = std::abs(E.values.cwiseProduct(G.values.conjugate()).sum()) / (E.values.norm() * G.values.norm());
    EXPECT_GT(ov, 0.93);
    EXPECT_LT(ov, 0.95);
}

TEST(Schmidt, Analytic) {
    auto one = schmidt_analytic(SPDCParams::symmetric_gvm(2.95, delta_s() * 2.95));
    EXPECT_NEAR(one.K, 1.0, 1e-12);
    EXPECT_NEAR(one.lambdas[0], 1.0, 1e-12);

    auto p = operating_point();
    auto s = schmidt_analytic(p);
    double sum = 0.0;
    for (double l : s.lambdas) sum += l;
    EXPECT_NEAR(sum, 1.0, 1e-9);
    for (std::size_t n = 0; n + 1 < s.lambdas.size(); ++n)
        EXPECT_NEAR(s.lambdas[n + 1] / s.lambdas[n], (s.K - 1) / (s.K + 1), 1e-14);
    double inv = 0.0;
    for (double l : s.lambdas) inv += l * l;
    EXPECT_NEAR(1.0 / inv, s.K, 1e-9);
    EXPECT_DOUBLE_EQ(s.tau1, s.tau2);
    EXPECT_NEAR(s.tau1, std::sqrt(p.tau_o * p.tau_p / (1.61 * std::sqrt(std::log(2.0)))), 1e-12);
    EXPECT_NEAR(s.tau1 / std::sqrt(p.tau_o * p.tau_p), 0.86, 0.005);
    EXPECT_DOUBLE_EQ(s.Pb, generation_probability_gauss(p));
}

TEST(Schmidt, SymmetricKFormula) {
    // K = (T + 1/T)/2; T_o = 2 lies outside 1 + T_o T_e > 0, its mirror T_o = 1/2 gives the same K
    auto with_T = [](double T) {
        double to = 2.95;
        return SPDCParams::symmetric_gvm(to, std::sqrt(2.0) * std::sqrt(2 * std::log(2.0)) * to / (1.61 * T));
    };
    auto p = with_T(0.5);
    EXPECT_NEAR(p.T_o(), 0.5, 1e-12);
    EXPECT_NEAR(schmidt_analytic(p).K, 1.25, 1e-12);
    EXPECT_THROW(schmidt_analytic(with_T(2.0)), OutOfRegime);
    EXPECT_THROW(schmidt_analytic(SPDCParams{2.0, -1.0, 1.0}), OutOfRegime);
}

TEST(Schmidt, LambdaK4) {
    EXPECT_NEAR(schmidt_lambda(4.0, 0), 0.4, 1e-15);
    EXPECT_NEAR(schmidt_lambda(4.0, 1), 0.24, 1e-15);
    EXPECT_THROW(schmidt_lambda(0.5, 0), InvalidParameter);
}

TEST(Schmidt, NumericMatchesAnalytic) {
    for (double K : {2.0, 4.0, 8.0}) {
        auto p = SPDCParams::symmetric_gvm(2.95, taup_for_K(K, 2.95));
        auto J = jta_gauss(p, 512);
        auto sn = schmidt_numeric(J, 2);
        auto sa = schmidt_analytic(p);
        for (int n = 0; n <= 9; ++n) {
            double lam = sn.singular_values[n] * sn.singular_values[n] / sa.Pb;
            EXPECT_NEAR(lam / schmidt_lambda(K, n), 1.0, 1e-4) << K << " " << n;
        }
        EXPECT_NEAR(sn.schmidt_number(), sa.K, 1e-3);
        EXPECT_NEAR(sn.singular_values.squaredNorm(), J.norm2(), 1e-12 * J.norm2());
        auto m0 = sample(HGMode{0, sa.tau1, p.tau_o}, J.t_grid);
        EXPECT_GT(std::abs(overlap(m0, sn.left_modes[0])), 1 - 1e-6);
        auto r0 = sample(HGMode{0, sa.tau2, p.tau_e}, J.tprime_grid);
        EXPECT_GT(std::abs(overlap(r0, sn.right_modes[0])), 1 - 1e-6);
    }
}

TEST(Design, OperatingPointNumbers) {
    auto r = design_source(4.0, 75.0, 2.95);
    EXPECT_NEAR(r.f_RF_min, 72.0, 1.0);
    EXPECT_NEAR(r.tau_G, 3.5, 0.1);
    EXPECT_NEAR(r.tau_p, 24.0, 0.1);
    EXPECT_NEAR(r.tau, 7.3, 0.1);
    EXPECT_NEAR(r.Omega_m, 4 * pi * 0.075, 1e-15);
    EXPECT_TRUE(r.aperture_ok);
    // frozen
    EXPECT_NEAR(r.f_RF_min, 72.3, 0.05);
    EXPECT_NEAR(r.tau_G, 3.5335, 1e-4);
}

TEST(Design, KOneAndInfeasible) {
    EXPECT_NEAR(design_source(1.0, 75.0, 2.95).tau_p, delta_s() * 2.95, 1e-12);
    EXPECT_THROW(design_source(0.5, 75.0, 2.95), InfeasibleDesign);
    EXPECT_THROW(design_source(4.0, -1.0, 2.95), InvalidParameter);
    EXPECT_FALSE(design_source(4.0, 20.0, 2.95).aperture_ok);
}
