#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tmsort/errors.hpp"
#include "tmsort/hgmodes.hpp"
#include "tmsort/sorter.hpp"

using namespace tmsort;
constexpr double pi = std::numbers::pi;

namespace {

SampledEnvelope mode(int n, double tau, const TimeGrid& g) { return sample(HGMode{n, tau, 0.0}, g); }

double frac_a(const DualRailField& f) { return f.beam_a.norm2() / f.norm2(); }

}  // namespace

TEST(BeamSplit, VacuumInB) {
    auto g = TimeGrid::centered(64, 0.2);
    auto e = mode(1, 1.0, g);
    auto o = beamsplit(DualRailField::in_port(e, Port::A));
    for (std::size_t j = 0; j < g.n_points; ++j) {
        EXPECT_NEAR(std::abs(o.beam_a.samples[j] - e.samples[j] / std::sqrt(2.0)), 0.0, 1e-16);
        EXPECT_NEAR(std::abs(o.beam_b.samples[j] + e.samples[j] / std::sqrt(2.0)), 0.0, 1e-16);
    }
}

TEST(BeamSplit, InverseAndNorm) {
    auto g = TimeGrid::centered(64, 0.2);
    DualRailField f{mode(0, 1.0, g), mode(3, 0.7, g)};
    for (auto& v : f.beam_b.samples) v *= cplx(0.3, -1.2);
    auto b = beamsplit(f);
    EXPECT_NEAR(b.norm2() / f.norm2(), 1.0, 1e-14);
    auto back = beamsplit_inverse(b);
    EXPECT_LT(relative_l2(back.beam_a, f.beam_a), 1e-12);
    EXPECT_LT(relative_l2(back.beam_b, f.beam_b), 1e-12);
    EXPECT_THROW(beamsplit(DualRailField{f.beam_a, mode(0, 1.0, TimeGrid::centered(65, 0.2))}), IncompatibleGrid);
}

TEST(Pass, ParityStage) {
    double tau = 1.0;
    auto g = standard_grid(tau, 7, 2048);
    for (int n = 0; n <= 7; ++n) {
        auto f = DualRailField::in_port(mode(n, tau, g), Port::A);
        auto o = interferometer_pass(f, {1, 0.0, tau});
        EXPECT_NEAR(o.norm2() / f.norm2(), 1.0, 1e-9);
        EXPECT_NEAR(frac_a(o), n % 2 ? 0.0 : 1.0, 1e-9) << n;
    }
}

TEST(Pass, FourierStageQuotedPhases) {
    // Psi_1 and Psi_3 arrive in B; theta = pi/2
    double tau = 1.0;
    auto g = standard_grid(tau, 3, 2048);
    auto o1 = interferometer_pass(DualRailField::in_port(mode(1, tau, g), Port::B), {2, pi / 2, tau});
    EXPECT_NEAR(frac_a(o1), 1.0, 1e-8);
    auto o3 = interferometer_pass(DualRailField::in_port(mode(3, tau, g), Port::B), {2, pi / 2, tau});
    EXPECT_NEAR(frac_a(o3), 0.0, 1e-8);
    auto o0 = interferometer_pass(DualRailField::in_port(mode(0, tau, g), Port::A), {2, 0.0, tau});
    auto o2 = interferometer_pass(DualRailField::in_port(mode(2, tau, g), Port::A), {2, 0.0, tau});
    EXPECT_NEAR(frac_a(o0), 1.0, 1e-8);
    EXPECT_NEAR(frac_a(o2), 0.0, 1e-8);
}

TEST(Pass, EnergyConservedForArbitraryInput) {
    double tau = 1.0;
    auto g = standard_grid(tau, 6, 2048);
    SampledEnvelope a(g), b(g);
    for (std::size_t j = 0; j < g.n_points; ++j) {
        double t = g.t(j);
        a.samples[j] = std::exp(-(t - 0.5) * (t - 0.5) / 3.0) * cplx(1.0, 0.1 * t);
        b.samples[j] = std::exp(-t * t / 1.5) * std::polar(1.0, 0.4 * t);
    }
    DualRailField f{a, b};
    for (int ell = 1; ell <= 3; ++ell)
        for (double th : {0.0, 0.7, -pi / 4}) EXPECT_NEAR(interferometer_pass(f, {ell, th, tau}).norm2() / f.norm2(), 1.0, 1e-9);
}

TEST(Pass, DecomposedGate) {
    double tau = 1.0;
    auto g = TimeGrid::centered(4096, 0.02, tau);
    GateOptions dec;
    dec.decomposed = true;
    for (int n = 0; n <= 3; ++n) {
        auto f = DualRailField::in_port(mode(n, tau, g), Port::A);
        auto x = interferometer_pass(f, {2, 0.0, tau}, dec);
        auto y = interferometer_pass(f, {2, 0.0, tau});
        EXPECT_LT(relative_l2(x.beam_a, y.beam_a) * std::sqrt(frac_a(y)), 1e-8);
    }
}

TEST(Schedule, Default) {
    auto s = default_theta_schedule(3);
    EXPECT_EQ(s.at({1, 0}), 0.0);
    EXPECT_EQ(s.at({2, 0}), 0.0);
    EXPECT_EQ(s.at({2, 1}), pi / 2);
    // window 0 carries (0, 4), window 1 carries (1, 5)
    EXPECT_EQ(s.at({3, 0}), 0.0);
    EXPECT_NEAR(s.at({3, 1}), -pi / 4, 1e-15);
    EXPECT_EQ(s.size(), 7u);
    for (auto& [k, v] : default_theta_schedule(6)) EXPECT_TRUE(std::isfinite(v));
}

TEST(Schedule, QuotedPhaseSum) {
    // Psi_3 at stage 2: 3 pi/2 from the gate plus theta_2 = pi/2 -> 2 pi, constructive
    double ph = 3 * pi / 2 + default_theta_schedule(2).at({2, 1});
    EXPECT_NEAR(std::cos(ph), 1.0, 1e-15);
}

TEST(SorterSpecCheck, Validation) {
    auto s = SorterSpec::standard(3, 1.0);
    EXPECT_NO_THROW(s.validate());
    EXPECT_NEAR(s.delta_t, 8.0 * std::sqrt(8.0), 1e-12);
    auto bad = SorterSpec::standard(0, 1.0);
    EXPECT_THROW(bad.validate(), InvalidParameter);
    s.delta_t = 1.0;
    EXPECT_THROW(s.validate(), InvalidParameter);
    auto inc = SorterSpec::standard(2, 1.0);
    inc.theta_schedule.erase({2, 1});
    EXPECT_THROW(inc.validate(), InvalidParameter);
    EXPECT_EQ(SorterSpec::standard(3, 1.0).n_slots(), 8);
}

TEST(Routing, SlotIndex) {
    EXPECT_EQ((Slot{0, Port::A}.index(2)), 0);
    EXPECT_EQ((Slot{1, Port::A}.index(2)), 1);
    EXPECT_EQ((Slot{0, Port::B}.index(2)), 2);
    EXPECT_EQ((Slot{1, Port::B}.index(2)), 3);
}

TEST(Routing, IdealIsPermutation) {
    for (int m = 1; m <= 6; ++m) {
        auto s = SorterSpec::standard(m, 1.0);
        std::vector<int> seen(s.n_slots(), 0);
        for (int n = 0; n < s.n_slots(); ++n) {
            auto r = ideal_routing(n, s);
            ++seen[r.designated.index(m)];
            EXPECT_EQ(r.designated, ideal_routing(n + s.n_slots(), s).designated);
        }
        for (int c : seen) EXPECT_EQ(c, 1) << m;
    }
}

TEST(Routing, ModFourLabels) {
    // slot index of n = 0..3 equals u with (j, l) = (++, --, +-, -+)
    auto s = SorterSpec::standard(2, 1.0);
    for (int n = 0; n < 4; ++n) EXPECT_EQ(ideal_routing(n, s).designated.index(2), n);
}

TEST(Cascade, ParityOnly) {
    auto s = SorterSpec::standard(1, 1.0);
    for (int n = 0; n <= 5; ++n) {
        auto r = run_cascade(n, s);
        EXPECT_EQ(r.designated.port, n % 2 ? Port::B : Port::A);
        EXPECT_LT(r.leakage, 1e-9);
    }
}

TEST(Cascade, ModFour) {
    auto s = SorterSpec::standard(2, 1.0);
    for (int n = 0; n < 4; ++n) EXPECT_LT(run_cascade(n, s).leakage, 1e-8) << n;
}

TEST(Cascade, ModEightAndPeriodicity) {
    auto s = SorterSpec::standard(3, 1.0);
    for (int n = 0; n < 8; ++n) {
        auto a = run_cascade(n, s);
        auto b = run_cascade(n + 8, s);
        EXPECT_LT(a.leakage, 1e-6) << n;
        EXPECT_EQ(a.designated, b.designated);
        for (std::size_t k = 0; k < a.slot_power.size(); ++k) EXPECT_NEAR(a.slot_power[k], b.slot_power[k], 1e-6);
    }
}

TEST(Crosstalk, RowsSumToOne) {
    auto s = SorterSpec::standard(2, 1.3);
    auto X = crosstalk_matrix(s, 5);
    ASSERT_EQ(X.size(), 6u);
    for (auto& row : X) {
        double sum = 0.0;
        for (double v : row) sum += v;
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(X[0][k], X[4][k], 1e-6);
}
