#include "validation/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "tmsort/analysis.hpp"
#include "tmsort/fieldgrid.hpp"
#include "tmsort/hgmodes.hpp"
#include "tmsort/raymatrix.hpp"
#include "tmsort/sorter.hpp"
#include "tmsort/spdc.hpp"

namespace tmsort::validation {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kTauO = 2.95;
constexpr double kTauP = 24.0;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double taup_for_K(double K) { return delta_s() * kTauO * (K + std::sqrt(K * K - 1.0)); }

SampledEnvelope scaled(const SampledEnvelope& e, cplx s) {
    auto o = e;
    for (auto& v : o.samples) v *= s;
    return o;
}

Outcome c1_ptot_minimum() {
    auto t0 = std::chrono::steady_clock::now();
    auto o = optimize_ptot(kTauO, kTauP);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = std::abs(o.ptot_star - 0.055) <= 0.001 && std::abs(o.x_star - 0.93) <= 0.01 && secs < 5.0;
    return {ok, fmt("p_tot=%.6f at tau/sqrt(tau_o tau_p)=%.5f, search %.3f s", o.ptot_star, o.x_star, secs)};
}

Outcome c2_p12_oracle() {
    auto t0 = std::chrono::steady_clock::now();
    auto p = SPDCParams::symmetric_gvm(kTauO, kTauP);
    double worst1 = 0.0, worst2 = 0.0;
    for (int i = 0; i <= 10; ++i) {
        double x = 0.5 + 0.1 * i;
        double tau = x * std::sqrt(kTauO * kTauP);
        auto J = jta_exact_centered(p, povm_grid(tau, kTauO, kTauP, 768));
        auto q = p12_numeric(J, tau);
        worst1 = std::max(worst1, std::abs(q.p1 - p1_analytic(tau, kTauO, kTauP)));
        worst2 = std::max(worst2, std::abs(q.p2 - p2_analytic(tau, kTauO, kTauP)));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = worst1 <= 1e-4 && worst2 <= 1e-4 && secs < 120.0;
    return {ok, fmt("11 points, 768^2 grid: max|dp1|=%.2e max|dp2|=%.2e", worst1, worst2)};
}

Outcome c3_parity_crosstalk() {
    auto p = SPDCParams::symmetric_gvm(kTauO, kTauP);
    double tau = 0.93 * std::sqrt(kTauO * kTauP);
    auto t = parity_probs(jta_exact_centered(p, povm_grid(tau, kTauO, kTauP)));
    double off = std::max(t(0, 1), t(1, 0));
    double worst = 0.0;
    for (double K : {1.0, 2.0, 4.0, 8.0}) {
        auto q = SPDCParams::symmetric_gvm(kTauO, taup_for_K(K));
        auto s = schmidt_analytic(q);
        auto g = parity_probs(jta_gauss_centered(q, povm_grid(s.tau1, kTauO, q.tau_p, 384)));
        worst = std::max({worst, std::abs(g(0, 0) - 0.5 * (1 + 1 / K)), std::abs(g(1, 1) - 0.5 * (1 - 1 / K))});
    }
    return {off < 1e-6 && worst <= 1e-6,
            fmt("exact P_{+1,-1}/P_b'=%.1e; Gaussian K=1,2,4,8 max diagonal error %.1e", off, worst)};
}

Outcome c4_frft_eigen() {
    const double tau = 1.0;
    auto g = standard_grid(tau, 8);
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n) {
        auto e = sample(HGMode{n, tau, 0.0}, g);
        for (double gam : {-pi / 4, -pi / 2, -pi})
            worst = std::max(worst, relative_l2(apply_frft(e, gam, tau), scaled(e, std::polar(1.0, -gam * n))));
    }
    return {worst < 1e-6, fmt("n<=8, gamma in {-pi/4,-pi/2,-pi}: max rel L2 %.2e", worst)};
}

Outcome c5_lct_law() {
    const double tau = 1.0;
    auto g = standard_grid(tau, 6);
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    int count = 0;
    double worst = 0.0;
    while (count < 24) {
        double a = (0.6 + 0.8 * std::abs(U(rng))) * (U(rng) < 0 ? -1.0 : 1.0);
        double b = 2.0 * U(rng) * tau * tau;
        double c = 1.5 * U(rng) / (tau * tau);
        if (std::abs(b) < 0.05 * tau * tau) continue;
        TemporalRayMatrix T(a, b, c, (1.0 + b * c) / a);
        ++count;
        for (int n = 0; n <= 6; ++n) {
            HGMode m{n, tau, 0.0};
            auto num = apply_lct(sample(m, g), T);
            worst = std::max(worst, relative_l2(num, lct_image(m, T).sample(g)));
        }
    }
    return {worst < 1e-6, fmt("%d random matrices, n<=6: max rel L2 %.2e", count, worst)};
}

Outcome c6_schmidt() {
    auto p = SPDCParams::symmetric_gvm(kTauO, taup_for_K(4.0));
    auto sa = schmidt_analytic(p);
    auto J = jta_gauss(p, 512);
    auto sn = schmidt_numeric(J, 1);
    double worst = 0.0;
    for (int n = 0; n <= 9; ++n) {
        double lam = sn.singular_values[n] * sn.singular_values[n] / sa.Pb;
        worst = std::max(worst, std::abs(lam / schmidt_lambda(4.0, n) - 1.0));
    }
    double ov = std::abs(overlap(sample(HGMode{0, sa.tau1, p.tau_o}, J.t_grid), sn.left_modes[0]));
    double dK = std::abs(sn.schmidt_number() - sa.K);
    return {worst <= 1e-4 && ov > 1 - 1e-6 && dK <= 1e-3,
            fmt("K=4: max rel lambda error %.1e (n<=9), mode-0 overlap %.12f, |dK|=%.1e", worst, ov, dK)};
}

Outcome c7_routing() {
    auto spec = SorterSpec::standard(3, 1.0);
    double worst = 0.0, drift = 0.0;
    bool slots = true;
    for (int n = 0; n < 8; ++n) {
        auto r = run_cascade(n, spec);
        auto s = run_cascade(n + 8, spec);
        worst = std::max(worst, r.leakage);
        slots = slots && r.designated == ideal_routing(n, spec).designated && s.designated == r.designated;
        for (std::size_t k = 0; k < r.slot_power.size(); ++k)
            drift = std::max(drift, std::abs(r.slot_power[k] - s.slot_power[k]));
    }
    return {slots && worst < 1e-6 && drift <= 1e-6,
            fmt("m=3, HG_0..7: max leakage %.1e, HG_n vs HG_n+8 slot drift %.1e%s", worst, drift,
                slots ? "" : ", wrong slot")};
}

Outcome c8_bandwidth() {
    const double dt0 = 1.0;
    double worst = 0.0, tbp_err = 0.0;
    for (double g : {-pi / 4, -pi / 2, -pi - 1e-3}) {
        auto r = gaussian_frft_trace(dt0, g);
        worst = std::max(worst, std::abs(r.dOmega2_numeric / r.dOmega0_numeric - 1.0));
        double fw = 2.0 * std::sqrt(2.0 * std::log(2.0));
        tbp_err = std::max(tbp_err, std::abs(fw * dt0 * fw * r.dOmega0_numeric - 4.0 * std::log(2.0)));
    }
    return {worst <= 1e-6 && tbp_err <= 1e-9,
            fmt("bandwidth change max %.1e rel; |TBP - 4 ln 2| = %.1e", worst, tbp_err)};
}

Outcome c9_design() {
    auto r = design_source(4.0, 75.0, kTauO);
    bool ok = std::abs(r.f_RF_min - 72.0) <= 1.0 && std::abs(r.tau_G - 3.5) <= 0.15 &&
              std::abs(r.tau_p - 24.0) <= 0.15 && std::abs(r.tau - 7.3) <= 0.15;
    return {ok, fmt("f_RF_min=%.2f GHz, tau_G=%.3f, tau_p=%.2f, tau=%.3f ps", r.f_RF_min, r.tau_G, r.tau_p, r.tau)};
}

Outcome c10_gouy() {
    const double tau0 = 1.0;
    std::vector<double> D;
    for (int i = -50; i <= 50; ++i) D.push_back(i * tau0 * tau0);
    auto phi = axial_phase_trace(tau0, D);
    double worst = 0.0;
    for (std::size_t i = 0; i < D.size(); ++i)
        worst = std::max(worst, std::abs(phi[i] + 0.5 * std::atan(D[i] / (tau0 * tau0))));
    double shift = phi.back() - phi.front();
    double dev = std::abs(shift + pi / 2);
    return {worst <= 1e-6 && dev <= 0.013,
            fmt("pointwise max error %.1e rad; shift over D=+-50 tau0^2 is %.6f, %.6f from -pi/2 (limit 0.013)", worst,
                shift, dev)};
}

Outcome c11_structural() {
    std::string bad;
    // POVM completeness
    auto p = SPDCParams::symmetric_gvm(kTauO, kTauP);
    double tau = 0.93 * std::sqrt(kTauO * kTauP);
    auto J = jta_exact_centered(p, povm_grid(tau, kTauO, kTauP));
    double c_par = std::abs(parity_probs(J).sum() - 1.0);
    double c_m4 = std::abs(mod4_probs(J, tau).sum() - 1.0);
    // energy per pass
    auto g = standard_grid(1.0, 6, 2048);
    SampledEnvelope a(g), b(g);
    for (std::size_t j = 0; j < g.n_points; ++j) {
        double t = g.t(j);
        a.samples[j] = std::exp(-(t - 0.5) * (t - 0.5) / 3.0) * cplx(1.0, 0.1 * t);
        b.samples[j] = std::exp(-t * t / 1.5) * std::polar(1.0, 0.4 * t);
    }
    DualRailField f{a, b};
    double energy = 0.0;
    for (int ell = 1; ell <= 3; ++ell)
        for (double th : {0.0, pi / 2, -pi / 4})
            energy = std::max(energy, std::abs(interferometer_pass(f, {ell, th, 1.0}).norm2() / f.norm2() - 1.0));
    // cascadability
    auto e = sample(HGMode{3, 1.0, 0.0}, standard_grid(1.0, 3, 2048));
    auto T1 = frft_matrix(-0.6, 1.0) * prop(0.4);
    auto T2 = lens(3.0) * frft_matrix(-1.1, 1.2);
    double casc = relative_l2(apply_lct(apply_lct(e, T1), T2), apply_lct(e, T2 * T1));
    // orthonormality
    auto hg = standard_grid(1.0, 10);
    std::vector<SampledEnvelope> m;
    for (int n = 0; n <= 10; ++n) m.push_back(sample(HGMode{n, 1.0, 0.0}, hg));
    double ortho = 0.0;
    for (int i = 0; i <= 10; ++i)
        for (int k = 0; k <= 10; ++k) ortho = std::max(ortho, std::abs(overlap(m[i], m[k]) - (i == k ? 1.0 : 0.0)));
    bool ok = c_par <= 1e-6 && c_m4 <= 1e-6 && energy <= 1e-9 && casc <= 1e-6 && ortho <= 1e-8;
    return {ok, fmt("completeness %.1e/%.1e, pass energy %.1e, cascade %.1e, HG ortho %.1e", c_par, c_m4, energy,
                    casc, ortho)};
}

template <Outcome (*F)()>
CriterionResult timed(int id, const char* name) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto o = F();
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception& ex) {
        r.pass = false;
        r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

#define CRITERION(id, name, fn) \
    Criterion { id, name, [] { return timed<fn>(id, name); } }

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        CRITERION(1, "modulo-4 error minimum", c1_ptot_minimum),
        CRITERION(2, "p1/p2 closed forms vs quadrature", c2_p12_oracle),
        CRITERION(3, "parity sorter zero cross-talk", c3_parity_crosstalk),
        CRITERION(4, "FrFT eigenvalues", c4_frft_eigen),
        CRITERION(5, "HG image under random LCTs", c5_lct_law),
        CRITERION(6, "Schmidt reproduction", c6_schmidt),
        CRITERION(7, "mod-8 cascade routing", c7_routing),
        CRITERION(8, "FrFT keeps the Gaussian bandwidth", c8_bandwidth),
        CRITERION(9, "source design numbers", c9_design),
        CRITERION(10, "temporal Gouy phase", c10_gouy),
        CRITERION(11, "structural invariants", c11_structural),
    };
    return list;
}

std::string format_line(const CriterionResult& r) {
    return fmt("%s  #%-2d %s: %s (%.2f s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
               r.seconds);
}

std::vector<CriterionResult> run_acceptance(std::ostream& log, const std::vector<int>& only) {
    std::vector<CriterionResult> out;
    for (const auto& c : criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        out.push_back(c.run());
        log << format_line(out.back()) << std::endl;
    }
    return out;
}

bool all_passed(const std::vector<CriterionResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const CriterionResult& r) { return r.pass; });
}

}  // namespace tmsort::validation
