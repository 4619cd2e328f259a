#include "tmsort/sorter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tmsort/errors.hpp"
#include "tmsort/hgmodes.hpp"

namespace tmsort {

namespace {

constexpr double pi = std::numbers::pi;
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
constexpr double kNegligible = 1e-24;

double gate_angle(int ell) { return -2.0 * pi / static_cast<double>(1 << ell); }

// Port after one ideal pass for mode n entering `in`.
Port ideal_exit(int n, int ell, double theta, Port in) {
    double ph = theta - gate_angle(ell) * n;  // exp(i theta) * exp(-i gamma n)
    bool constructive = std::cos(ph) > 0.0;
    if (constructive) return in;
    return in == Port::A ? Port::B : Port::A;
}

// Window and port at the entry of every stage for mode n. Needs theta for
// stages < ell only.
std::pair<int, Port> route_until(int n, int ell, const std::map<std::pair<int, int>, double>& sched) {
    int w = 0;
    Port p = Port::A;
    for (int l = 1; l < ell; ++l) {
        p = ideal_exit(n, l, sched.at({l, w}), p);
        if (p == Port::B) w += 1 << (l - 1);
    }
    return {w, p};
}

SampledEnvelope scaled_sum(const SampledEnvelope& x, cplx a, const SampledEnvelope& y, cplx b) {
    require_same_grid(x.grid, y.grid, "dual-rail field");
    SampledEnvelope out(x.grid);
    for (std::size_t j = 0; j < x.size(); ++j) out.samples[j] = a * x.samples[j] + b * y.samples[j];
    return out;
}

}  // namespace

const char* port_name(Port p) { return p == Port::A ? "A" : "B"; }

DualRailField DualRailField::in_port(const SampledEnvelope& env, Port p) {
    SampledEnvelope vac(env.grid);
    return p == Port::A ? DualRailField{env, vac} : DualRailField{vac, env};
}

std::map<std::pair<int, int>, double> default_theta_schedule(int m) {
    std::map<std::pair<int, int>, double> s;
    if (m >= 1) s[{1, 0}] = 0.0;
    if (m >= 2) {
        s[{2, 0}] = 0.0;
        s[{2, 1}] = pi / 2.0;
    }
    for (int ell = 3; ell <= m; ++ell) {
        int nres = 1 << (ell - 1);
        for (int r = 0; r < nres; ++r) {
            int w = route_until(r, ell, s).first;
            if (s.count({ell, w})) throw std::logic_error("theta schedule: two residues share a window");
            s[{ell, w}] = -2.0 * pi * r / static_cast<double>(1 << ell);
        }
    }
    return s;
}

SorterSpec SorterSpec::standard(int m, double tau) {
    SorterSpec s;
    s.m = m;
    s.tau = tau;
    if (m >= 1 && m <= 16) {
        s.delta_t = 8.0 * tau * std::sqrt(static_cast<double>(1 << m));
        s.theta_schedule = default_theta_schedule(m);
    }
    return s;
}

void SorterSpec::validate() const {
    if (m < 1 || m > 10) throw InvalidParameter("sorter: m must be in [1, 10]");
    if (!(tau > 0.0)) throw InvalidParameter("sorter: tau must be positive");
    if (n_points < 16) throw InvalidParameter("sorter: n_points too small");
    double need = 6.0 * tau * std::sqrt(static_cast<double>((1 << m) - 1));
    if (delta_t < need) throw InvalidParameter("sorter: delta_t shorter than the widest sorted mode");
    for (int ell = 1; ell <= m; ++ell)
        for (int w = 0; w < (1 << (ell - 1)); ++w)
            if (!theta_schedule.count({ell, w})) throw InvalidParameter("sorter: theta schedule incomplete");
}

double SorterSpec::theta(int ell, int window) const { return theta_schedule.at({ell, window}); }

StageSpec SorterSpec::stage(int ell, int window) const { return {ell, theta(ell, window), tau}; }

DualRailField beamsplit(const DualRailField& f) {
    return {scaled_sum(f.beam_a, inv_sqrt2, f.beam_b, inv_sqrt2), scaled_sum(f.beam_a, -inv_sqrt2, f.beam_b, inv_sqrt2)};
}

DualRailField beamsplit_inverse(const DualRailField& f) {
    return {scaled_sum(f.beam_a, inv_sqrt2, f.beam_b, -inv_sqrt2), scaled_sum(f.beam_a, inv_sqrt2, f.beam_b, inv_sqrt2)};
}

DualRailField interferometer_pass(const DualRailField& f, const StageSpec& stage, const GateOptions& opts) {
    if (stage.ell < 1) throw InvalidParameter("interferometer_pass: ell must be >= 1");
    auto mid = beamsplit(f);
    const double g = gate_angle(stage.ell);
    TransformOptions to;
    to.method = opts.method;
    to.overflow = opts.overflow;
    SampledEnvelope gated = opts.decomposed && std::abs(std::sin(g)) > 1e-12
                                ? apply_frft_chain(mid.beam_a, g, stage.tau, to)
                                : apply_frft(mid.beam_a, g, stage.tau, to);
    const cplx ph = std::polar(1.0, stage.theta);
    for (auto& v : gated.samples) v *= ph;
    mid.beam_a = std::move(gated);
    return beamsplit_inverse(mid);
}

RoutingResult ideal_routing(int n, const SorterSpec& spec) {
    if (n < 0) throw InvalidParameter("routing: negative mode order");
    RoutingResult r;
    r.n = n;
    int w = 0;
    Port p = Port::A;
    for (int ell = 1; ell <= spec.m; ++ell) {
        p = ideal_exit(n, ell, spec.theta(ell, w), p);
        r.ports.push_back(p);
        if (ell < spec.m && p == Port::B) w += 1 << (ell - 1);
    }
    r.designated = {w, p};
    r.slot_power.assign(spec.n_slots(), 0.0);
    r.slot_power[r.designated.index(spec.m)] = 1.0;
    return r;
}

RoutingResult run_cascade(int n, const SorterSpec& spec) {
    spec.validate();
    RoutingResult r = ideal_routing(n, spec);
    auto grid = standard_grid(spec.tau, n, spec.n_points);
    auto input = sample(HGMode{n, spec.tau, 0.0}, grid);
    const double p_in = input.norm2();

    struct Run {
        int window;
        DualRailField field;
    };
    std::vector<Run> runs{{0, DualRailField::in_port(input, Port::A)}};
    std::fill(r.slot_power.begin(), r.slot_power.end(), 0.0);
    for (int ell = 1; ell <= spec.m; ++ell) {
        std::vector<Run> next;
        for (auto& run : runs) {
            // a window holding only roundoff leakage spreads like white noise; not a real overflow
            GateOptions go = spec.gate;
            if (run.field.norm2() <= kNegligible * p_in) go.overflow = OverflowPolicy::Ignore;
            auto out = interferometer_pass(run.field, spec.stage(ell, run.window), go);
            if (ell == spec.m) {
                r.slot_power[Slot{run.window, Port::A}.index(spec.m)] = out.beam_a.norm2() / p_in;
                r.slot_power[Slot{run.window, Port::B}.index(spec.m)] = out.beam_b.norm2() / p_in;
            } else {
                // B output is delayed by 2^{ell-1} delta_t into its own window
                next.push_back({run.window, DualRailField::in_port(out.beam_a, Port::A)});
                next.push_back({run.window + (1 << (ell - 1)), DualRailField::in_port(out.beam_b, Port::B)});
            }
        }
        runs = std::move(next);
    }
    r.leakage = 0.0;
    for (int s = 0; s < spec.n_slots(); ++s)
        if (s != r.designated.index(spec.m)) r.leakage += r.slot_power[s];
    return r;
}

std::vector<std::vector<double>> crosstalk_matrix(const SorterSpec& spec, int n_max) {
    std::vector<std::vector<double>> rows;
    for (int n = 0; n <= n_max; ++n) rows.push_back(run_cascade(n, spec).slot_power);
    return rows;
}

}  // namespace tmsort
