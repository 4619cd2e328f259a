#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tmsort/fieldgrid.hpp"
#include "tmsort/grid.hpp"

namespace tmsort {

enum class Port { A, B };
const char* port_name(Port p);

struct DualRailField {
    SampledEnvelope beam_a;
    SampledEnvelope beam_b;

    static DualRailField in_port(const SampledEnvelope& env, Port p);
    double norm2() const { return beam_a.norm2() + beam_b.norm2(); }
};

struct StageSpec {
    int ell = 1;         // gate Z_{2^ell}
    double theta = 0.0;  // phase after the gate, rad
    double tau = 1.0;
};

struct GateOptions {
    LctMethod method = LctMethod::Chirp;
    bool decomposed = false;  // prop-lens-prop instead of the ideal FrFT
    OverflowPolicy overflow = OverflowPolicy::Throw;
};

struct SorterSpec {
    int m = 2;
    double tau = 1.0;
    double delta_t = 0.0;       // inter-stage delay; only bookkeeping, windows run separately
    std::size_t n_points = 2048;
    GateOptions gate;
    std::map<std::pair<int, int>, double> theta_schedule;  // (ell, window) -> theta

    // m stages with the default phase schedule and delta_t = 8 tau sqrt(2^m).
    static SorterSpec standard(int m, double tau);

    void validate() const;
    double theta(int ell, int window) const;
    StageSpec stage(int ell, int window) const;
    int n_slots() const { return 1 << m; }
    int n_windows() const { return 1 << (m - 1); }
};

// theta_1 = 0; theta_2 = 0, pi/2 for windows 0, 1; for ell >= 3 the window
// carrying residue r (mod 2^{ell-1}) gets -2 pi r / 2^ell.
std::map<std::pair<int, int>, double> default_theta_schedule(int m);

DualRailField beamsplit(const DualRailField& f);
DualRailField beamsplit_inverse(const DualRailField& f);

DualRailField interferometer_pass(const DualRailField& f, const StageSpec& stage, const GateOptions& opts = {});

struct Slot {
    int window = 0;
    Port port = Port::A;
    int index(int m) const { return window + (port == Port::B ? 1 << (m - 1) : 0); }
    friend bool operator==(const Slot&, const Slot&) = default;
};

struct RoutingResult {
    int n = 0;
    std::vector<Port> ports;    // designated exit port of each stage
    Slot designated;            // final (time_slot, port)
    std::vector<double> slot_power;  // power fraction per slot, indexed by Slot::index
    double leakage = 0.0;       // 1 - designated fraction
};

// Designated slot from ideal phase bookkeeping (no field simulation).
RoutingResult ideal_routing(int n, const SorterSpec& spec);

RoutingResult run_cascade(int n, const SorterSpec& spec);

// Row n = slot power fractions of HG_n, n = 0..n_max.
std::vector<std::vector<double>> crosstalk_matrix(const SorterSpec& spec, int n_max);

}  // namespace tmsort
