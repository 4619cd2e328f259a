#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tmsort/spdc.hpp"

namespace tmsort {

enum class OpKind { Identity, Z2, Z2prime, Z4, Z4prime, Z8, Z8prime, Phase };

struct KernelOperator {
    OpKind kind = OpKind::Identity;
    double tau = 1.0;
    double phi = 0.0;  // Phase only
    bool adjoint = false;

    KernelOperator dagger() const;
    bool acts_on_tprime() const;
};

// dt * Ktilde(t_i, t_j) for the FrFT of angle gamma on the grid.
Eigen::MatrixXcd frft_kernel_matrix(const TimeGrid& g, double gamma, double tau);

JointAmplitude apply_op(const KernelOperator& op, const JointAmplitude& J);

// sum f* g dt dt'
cplx inner(const JointAmplitude& f, const JointAmplitude& g);

struct ProbabilityTable {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Eigen::MatrixXd values;

    double operator()(Eigen::Index r, Eigen::Index c) const { return values(r, c); }
    double sum() const { return values.sum(); }
    double min() const { return values.minCoeff(); }
};

enum class Mod4Method {
    Expanded,    // <J|Q^dag Q|J> expanded into operator monomials, each applied to J
    Sequential,  // |Q J|^2 on the grid; loses whatever leaves the window
};

struct PovmOptions {
    Mod4Method method = Mod4Method::Expanded;
    // Finite detection windows |t|, |t'| <= window_half instead of the whole
    // grid. Forces the sequential evaluation.
    std::optional<double> window_half;
};

// P_jk / |J|^2, rows j = +1, -1, columns k = +1, -1.
ProbabilityTable parity_probs(const JointAmplitude& J0, const PovmOptions& opts = {});
// P_uv / |J|^2, u, v = 0..3 (u = 0,1,2,3 <-> jl = ++, --, +-, -+).
ProbabilityTable mod4_probs(const JointAmplitude& J0, double tau, const PovmOptions& opts = {});

double p1_analytic(double tau, double tau_o, double tau_p);
double p2_analytic(double tau, double tau_o, double tau_p);

struct P12 {
    double p1;
    double p2;
};
// <J|1 - Z2 Z4 Z4'|J>/8 and <J|Z2 - Z4 Z4'|J>/8 on the grid, normalized by |J|^2.
P12 p12_numeric(const JointAmplitude& J0, double tau);

// 768-point centered grid for J0E with scale tau: half-span
// max(6 tau, 12 tau_o, 3.7/Omega_p), step aligned to the rectangle edge 2 tau_o.
TimeGrid povm_grid(double tau, double tau_o, double tau_p, std::size_t n = 768);

struct PtotOptimum {
    double tau_star;
    double x_star;  // tau_star / sqrt(tau_o tau_p)
    double ptot_star;
};
PtotOptimum optimize_ptot(double tau_o, double tau_p, double x_tol = 1e-4);

struct EvenOddSplit {
    double tau_star;
    double p1;
    double p2;
    double p_even;
    double p_odd;
};
EvenOddSplit even_odd_split(double tau_o, double tau_p);

struct TraceReport {
    // closed forms
    double dt1;
    double dOmega0;
    double dOmega2;
    double D2;
    double aperture_T1F;
    // field simulation
    double dt1_numeric;
    double dOmega0_numeric;
    double dOmega2_numeric;
    double D2_numeric;
    double residual_chirp_numeric;  // after the second dispersive element
};
// Gaussian exp(-t^2/4 dt0^2) through the prop-lens-prop FrFT of angle gamma,
// scale tau = sqrt(2) dt0.
TraceReport gaussian_frft_trace(double dt0, double gamma);

}  // namespace tmsort
