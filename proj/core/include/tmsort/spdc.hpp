#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tmsort/grid.hpp"

namespace tmsort {

inline constexpr double kSigmaS = 1.61;

// ppKTP operating point (group-delay offsets, crystal metadata).
struct PpktpPreset {
    static constexpr double tau_o = 2.95;          // ps
    static constexpr double tau_e = -2.95;         // ps
    static constexpr double length_mm = 40.0;
    static constexpr double pump_wavelength_nm = 791.5;
    static constexpr double poling_period_um = 47.6;
};

struct SPDCParams {
    double tau_o = PpktpPreset::tau_o;
    double tau_e = PpktpPreset::tau_e;
    double tau_p = 24.0;   // pump intensity FWHM, ps
    double gain = 1e-3;    // kappa L alpha_0
    double sigma_s = kSigmaS;

    void validate() const;
    double Omega_p() const;
    double T(double tau_mu) const;  // sqrt(2) Omega_p tau_mu / sigma_s
    double T_o() const { return T(tau_o); }
    double T_e() const { return T(tau_e); }
    bool symmetric(double rel_tol = 1e-12) const;

    static SPDCParams symmetric_gvm(double tau_o, double tau_p, double gain = 1e-3, double sigma_s = kSigmaS);
};

double delta_s(double sigma_s = kSigmaS);  // 2 sqrt(ln 2) / sigma_s
double c_m(double sigma_s = kSigmaS);      // 2 sqrt(ln 2) sigma_s

struct JointAmplitude {
    TimeGrid t_grid;
    TimeGrid tprime_grid;
    Eigen::MatrixXcd values;  // (i, j) -> J(t_i, t'_j)

    double norm2() const;
};

cplx jsa(const SPDCParams& p, double Omega, double Omega_prime);

// Rectangle function with the midpoint value 1/2 at |x| = 1/2.
double rect(double x);

// Smallest step >= h0 with half_width / step = k + 1/2, so a rectangle edge
// |t - t'| = half_width falls halfway between sample diagonals.
double aligned_step(double h0, double half_width);

// Default JTA grid: n points over +-max(6 max(tau_1, 2|tau_o|), 3.7/Omega_p) about
// `center`, step aligned to the rectangle edge |tau_o - tau_e|.
TimeGrid default_jta_grid(const SPDCParams& p, std::size_t n = 512, double center = 0.0);

JointAmplitude jta_exact(const SPDCParams& p, const TimeGrid& tg, const TimeGrid& tpg);
JointAmplitude jta_exact(const SPDCParams& p, std::size_t n = 512);
JointAmplitude jta_exact_centered(const SPDCParams& p, const TimeGrid& g);
JointAmplitude jta_exact_centered(const SPDCParams& p, std::size_t n = 512);

Eigen::Matrix2d gauss_M(const SPDCParams& p);
JointAmplitude jta_gauss(const SPDCParams& p, const TimeGrid& tg, const TimeGrid& tpg);
JointAmplitude jta_gauss(const SPDCParams& p, std::size_t n = 512);
JointAmplitude jta_gauss_centered(const SPDCParams& p, const TimeGrid& g);
JointAmplitude jta_gauss_centered(const SPDCParams& p, std::size_t n = 512);

double generation_probability_gauss(const SPDCParams& p);  // P_b
double generation_probability_exact(const SPDCParams& p);  // P_b' (symmetric GVM)

struct SchmidtData {
    double K;
    std::vector<double> lambdas;
    double tau1;
    double tau2;
    double Pb;
};

double schmidt_lambda(double K, int n);
SchmidtData schmidt_analytic(const SPDCParams& p, double tail_tol = 1e-15);

struct SchmidtNumeric {
    Eigen::VectorXd singular_values;  // of values * sqrt(dt dt')
    std::vector<SampledEnvelope> left_modes;
    std::vector<SampledEnvelope> right_modes;

    double schmidt_number() const;  // (sum s^2)^2 / sum s^4
};

SchmidtNumeric schmidt_numeric(const JointAmplitude& J, int n_modes = 16);

struct DesignReport {
    double tau_p;
    double tau;
    double tau_G;
    double Omega_m;
    bool aperture_ok;
    double f_RF_min;  // GHz
};

// f_RF in GHz, tau_o in ps.
DesignReport design_source(double K_target, double f_RF, double tau_o, double sigma_s = kSigmaS);

}  // namespace tmsort
