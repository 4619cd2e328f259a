#include "tmsort/spdc.hpp"

#include <cmath>
#include <numbers>

#include "tmsort/errors.hpp"

namespace tmsort {

namespace {

constexpr double pi = std::numbers::pi;
const double ln2 = std::numbers::ln2;

double tau_schmidt(double Ta, double Tb, double Omega_p) {
    return std::sqrt(std::abs(Ta - Tb)) / (std::sqrt(2.0) * Omega_p) * std::pow((1.0 + Ta * Ta) / (1.0 + Tb * Tb), 0.25);
}

template <class F>
JointAmplitude fill(const TimeGrid& tg, const TimeGrid& tpg, F&& f) {
    JointAmplitude J{tg, tpg, Eigen::MatrixXcd(tg.n_points, tpg.n_points)};
    for (Eigen::Index j = 0; j < J.values.cols(); ++j) {
        double tp = tpg.t(static_cast<std::size_t>(j));
        for (Eigen::Index i = 0; i < J.values.rows(); ++i) J.values(i, j) = f(tg.t(static_cast<std::size_t>(i)), tp);
    }
    return J;
}

void require_symmetric(const SPDCParams& p, const char* where) {
    if (!(p.tau_o > 0.0) || !p.symmetric())
        throw InvalidParameter(std::string(where) + ": needs symmetric GVM, tau_o = -tau_e > 0");
}

}  // namespace

double delta_s(double sigma_s) { return 2.0 * std::sqrt(ln2) / sigma_s; }
double c_m(double sigma_s) { return 2.0 * std::sqrt(ln2) * sigma_s; }

void SPDCParams::validate() const {
    if (!(tau_p > 0.0)) throw InvalidParameter("SPDC: tau_p must be positive");
    if (!(gain > 0.0)) throw InvalidParameter("SPDC: gain must be positive");
    if (!(sigma_s > 0.0)) throw InvalidParameter("SPDC: sigma_s must be positive");
    if (!std::isfinite(tau_o) || !std::isfinite(tau_e)) throw InvalidParameter("SPDC: tau_o, tau_e must be finite");
    if (gain * Omega_p() >= 0.1) throw OutOfRegime("SPDC: gain * Omega_p >= 0.1, outside the low-gain regime");
}

double SPDCParams::Omega_p() const { return std::sqrt(2.0 * ln2) / tau_p; }

double SPDCParams::T(double tau_mu) const { return std::sqrt(2.0) * Omega_p() * tau_mu / sigma_s; }

bool SPDCParams::symmetric(double rel_tol) const {
    return std::abs(tau_o + tau_e) <= rel_tol * std::max(std::abs(tau_o), std::abs(tau_e));
}

SPDCParams SPDCParams::symmetric_gvm(double tau_o, double tau_p, double gain, double sigma_s) {
    return {tau_o, -tau_o, tau_p, gain, sigma_s};
}

double JointAmplitude::norm2() const { return values.squaredNorm() * t_grid.dt * tprime_grid.dt; }

cplx jsa(const SPDCParams& p, double W, double Wp) {
    double Op = p.Omega_p();
    double x = p.tau_o * W + p.tau_e * Wp;
    double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    return 2.0 * pi * p.gain * std::exp(-(W + Wp) * (W + Wp) / (4.0 * Op * Op)) * std::polar(1.0, x) * sinc;
}

double rect(double x) {
    double a = std::abs(x);
    if (std::abs(a - 0.5) <= 1e-12) return 0.5;
    return a < 0.5 ? 1.0 : 0.0;
}

double aligned_step(double h0, double half_width) {
    if (!(h0 > 0.0) || !(half_width > 0.0)) throw InvalidParameter("aligned_step: positive arguments required");
    double k = std::floor(half_width / h0 - 0.5);
    if (k < 0.0) k = 0.0;
    return half_width / (k + 0.5);
}

TimeGrid default_jta_grid(const SPDCParams& p, std::size_t n, double center) {
    p.validate();
    double Op = p.Omega_p();
    double tmax = std::max(std::abs(p.tau_o), std::abs(p.tau_e));
    double tau1 = std::max(tau_schmidt(p.T_o(), p.T_e(), Op), tau_schmidt(p.T_e(), p.T_o(), Op));
    double half = std::max(6.0 * std::max(tau1, 2.0 * tmax), 3.7 / Op);
    double h = 2.0 * half / static_cast<double>(n - 1);
    double tm = std::abs(p.tau_o - p.tau_e);
    if (tm > 0.0) h = aligned_step(h, tm);
    auto g = TimeGrid::centered(n, h, tau1);
    g.t_start += center;
    return g;
}

JointAmplitude jta_exact(const SPDCParams& p, const TimeGrid& tg, const TimeGrid& tpg) {
    p.validate();
    const double tm = p.tau_o - p.tau_e;
    if (tm == 0.0) throw SingularConfiguration("jta_exact: tau_o = tau_e");
    const double Op = p.Omega_p();
    const double JN = std::sqrt(pi) * p.gain * Op / std::abs(tm);
    return fill(tg, tpg, [&](double t, double tp) -> cplx {
        double r = rect((t - tp) / (2.0 * tm) - 0.5);
        if (r == 0.0) return 0.0;
        double u = (t * p.tau_e - tp * p.tau_o) * Op / tm;
        return JN * r * std::exp(-u * u);
    });
}

JointAmplitude jta_exact(const SPDCParams& p, std::size_t n) {
    return jta_exact(p, default_jta_grid(p, n, p.tau_o), default_jta_grid(p, n, p.tau_e));
}

JointAmplitude jta_exact_centered(const SPDCParams& p, const TimeGrid& g) {
    p.validate();
    require_symmetric(p, "jta_exact_centered");
    const double Op = p.Omega_p();
    const double JN = std::sqrt(pi) * p.gain * Op / (2.0 * p.tau_o);
    return fill(g, g, [&](double t, double tp) -> cplx {
        double r = rect((t - tp) / (4.0 * p.tau_o));
        if (r == 0.0) return 0.0;
        double s = t + tp;
        return JN * r * std::exp(-s * s * Op * Op / 4.0);
    });
}

JointAmplitude jta_exact_centered(const SPDCParams& p, std::size_t n) {
    return jta_exact_centered(p, default_jta_grid(p, n));
}

Eigen::Matrix2d gauss_M(const SPDCParams& p) {
    p.validate();
    double To = p.T_o(), Te = p.T_e();
    if (To == Te) throw SingularConfiguration("gauss_M: T_o = T_e");
    double Op = p.Omega_p();
    double f = Op * Op / ((To - Te) * (To - Te));
    Eigen::Matrix2d M;
    M << f * (1.0 + Te * Te), -f * (1.0 + To * Te), -f * (1.0 + To * Te), f * (1.0 + To * To);
    return M;
}

JointAmplitude jta_gauss(const SPDCParams& p, const TimeGrid& tg, const TimeGrid& tpg) {
    auto M = gauss_M(p);
    const double Op = p.Omega_p();
    const double J1 = 2.0 * p.gain * Op * Op / std::abs(p.T_o() - p.T_e());
    return fill(tg, tpg, [&](double t, double tp) -> cplx {
        double x = t - p.tau_o, y = tp - p.tau_e;
        return J1 * std::exp(-M(0, 0) * x * x - M(1, 1) * y * y - 2.0 * M(0, 1) * x * y);
    });
}

JointAmplitude jta_gauss(const SPDCParams& p, std::size_t n) {
    return jta_gauss(p, default_jta_grid(p, n, p.tau_o), default_jta_grid(p, n, p.tau_e));
}

JointAmplitude jta_gauss_centered(const SPDCParams& p, const TimeGrid& g) {
    require_symmetric(p, "jta_gauss_centered");
    p.validate();
    const double T = p.T_o(), Op = p.Omega_p();
    const double M11 = Op * Op * (T * T + 1.0) / (4.0 * T * T);
    const double M12 = Op * Op * (T * T - 1.0) / (4.0 * T * T);
    const double pref = std::sqrt(generation_probability_gauss(p) * Op * Op / (pi * T));
    return fill(g, g, [&](double t, double tp) -> cplx {
        return pref * std::exp(-M11 * (t * t + tp * tp) - 2.0 * M12 * t * tp);
    });
}

JointAmplitude jta_gauss_centered(const SPDCParams& p, std::size_t n) {
    return jta_gauss_centered(p, default_jta_grid(p, n));
}

double generation_probability_gauss(const SPDCParams& p) {
    p.validate();
    double dT = std::abs(p.T_o() - p.T_e());
    if (dT == 0.0) throw SingularConfiguration("P_b: T_o = T_e");
    double g = p.gain * p.Omega_p();
    return 2.0 * pi * g * g / dT;
}

double generation_probability_exact(const SPDCParams& p) {
    p.validate();
    require_symmetric(p, "P_b'");
    return 2.0 * std::pow(pi / 2.0, 1.5) * p.gain * p.gain * p.Omega_p() / p.tau_o;
}

double schmidt_lambda(double K, int n) {
    if (!(K >= 1.0)) throw InvalidParameter("schmidt_lambda: K must be >= 1");
    return 2.0 / (K + 1.0) * std::pow((K - 1.0) / (K + 1.0), n);
}

SchmidtData schmidt_analytic(const SPDCParams& p, double tail_tol) {
    p.validate();
    double To = p.T_o(), Te = p.T_e();
    if (To == Te) throw SingularConfiguration("schmidt_analytic: T_o = T_e");
    // K = 1 sits exactly on 1 + T_o T_e = 0, so the boundary is admitted up to roundoff
    if (!(1.0 + To * Te > -1e-12)) throw OutOfRegime("schmidt_analytic: requires 1 + T_o T_e > 0");
    double Op = p.Omega_p();
    SchmidtData s;
    s.K = std::sqrt((1.0 + To * To) * (1.0 + Te * Te)) / std::abs(To - Te);
    double q = (s.K - 1.0) / (s.K + 1.0);
    double tail = 1.0;
    for (int n = 0; n < 100000; ++n) {
        s.lambdas.push_back(schmidt_lambda(s.K, n));
        tail *= q;
        if (tail < tail_tol) break;
    }
    s.tau1 = tau_schmidt(To, Te, Op);
    s.tau2 = tau_schmidt(Te, To, Op);
    s.Pb = generation_probability_gauss(p);
    return s;
}

double SchmidtNumeric::schmidt_number() const {
    double s2 = 0.0, s4 = 0.0;
    for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
        double v = singular_values[i] * singular_values[i];
        s2 += v;
        s4 += v * v;
    }
    return s2 * s2 / s4;
}

SchmidtNumeric schmidt_numeric(const JointAmplitude& J, int n_modes) {
    if (J.values.rows() != J.values.cols()) throw InvalidParameter("schmidt_numeric: kernel must be square");
    const double dt = J.t_grid.dt, dtp = J.tprime_grid.dt;
    Eigen::MatrixXcd A = J.values * std::sqrt(dt * dtp);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtNumeric out;
    out.singular_values = svd.singularValues();
    const auto& U = svd.matrixU();
    const auto& V = svd.matrixV();
    int nm = std::min<int>(n_modes, static_cast<int>(U.cols()));
    for (int k = 0; k < nm; ++k) {
        // A = U S V^H, so the t' mode is conj(V); fix the phase so the largest sample is real positive
        Eigen::Index imax;
        U.col(k).cwiseAbs().maxCoeff(&imax);
        cplx ph = std::conj(U(imax, k)) / std::abs(U(imax, k));
        SampledEnvelope l(J.t_grid), r(J.tprime_grid);
        for (std::size_t i = 0; i < l.size(); ++i) l.samples[i] = ph * U(static_cast<Eigen::Index>(i), k) / std::sqrt(dt);
        for (std::size_t i = 0; i < r.size(); ++i)
            r.samples[i] = std::conj(ph * V(static_cast<Eigen::Index>(i), k)) / std::sqrt(dtp);
        out.left_modes.push_back(std::move(l));
        out.right_modes.push_back(std::move(r));
    }
    return out;
}

DesignReport design_source(double K_target, double f_RF, double tau_o, double sigma_s) {
    if (!(f_RF > 0.0)) throw InvalidParameter("design_source: f_RF must be positive");
    if (!(tau_o > 0.0)) throw InvalidParameter("design_source: tau_o must be positive");
    if (!(sigma_s > 0.0)) throw InvalidParameter("design_source: sigma_s must be positive");
    if (!(K_target >= 1.0)) throw InfeasibleDesign("design_source: K = (T + 1/T)/2 has no real root below 1");
    DesignReport r;
    r.Omega_m = 4.0 * pi * f_RF * 1e-3;  // GHz -> rad/ps
    r.tau_G = 4.0 * std::sqrt(ln2) / r.Omega_m;
    r.tau_p = delta_s(sigma_s) * tau_o * (K_target + std::sqrt(K_target * K_target - 1.0));
    r.tau = std::sqrt(tau_o * r.tau_p / (sigma_s * std::sqrt(ln2)));
    r.aperture_ok = r.tau > std::sqrt(K_target) * r.tau_G;
    r.f_RF_min = c_m(sigma_s) / (4.0 * pi * tau_o) * 1e3;
    return r;
}

}  // namespace tmsort
