#include "tmsort/analysis.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "tmsort/errors.hpp"
#include "tmsort/fieldgrid.hpp"
#include "tmsort/quadrature.hpp"

namespace tmsort {

namespace {

constexpr double pi = std::numbers::pi;
const double ln2 = std::numbers::ln2;
constexpr cplx I(0.0, 1.0);

double op_gamma(const KernelOperator& op) {
    double g = 0.0;
    switch (op.kind) {
        case OpKind::Z4:
        case OpKind::Z4prime: g = -pi / 2.0; break;
        case OpKind::Z8:
        case OpKind::Z8prime: g = -pi / 4.0; break;
        default: break;
    }
    return op.adjoint ? -g : g;
}

void require_symmetric(const TimeGrid& g, const char* where) {
    if (!g.is_symmetric()) throw IncompatibleGrid(std::string(where) + ": grid must be symmetric about 0");
}

Eigen::MatrixXcd reflect_rows(const Eigen::MatrixXcd& m) { return m.colwise().reverse(); }
Eigen::MatrixXcd reflect_cols(const Eigen::MatrixXcd& m) { return m.rowwise().reverse(); }

// sum conj(f) (Z2^a Z2'^b g) without forming the reflected copy
cplx reflected_dot(const Eigen::MatrixXcd& f, const Eigen::MatrixXcd& g, bool a, bool b) {
    const Eigen::Index n = f.rows(), m = f.cols();
    cplx s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        Eigen::Index jj = b ? m - 1 - j : j;
        for (Eigen::Index i = 0; i < n; ++i) s += std::conj(f(i, j)) * g(a ? n - 1 - i : i, jj);
    }
    return s;
}

struct Z4Products {
    Eigen::MatrixXcd J, KJ, JK, KJK;  // J, Z4 J, Z4' J, Z4 Z4' J
};

Z4Products z4_products(const JointAmplitude& J, double tau) {
    auto K = frft_kernel_matrix(J.t_grid, -pi / 2.0, tau);
    auto Kp = J.tprime_grid.same_as(J.t_grid) ? K : frft_kernel_matrix(J.tprime_grid, -pi / 2.0, tau);
    Z4Products z;
    z.J = J.values;
    z.KJ.noalias() = K * J.values;
    z.JK.noalias() = J.values * Kp.transpose();
    z.KJK.noalias() = z.KJ * Kp.transpose();
    return z;
}

void require_povm_grids(const JointAmplitude& J, const char* where) {
    require_symmetric(J.t_grid, where);
    require_symmetric(J.tprime_grid, where);
    if (J.values.rows() != J.values.cols()) throw IncompatibleGrid(std::string(where) + ": kernel must be square");
}

double windowed_norm2(const Eigen::MatrixXcd& Q, const JointAmplitude& J, const std::optional<double>& w) {
    if (!w) return Q.squaredNorm();
    double s = 0.0;
    for (Eigen::Index j = 0; j < Q.cols(); ++j) {
        if (std::abs(J.tprime_grid.t(static_cast<std::size_t>(j))) > *w) continue;
        for (Eigen::Index i = 0; i < Q.rows(); ++i)
            if (std::abs(J.t_grid.t(static_cast<std::size_t>(i))) <= *w) s += std::norm(Q(i, j));
    }
    return s;
}

// (Z2 + j)(Z2' + k) Y, times `scale`
Eigen::MatrixXcd parity_project(const Eigen::MatrixXcd& Y, int j, int k, double scale) {
    Eigen::MatrixXcd r = reflect_rows(Y);
    Eigen::MatrixXcd out = reflect_cols(r) + double(k) * r + double(j) * reflect_cols(Y) + double(j * k) * Y;
    return scale * out;
}

// u = 0..3 <-> (j, l) = (+,+), (-,-), (+,-), (-,+)
constexpr std::array<std::array<int, 2>, 4> kMod4Signs{{{+1, +1}, {-1, -1}, {+1, -1}, {-1, +1}}};

cplx rho(int j) { return j > 0 ? cplx(1.0) : I; }

}  // namespace

KernelOperator KernelOperator::dagger() const {
    KernelOperator o = *this;
    if (kind == OpKind::Phase) {
        o.phi = -phi;
    } else if (kind != OpKind::Identity && kind != OpKind::Z2 && kind != OpKind::Z2prime) {
        o.adjoint = !adjoint;
    }
    return o;
}

bool KernelOperator::acts_on_tprime() const {
    return kind == OpKind::Z2prime || kind == OpKind::Z4prime || kind == OpKind::Z8prime;
}

Eigen::MatrixXcd frft_kernel_matrix(const TimeGrid& g, double gamma, double tau) {
    const Eigen::Index n = static_cast<Eigen::Index>(g.n_points);
    Eigen::MatrixXcd K(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            K(i, j) = g.dt * frft_kernel(gamma, tau, g.t(static_cast<std::size_t>(i)), g.t(static_cast<std::size_t>(j)));
    return K;
}

JointAmplitude apply_op(const KernelOperator& op, const JointAmplitude& J) {
    JointAmplitude out{J.t_grid, J.tprime_grid, {}};
    switch (op.kind) {
        case OpKind::Identity: out.values = J.values; break;
        case OpKind::Phase: out.values = std::polar(1.0, op.adjoint ? -op.phi : op.phi) * J.values; break;
        case OpKind::Z2:
            require_symmetric(J.t_grid, "apply_op(Z2)");
            out.values = reflect_rows(J.values);
            break;
        case OpKind::Z2prime:
            require_symmetric(J.tprime_grid, "apply_op(Z2')");
            out.values = reflect_cols(J.values);
            break;
        case OpKind::Z4:
        case OpKind::Z8:
            out.values.noalias() = frft_kernel_matrix(J.t_grid, op_gamma(op), op.tau) * J.values;
            break;
        case OpKind::Z4prime:
        case OpKind::Z8prime:
            out.values.noalias() = J.values * frft_kernel_matrix(J.tprime_grid, op_gamma(op), op.tau).transpose();
            break;
    }
    return out;
}

cplx inner(const JointAmplitude& f, const JointAmplitude& g) {
    require_same_grid(f.t_grid, g.t_grid, "inner");
    require_same_grid(f.tprime_grid, g.tprime_grid, "inner");
    return (f.values.conjugate().cwiseProduct(g.values)).sum() * f.t_grid.dt * f.tprime_grid.dt;
}

ProbabilityTable parity_probs(const JointAmplitude& J0, const PovmOptions& opts) {
    require_povm_grids(J0, "parity_probs");
    ProbabilityTable t{{"+1", "-1"}, {"+1", "-1"}, Eigen::MatrixXd(2, 2)};
    const double n2 = J0.values.squaredNorm();
    const int sg[2] = {+1, -1};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            auto C = parity_project(J0.values, sg[a], sg[b], 0.25);
            t.values(a, b) = windowed_norm2(C, J0, opts.window_half) / n2;
        }
    return t;
}

ProbabilityTable mod4_probs(const JointAmplitude& J0, double tau, const PovmOptions& opts) {
    require_povm_grids(J0, "mod4_probs");
    if (!(tau > 0.0)) throw InvalidParameter("mod4_probs: tau must be positive");
    ProbabilityTable t{{"0", "1", "2", "3"}, {"0", "1", "2", "3"}, Eigen::MatrixXd(4, 4)};
    const auto z = z4_products(J0, tau);
    const double n2 = J0.values.squaredNorm();

    if (opts.method == Mod4Method::Sequential || opts.window_half) {
        for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v) {
                auto [j, l] = kMod4Signs[u];
                auto [k, m] = kMod4Signs[v];
                cplx rj = rho(j), rk = rho(k);
                // (rho_j Z4 + l)(rho_k Z4' + m) J
                Eigen::MatrixXcd Y = rj * (rk * z.KJK + double(m) * z.KJ) + double(l) * (rk * z.JK + double(m) * z.J);
                t.values(u, v) = windowed_norm2(parity_project(Y, j, k, 1.0 / 16.0), J0, opts.window_half) / n2;
            }
        return t;
    }

    // Q^dag Q = (1/64)(1 + j Z2)(1 + k Z2')(2 + l(rho_j Z4 + rho_j* Z4^dag))(2 + m(rho_k Z4' + rho_k* Z4'^dag)).
    // Each monomial Z2^a Z2'^b Z4^c Z4'^d (c, d in -1..1) is evaluated as
    // <Z4^{c-} Z4'^{d-} J| Z2^a Z2'^b |Z4^{c+} Z4'^{d+} J>.
    const Eigen::MatrixXcd* W[2][2] = {{&z.J, &z.JK}, {&z.KJ, &z.KJK}};
    cplx term[2][2][3][3];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = -1; c <= 1; ++c)
                for (int d = -1; d <= 1; ++d) {
                    const auto& bra = *W[c < 0][d < 0];
                    const auto& ket = *W[c > 0][d > 0];
                    term[a][b][c + 1][d + 1] = reflected_dot(bra, ket, a, b) / n2;
                }
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) {
            auto [j, l] = kMod4Signs[u];
            auto [k, m] = kMod4Signs[v];
            cplx x[3] = {double(l) * std::conj(rho(j)), 2.0, double(l) * rho(j)};
            cplx y[3] = {double(m) * std::conj(rho(k)), 2.0, double(m) * rho(k)};
            cplx s = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 3; ++c)
                        for (int d = 0; d < 3; ++d)
                            s += double((a ? j : 1) * (b ? k : 1)) * x[c] * y[d] * term[a][b][c][d];
            t.values(u, v) = s.real() / 64.0;
        }
    return t;
}

double p1_analytic(double tau, double tau_o, double tau_p) {
    if (!(tau > 0.0 && tau_o > 0.0 && tau_p > 0.0)) throw InvalidParameter("p1_analytic: positive arguments required");
    double r = tau * tau / (tau_o * tau_p);
    double e = std::erf(1.0 / (std::sqrt(2.0 * ln2) * r));
    return 0.125 * (1.0 - std::sqrt(pi * ln2) * r * e * e);
}

double p2_analytic(double tau, double tau_o, double tau_p) {
    if (!(tau > 0.0 && tau_o > 0.0 && tau_p > 0.0)) throw InvalidParameter("p2_analytic: positive arguments required");
    double e = std::erf(std::sqrt(2.0 * ln2) * tau_o / tau_p);
    double first = std::sqrt(pi / (4.0 * ln2)) * tau_p / tau_o * e * e;
    // (Omega_p tau)^4 = (2 ln2)^2 tau^4 / tau_p^4
    double w4 = std::pow(2.0 * ln2, 2) * std::pow(tau / tau_p, 4);
    double second = std::sqrt(4.0 * ln2 / pi) * tau * tau / (tau_o * tau_p * std::sqrt(1.0 + w4)) *
                    sine_integral(2.0 * tau_o * tau_o / (tau * tau));
    return 0.125 * (first - second);
}

P12 p12_numeric(const JointAmplitude& J0, double tau) {
    require_povm_grids(J0, "p12_numeric");
    auto K = frft_kernel_matrix(J0.t_grid, -pi / 2.0, tau);
    Eigen::MatrixXcd KJ = K * J0.values;
    Eigen::MatrixXcd KJK = KJ * K.transpose();
    const double n2 = J0.values.squaredNorm();
    double z2z4z4 = reflected_dot(J0.values, KJK, true, false).real() / n2;
    double z2 = reflected_dot(J0.values, J0.values, true, false).real() / n2;
    double z4z4 = reflected_dot(J0.values, KJK, false, false).real() / n2;
    return {0.125 * (1.0 - z2z4z4), 0.125 * (z2 - z4z4)};
}

TimeGrid povm_grid(double tau, double tau_o, double tau_p, std::size_t n) {
    if (!(tau > 0.0 && tau_o > 0.0 && tau_p > 0.0)) throw InvalidParameter("povm_grid: positive arguments required");
    double Op = std::sqrt(2.0 * ln2) / tau_p;
    double half = std::max({6.0 * tau, 12.0 * tau_o, 3.7 / Op});
    double h = aligned_step(2.0 * half / static_cast<double>(n - 1), 2.0 * tau_o);
    return TimeGrid::centered(n, h, tau);
}

PtotOptimum optimize_ptot(double tau_o, double tau_p, double x_tol) {
    if (!(tau_o > 0.0 && tau_p > 0.0)) throw InvalidParameter("optimize_ptot: positive arguments required");
    const double s = std::sqrt(tau_o * tau_p);
    auto f = [&](double x) { return 4.0 * p1_analytic(x * s, tau_o, tau_p); };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.3, b = 3.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > x_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    double x = 0.5 * (a + b);
    return {x * s, x, f(x)};
}

EvenOddSplit even_odd_split(double tau_o, double tau_p) {
    auto opt = optimize_ptot(tau_o, tau_p);
    double p1 = p1_analytic(opt.tau_star, tau_o, tau_p);
    double p2 = p2_analytic(opt.tau_star, tau_o, tau_p);
    return {opt.tau_star, p1, p2, 2.0 * (p1 + p2), 2.0 * (p1 - p2)};
}

TraceReport gaussian_frft_trace(double dt0, double gamma) {
    if (!(dt0 > 0.0)) throw InvalidParameter("gaussian_frft_trace: dt0 must be positive");
    const double g = wrap_angle(gamma);
    const double tau = std::sqrt(2.0) * dt0;
    const double fwhm = 2.0 * std::sqrt(2.0 * ln2);
    TraceReport r{};
    r.dOmega0 = 1.0 / (2.0 * dt0);

    double D = 0.0, Df = 0.0;
    const bool identity = g == 0.0;
    if (!identity) {
        auto dec = type1_decomposition(g, tau);
        D = dec.D;
        Df = dec.Df;
    }
    r.dt1 = std::sqrt(dt0 * dt0 + D * D / (4.0 * dt0 * dt0));
    if (identity) {
        r.dOmega2 = r.dOmega0;
    } else {
        double R = 1.0 - std::cos(g), rr = -std::sin(g) / (1.0 - std::cos(g));
        r.dOmega2 = r.dOmega0 * std::sqrt((1.0 - R) * (1.0 - R) + rr * rr * R * R);
    }
    r.D2 = -D;
    r.aperture_T1F = fwhm * r.dt1;

    // grid: 12 sigma of the stretched pulse, step resolving exp(-dt0^2 W^2) to ~1e-21
    const double step = 0.2 * dt0;
    auto half = static_cast<std::size_t>(std::ceil(12.0 * std::max(r.dt1, dt0) / step));
    auto grid = TimeGrid::centered(2 * half + 1, step, tau);
    SampledEnvelope y0(grid);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        double t = grid.t(j);
        y0.samples[j] = std::exp(-t * t / (4.0 * dt0 * dt0));
    }
    r.dOmega0_numeric = spectral_moments(y0).stddev;
    if (identity) {
        r.dt1_numeric = temporal_moments(y0).stddev;
        r.dOmega2_numeric = r.dOmega0_numeric;
        r.D2_numeric = 0.0;
        r.residual_chirp_numeric = 0.0;
        return r;
    }
    auto y1 = disperse(y0, D);
    r.dt1_numeric = temporal_moments(y1).stddev;
    auto y2 = apply_lens(y1, Df);
    r.dOmega2_numeric = spectral_moments(y2).stddev;
    r.D2_numeric = spectral_chirp(y2);
    r.residual_chirp_numeric = spectral_chirp(disperse(y2, D));
    return r;
}

}  // namespace tmsort
