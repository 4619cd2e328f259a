#include "tmsort/fieldgrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tmsort/errors.hpp"
#include "tmsort/fft.hpp"

namespace tmsort {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);

// Reseed interval for the rotation recurrence in the quadrature sum.
constexpr std::size_t kReseed = 32;

cplx principal_sqrt(cplx z) { return std::sqrt(z); }

// out_j = pref * exp(i d t_j^2 / 2b) * sum_k exp(-i t_j t_k / b) y_k dt
std::vector<cplx> lct_quadrature(const TimeGrid& g, const std::vector<cplx>& y, double b) {
    const std::size_t n = g.n_points;
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double tj = g.t(j);
        const cplx rot = std::polar(1.0, -tj * g.dt / b);
        cplx acc = 0.0, z;
        for (std::size_t k = 0; k < n; ++k) {
            if (k % kReseed == 0) z = std::polar(1.0, -tj * g.t(k) / b);
            acc += z * y[k];
            z *= rot;
        }
        out[j] = acc;
    }
    return out;
}

// Same sum by chirp factorization: t_j t_k = t0^2 + t0 h (j+k) + h^2 jk and
// -jk = ((j-k)^2 - j^2 - k^2)/2 turn it into a linear convolution.
std::vector<cplx> lct_chirp(const TimeGrid& g, const std::vector<cplx>& y, double b) {
    const std::size_t n = g.n_points;
    const double h = g.dt, t0 = g.t_start;
    const double w = h * h / b;
    const std::size_t L = fft::good_size(2 * n - 1);

    std::vector<cplx> x(L, 0.0), c(L, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double kk = static_cast<double>(k);
        x[k] = y[k] * std::polar(1.0, -t0 * h * kk / b - 0.5 * w * kk * kk);
    }
    for (std::size_t m = 0; m < n; ++m) {
        double mm = static_cast<double>(m);
        c[m] = std::polar(1.0, 0.5 * w * mm * mm);
        if (m > 0) c[L - m] = c[m];
    }
    fft::transform(x, -1);
    fft::transform(c, -1);
    for (std::size_t i = 0; i < L; ++i) x[i] *= c[i];
    fft::transform(x, +1);

    std::vector<cplx> out(n);
    const double inv = 1.0 / static_cast<double>(L);
    for (std::size_t j = 0; j < n; ++j) {
        double jj = static_cast<double>(j);
        out[j] = x[j] * inv * std::polar(1.0, -t0 * t0 / b - t0 * h * jj / b - 0.5 * w * jj * jj);
    }
    return out;
}

SampledEnvelope reflect(const SampledEnvelope& env) {
    if (!env.grid.is_symmetric()) throw IncompatibleGrid("time inversion needs a grid symmetric about t = 0");
    SampledEnvelope out(env.grid);
    const std::size_t n = env.size();
    for (std::size_t j = 0; j < n; ++j) out.samples[j] = env.samples[n - 1 - j];
    return out;
}

}  // namespace

WindowReport window_report(const SampledEnvelope& in, const SampledEnvelope& out, double edge_band) {
    double nin = in.norm2();
    if (nin == 0.0) return {0.0, 0.0};
    double nout = out.norm2();
    const std::size_t n = out.size();
    auto band = std::max<std::size_t>(1, static_cast<std::size_t>(edge_band * static_cast<double>(n)));
    double edge = 0.0;
    for (std::size_t j = 0; j < band; ++j) edge += std::norm(out.samples[j]) + std::norm(out.samples[n - 1 - j]);
    edge *= out.grid.dt;
    return {std::abs(1.0 - nout / nin), edge / nin};
}

void check_window(const SampledEnvelope& in, const SampledEnvelope& out, const TransformOptions& opts,
                  const char* where) {
    if (opts.overflow == OverflowPolicy::Ignore) return;
    auto r = window_report(in, out, opts.edge_band);
    if (r.norm_loss > opts.overflow_tol || r.edge_fraction > opts.overflow_tol) {
        std::ostringstream os;
        os << where << ": field leaves the time window (norm change " << r.norm_loss << ", edge energy "
           << r.edge_fraction << ")";
        throw WindowOverflow(os.str(), r.norm_loss, r.edge_fraction);
    }
}

double degeneracy_threshold(const TimeGrid& g) { return 1e-9 * g.tau_ref * g.tau_ref; }

cplx lct_kernel(const TemporalRayMatrix& T, double t, double tp) {
    const double b = T.b();
    if (b == 0.0) throw UnsupportedDegenerateCase("lct_kernel: b = 0 has no integral kernel");
    double ph = (T.d() * t * t - 2.0 * t * tp + T.a() * tp * tp) / (2.0 * b);
    return std::polar(1.0, ph) / principal_sqrt(2.0 * pi * I * b);
}

cplx frft_kernel(double gamma, double tau, double t, double tp) {
    double g = wrap_angle(gamma);
    return std::polar(1.0, 0.5 * g) * lct_kernel(frft_matrix(g, tau), t, tp);
}

SampledEnvelope disperse(const SampledEnvelope& env, double D, const TransformOptions& opts) {
    if (D == 0.0) return env;
    const auto& g = env.grid;
    std::vector<cplx> a = env.samples;
    fft::transform(a, +1);  // a(Omega) up to the t_start phase, which cancels below
    for (std::size_t k = 0; k < a.size(); ++k) {
        double w = fft::bin_frequency(k, g.n_points, g.dt);
        a[k] *= std::polar(1.0 / static_cast<double>(g.n_points), 0.5 * D * w * w);
    }
    fft::transform(a, -1);
    SampledEnvelope out(g, std::move(a));
    check_window(env, out, opts, "disperse");
    return out;
}

SampledEnvelope apply_lens(const SampledEnvelope& env, double Df) {
    if (Df == 0.0 || !std::isfinite(Df)) throw InvalidParameter("apply_lens: Df must be finite and nonzero");
    SampledEnvelope out(env.grid);
    for (std::size_t j = 0; j < env.size(); ++j) {
        double t = env.grid.t(j);
        out.samples[j] = env.samples[j] * std::polar(1.0, t * t / (2.0 * Df));
    }
    return out;
}

cplx interpolate(const SampledEnvelope& env, double s) {
    const auto& g = env.grid;
    double u = (s - g.t_start) / g.dt;
    double ur = std::round(u);
    if (std::abs(u - ur) < 1e-12) {
        if (ur < 0.0 || ur > static_cast<double>(g.n_points - 1)) return 0.0;
        return env.samples[static_cast<std::size_t>(ur)];
    }
    // sin(pi (u - k)) = (-1)^k sin(pi u)
    cplx acc = 0.0;
    for (std::size_t k = 0; k < env.size(); ++k) {
        double term = 1.0 / (u - static_cast<double>(k));
        acc += (k % 2 == 0 ? term : -term) * env.samples[k];
    }
    return acc * std::sin(pi * u) / pi;
}

SampledEnvelope apply_lct(const SampledEnvelope& env, const TemporalRayMatrix& T, const TransformOptions& opts) {
    const auto& g = env.grid;
    const double a = T.a(), b = T.b(), c = T.c(), d = T.d();
    SampledEnvelope out(g);

    if (std::abs(b) <= degeneracy_threshold(g)) {
        // b -> 0: K = sqrt(a) exp(i c t^2 / 2a) delta(t - a t')
        if (a == 1.0 && c == 0.0) return env;
        if (std::abs(a + 1.0) <= 1e-12) {
            out = g.is_symmetric() ? reflect(env) : out;
            if (!g.is_symmetric())
                for (std::size_t j = 0; j < g.n_points; ++j) out.samples[j] = interpolate(env, -g.t(j));
            for (std::size_t j = 0; j < g.n_points; ++j) {
                double t = g.t(j);
                out.samples[j] *= I * std::polar(1.0, c * t * t / (2.0 * a));
            }
        } else if (a > 0.0) {
            double pref = 1.0 / std::sqrt(a);
            for (std::size_t j = 0; j < g.n_points; ++j) {
                double t = g.t(j);
                cplx v = std::abs(a - 1.0) <= 1e-15 ? env.samples[j] : interpolate(env, t / a);
                out.samples[j] = pref * std::polar(1.0, c * t * t / (2.0 * a)) * v;
            }
        } else {
            throw UnsupportedDegenerateCase("apply_lct: b = 0 with a <= 0 and a != -1 is not supported");
        }
        check_window(env, out, opts, "apply_lct");
        return out;
    }

    std::vector<cplx> y(g.n_points);
    for (std::size_t k = 0; k < g.n_points; ++k) {
        double t = g.t(k);
        y[k] = env.samples[k] * std::polar(1.0, a * t * t / (2.0 * b));
    }
    auto s = opts.method == LctMethod::Chirp ? lct_chirp(g, y, b) : lct_quadrature(g, y, b);
    const cplx pref = g.dt / principal_sqrt(2.0 * pi * I * b);
    for (std::size_t j = 0; j < g.n_points; ++j) {
        double t = g.t(j);
        out.samples[j] = pref * std::polar(1.0, d * t * t / (2.0 * b)) * s[j];
    }
    check_window(env, out, opts, "apply_lct");
    return out;
}

SampledEnvelope apply_frft(const SampledEnvelope& env, double gamma, double tau, const TransformOptions& opts) {
    if (!(tau > 0.0)) throw InvalidParameter("apply_frft: tau must be positive");
    const double g = wrap_angle(gamma);
    const double b = tau * tau * std::sin(g);
    if (std::abs(b) <= degeneracy_threshold(env.grid)) {
        // gamma = 0 or pi: identity or time inversion, both with unit phase
        // (HG eigenvalue exp(-i gamma n) at gamma = 0, pi)
        if (std::cos(g) > 0.0) return env;
        SampledEnvelope out = env.grid.is_symmetric() ? reflect(env) : SampledEnvelope(env.grid);
        if (!env.grid.is_symmetric())
            for (std::size_t j = 0; j < env.size(); ++j) out.samples[j] = interpolate(env, -env.grid.t(j));
        check_window(env, out, opts, "apply_frft");
        return out;
    }
    SampledEnvelope out = apply_lct(env, frft_matrix(g, tau), opts);
    const cplx ph = std::polar(1.0, 0.5 * g);
    for (auto& v : out.samples) v *= ph;
    return out;
}

SampledEnvelope apply_frft_chain(const SampledEnvelope& env, double gamma, double tau, const TransformOptions& opts) {
    const double g = wrap_angle(gamma);
    auto dec = type1_decomposition(g, tau);
    auto out = disperse(apply_lens(disperse(env, dec.D, opts), dec.Df), dec.D, opts);
    const cplx ph = std::polar(1.0, 0.5 * g);
    for (auto& v : out.samples) v *= ph;
    return out;
}

SampledEnvelope time_invert(const SampledEnvelope& env) { return apply_frft(env, -pi, 1.0); }

SampledEnvelope fourier_z4(const SampledEnvelope& env, double tau, const TransformOptions& opts) {
    return apply_frft(env, -pi / 2.0, tau, opts);
}

SampledEnvelope z8(const SampledEnvelope& env, double tau, const TransformOptions& opts) {
    return apply_frft(env, -pi / 4.0, tau, opts);
}

std::vector<double> axial_phase_trace(double tau0, const std::vector<double>& D_list) {
    if (!(tau0 > 0.0)) throw InvalidParameter("axial_phase_trace: tau0 must be positive");
    std::vector<double> out;
    out.reserve(D_list.size());
    for (double D : D_list) {
        double width = tau0 * std::sqrt(1.0 + D * D / std::pow(tau0, 4));
        // odd count so t = 0 is a sample; dt resolves the input spectrum exp(-W^2 tau0^2 / 2)
        double dt = 0.25 * tau0;
        auto half = static_cast<std::size_t>(std::ceil(14.0 * width / dt));
        auto grid = TimeGrid::centered(2 * half + 1, dt, tau0);
        SampledEnvelope in(grid);
        for (std::size_t j = 0; j < grid.n_points; ++j) {
            double t = grid.t(j);
            in.samples[j] = std::exp(-t * t / (2.0 * tau0 * tau0));
        }
        auto o = disperse(in, D);
        out.push_back(-std::arg(o.samples[half] / in.samples[half]));
    }
    return out;
}

Moments temporal_moments(const SampledEnvelope& env) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < env.size(); ++j) {
        double p = std::norm(env.samples[j]), t = env.grid.t(j);
        s0 += p;
        s1 += p * t;
        s2 += p * t * t;
    }
    double m = s1 / s0;
    return {m, std::sqrt(std::max(0.0, s2 / s0 - m * m))};
}

Moments spectral_moments(const SampledEnvelope& env) {
    auto a = fft::spectrum(env);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double p = std::norm(a[k]), w = fft::bin_frequency(k, a.size(), env.grid.dt);
        s0 += p;
        s1 += p * w;
        s2 += p * w * w;
    }
    double m = s1 / s0;
    return {m, std::sqrt(std::max(0.0, s2 / s0 - m * m))};
}

double spectral_chirp(const SampledEnvelope& env) {
    auto a = fft::spectrum(env);
    SampledEnvelope ta(env.grid);
    for (std::size_t j = 0; j < env.size(); ++j) ta.samples[j] = I * env.grid.t(j) * env.samples[j];
    auto da = fft::spectrum(ta);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double w = fft::bin_frequency(k, a.size(), env.grid.dt);
        num += w * (std::conj(a[k]) * da[k]).imag();
        den += w * w * std::norm(a[k]);
    }
    return num / den;
}

double relative_l2(const SampledEnvelope& f, const SampledEnvelope& g) {
    require_same_grid(f.grid, g.grid, "relative_l2");
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        num += std::norm(f.samples[j] - g.samples[j]);
        den += std::norm(g.samples[j]);
    }
    return std::sqrt(num / den);
}

}  // namespace tmsort
