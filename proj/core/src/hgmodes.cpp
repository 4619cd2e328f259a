#include "tmsort/hgmodes.hpp"

#include <cmath>
#include <numbers>

#include "tmsort/errors.hpp"
#include "tmsort/quadrature.hpp"

namespace tmsort {

namespace {
const double kPiQuarter = std::pow(std::numbers::pi, -0.25);
}

std::vector<double> hermite_functions(int nmax, double x) {
    if (nmax < 0) throw InvalidParameter("hermite_functions: negative order");
    std::vector<double> h(static_cast<std::size_t>(nmax) + 1);
    h[0] = kPiQuarter * std::exp(-0.5 * x * x);
    if (nmax >= 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (int n = 1; n < nmax; ++n)
        h[n + 1] = std::sqrt(2.0 / (n + 1)) * x * h[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * h[n - 1];
    return h;
}

double hermite_function(int n, double x) { return hermite_functions(n, x).back(); }

cplx eval(const HGMode& mode, double t) {
    if (!(mode.tau > 0.0)) throw InvalidParameter("HGMode: tau must be positive");
    return hermite_function(mode.n, (t - mode.t0) / mode.tau) / std::sqrt(mode.tau);
}

SampledEnvelope sample(const HGMode& mode, const TimeGrid& grid) {
    SampledEnvelope env(grid);
    for (std::size_t j = 0; j < grid.n_points; ++j) env.samples[j] = eval(mode, grid.t(j));
    return env;
}

cplx overlap(const SampledEnvelope& f, const SampledEnvelope& g) {
    require_same_grid(f.grid, g.grid, "overlap");
    cplx s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) s += std::conj(f.samples[j]) * g.samples[j];
    return s * f.grid.dt;
}

cplx spectrum(const HGMode& mode, double Omega) {
    if (!(mode.tau > 0.0)) throw InvalidParameter("HGMode: tau must be positive");
    // x = (t - t0)/tau; h_n decays below 1e-300 well inside this range
    double L = 2.0 * std::sqrt(2.0 * mode.n + 1.0) + 30.0;
    double w = Omega * mode.tau;
    auto re = [&](double x) { return hermite_function(mode.n, x) * std::cos(w * x); };
    auto im = [&](double x) { return hermite_function(mode.n, x) * std::sin(w * x); };
    // h_n has parity (-1)^n, so only one of the two parts survives
    cplx v = mode.n % 2 == 0 ? cplx(2.0 * integrate(re, 0.0, L), 0.0) : cplx(0.0, 2.0 * integrate(im, 0.0, L));
    return v * std::sqrt(mode.tau) * std::polar(1.0, Omega * mode.t0);
}

cplx TransformedHG::eval(double t) const {
    double tb = base.tau * beta;
    double x = t / base.tau;
    return phase / std::sqrt(tb) * hermite_function(base.n, t / tb) * std::exp(-0.5 * alpha * x * x);
}

SampledEnvelope TransformedHG::sample(const TimeGrid& grid) const {
    SampledEnvelope env(grid);
    for (std::size_t j = 0; j < grid.n_points; ++j) env.samples[j] = eval(grid.t(j));
    return env;
}

TransformedHG lct_image(const HGMode& mode, const TemporalRayMatrix& T) {
    if (mode.t0 != 0.0) throw UnsupportedInput("lct_image: transform law is for centered modes (t0 = 0)");
    auto g = gouy_params(T, mode.tau);
    return {mode, g.alpha, g.beta, g.gamma, std::polar(1.0, -g.gamma * (mode.n + 0.5))};
}

TimeGrid standard_grid(double tau, int n_max, std::size_t n_points) {
    return TimeGrid::spanning(n_points, 12.0 * tau * std::sqrt(n_max + 1.0), tau);
}

}  // namespace tmsort
