#include "tmsort/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace tmsort::fft {

namespace {

// FFTW planning is not thread-safe, execution is. Plans are kept for the
// lifetime of the process.
std::mutex plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> plans;

fftw_plan get_plan(std::size_t n, int sign) {
    std::lock_guard lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::vector<cplx> tmp(n);
    auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, plan);
    return plan;
}

}  // namespace

void transform(std::vector<cplx>& x, int sign) {
    if (x.size() < 2) return;
    auto* p = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(get_plan(x.size(), sign), p, p);
}

std::size_t good_size(std::size_t n) {
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
        std::size_t r = m;
        for (std::size_t f : {2, 3, 5, 7})
            while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

double bin_frequency(std::size_t k, std::size_t n, double dt) {
    auto kk = static_cast<double>(k);
    if (2 * k >= n) kk -= static_cast<double>(n);
    return 2.0 * std::numbers::pi * kk / (static_cast<double>(n) * dt);
}

std::vector<double> bin_frequencies(std::size_t n, double dt) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = bin_frequency(k, n, dt);
    return w;
}

std::vector<cplx> spectrum(const SampledEnvelope& env) {
    const auto& g = env.grid;
    std::vector<cplx> a = env.samples;
    transform(a, +1);
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] *= g.dt * std::polar(1.0, bin_frequency(k, g.n_points, g.dt) * g.t_start);
    return a;
}

std::vector<cplx> inverse_spectrum(std::vector<cplx> a, const TimeGrid& g) {
    double scale = 1.0 / (g.dt * static_cast<double>(g.n_points));
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] *= scale * std::polar(1.0, -bin_frequency(k, g.n_points, g.dt) * g.t_start);
    transform(a, -1);
    return a;
}

}  // namespace tmsort::fft
