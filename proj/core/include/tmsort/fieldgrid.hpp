#pragma once

#include <vector>

#include "tmsort/grid.hpp"
#include "tmsort/raymatrix.hpp"

namespace tmsort {

enum class LctMethod { Quadrature, Chirp };
enum class OverflowPolicy { Throw, Ignore };

struct TransformOptions {
    LctMethod method = LctMethod::Quadrature;
    OverflowPolicy overflow = OverflowPolicy::Throw;
    double overflow_tol = 1e-6;
    double edge_band = 0.02;  // fraction of the window at each end
};

struct WindowReport {
    double norm_loss;      // |1 - |out|^2 / |in|^2|
    double edge_fraction;  // output energy in the edge bands / |in|^2
};

WindowReport window_report(const SampledEnvelope& in, const SampledEnvelope& out, double edge_band = 0.02);
// Throws WindowOverflow per opts.
void check_window(const SampledEnvelope& in, const SampledEnvelope& out, const TransformOptions& opts,
                  const char* where);

// |b| at or below this takes the delta-kernel path
double degeneracy_threshold(const TimeGrid& g);

// K_T(t, t') with the principal branch of sqrt(2 pi i b); requires b != 0.
cplx lct_kernel(const TemporalRayMatrix& T, double t, double tp);
// Phase-shifted FrFT kernel exp(i gamma/2) K_T(frft(gamma, tau)); gamma wrapped to (-pi, pi].
cplx frft_kernel(double gamma, double tau, double t, double tp);

SampledEnvelope disperse(const SampledEnvelope& env, double D, const TransformOptions& opts = {});
SampledEnvelope apply_lens(const SampledEnvelope& env, double Df);
SampledEnvelope apply_lct(const SampledEnvelope& env, const TemporalRayMatrix& T, const TransformOptions& opts = {});
SampledEnvelope apply_frft(const SampledEnvelope& env, double gamma, double tau, const TransformOptions& opts = {});

// The same FrFT realized as disperse(D) -> lens(Df) -> disperse(D) times exp(i gamma/2).
SampledEnvelope apply_frft_chain(const SampledEnvelope& env, double gamma, double tau,
                                 const TransformOptions& opts = {});

SampledEnvelope time_invert(const SampledEnvelope& env);
SampledEnvelope fourier_z4(const SampledEnvelope& env, double tau, const TransformOptions& opts = {});
SampledEnvelope z8(const SampledEnvelope& env, double tau, const TransformOptions& opts = {});

// Whittaker-Shannon interpolation of the samples at time s.
cplx interpolate(const SampledEnvelope& env, double s);

// Temporal axial phase Phi = -arg(A_out(0)/A_in(0)) of a dispersed Gaussian
// exp(-t^2/2 tau0^2), one entry per D.
std::vector<double> axial_phase_trace(double tau0, const std::vector<double>& D_list);

struct Moments {
    double mean;
    double stddev;
};
// Intensity moments in time and in angular frequency.
Moments temporal_moments(const SampledEnvelope& env);
Moments spectral_moments(const SampledEnvelope& env);
// Least-squares D2 of a spectrum phase D2 Omega^2 / 2 (quadratic spectral phase).
double spectral_chirp(const SampledEnvelope& env);

// Relative L2 distance |f - g| / |g|.
double relative_l2(const SampledEnvelope& f, const SampledEnvelope& g);

}  // namespace tmsort
