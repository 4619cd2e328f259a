#pragma once

#include <complex>
#include <vector>

#include "tmsort/grid.hpp"
#include "tmsort/raymatrix.hpp"

namespace tmsort {

// Psi_n(t) = h_n((t - t0)/tau) / sqrt(tau)
struct HGMode {
    int n = 0;
    double tau = 1.0;
    double t0 = 0.0;
};

// Normalized Hermite function h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) exp(-x^2/2).
double hermite_function(int n, double x);
// h_0..h_nmax at x.
std::vector<double> hermite_functions(int nmax, double x);

cplx eval(const HGMode& mode, double t);
SampledEnvelope sample(const HGMode& mode, const TimeGrid& grid);

// sum f* g dt
cplx overlap(const SampledEnvelope& f, const SampledEnvelope& g);

// psi_n(Omega) = int Psi_n(t) exp(i Omega t) dt by adaptive quadrature.
cplx spectrum(const HGMode& mode, double Omega);

struct TransformedHG {
    HGMode base;
    cplx alpha;
    double beta;
    double gamma;
    cplx phase;  // exp(-i gamma (n + 1/2))

    cplx eval(double t) const;
    SampledEnvelope sample(const TimeGrid& grid) const;
};

TransformedHG lct_image(const HGMode& mode, const TemporalRayMatrix& T);

// 4096 points over +-12 tau sqrt(n_max + 1)
TimeGrid standard_grid(double tau, int n_max, std::size_t n_points = 4096);

}  // namespace tmsort
