#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tmsort/grid.hpp"

namespace tmsort::fft {

// Unnormalized in-place DFT: X_k = sum_j x_j exp(sign * 2 pi i j k / N).
void transform(std::vector<cplx>& x, int sign);

// Smallest 2^a 3^b 5^c 7^d >= n.
std::size_t good_size(std::size_t n);

// Angular frequency of DFT bin k in standard order (0, +, ..., -).
double bin_frequency(std::size_t k, std::size_t n, double dt);
std::vector<double> bin_frequencies(std::size_t n, double dt);

// a(Omega_k) = sum_j A_j exp(i Omega_k t_j) dt, the discrete version of
// a(Omega) = int A(t) exp(i Omega t) dt. Standard bin order.
std::vector<cplx> spectrum(const SampledEnvelope& env);
// Inverse of spectrum() on the same grid.
std::vector<cplx> inverse_spectrum(std::vector<cplx> a, const TimeGrid& g);

}  // namespace tmsort::fft
