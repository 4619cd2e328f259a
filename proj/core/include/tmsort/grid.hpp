#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace tmsort {

using cplx = std::complex<double>;

// Uniform time grid t_j = t_start + j dt. tau_ref is the mode scale the grid was
// built for; it sets the b -> 0 threshold of the LCT.
struct TimeGrid {
    double t_start = 0.0;
    double dt = 1.0;
    std::size_t n_points = 2;
    double tau_ref = 1.0;

    TimeGrid() = default;
    TimeGrid(double t_start, double dt, std::size_t n, double tau_ref = 1.0);

    // Symmetric about 0: t_j = (j - (n-1)/2) dt; index reversal is exact time reversal.
    static TimeGrid centered(std::size_t n, double dt, double tau_ref = 1.0);
    // Centered grid covering [-half_span, half_span].
    static TimeGrid spanning(std::size_t n, double half_span, double tau_ref = 1.0);

    double t(std::size_t j) const { return t_start + static_cast<double>(j) * dt; }
    double t_end() const { return t(n_points - 1); }
    double span() const { return dt * static_cast<double>(n_points - 1); }
    std::vector<double> times() const;

    bool is_symmetric(double rel_tol = 1e-12) const;
    bool same_as(const TimeGrid& o, double rel_tol = 1e-12) const;
    // span >= factor * scale
    bool covers(double scale, double factor = 8.0) const { return span() >= factor * scale; }
};

struct SampledEnvelope {
    TimeGrid grid;
    std::vector<cplx> samples;

    SampledEnvelope() = default;
    explicit SampledEnvelope(const TimeGrid& g) : grid(g), samples(g.n_points) {}
    SampledEnvelope(const TimeGrid& g, std::vector<cplx> s);

    std::size_t size() const { return samples.size(); }
    double norm2() const;
};

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* where);

// CSV: one "# grid" metadata line, a header line, then t_ps,re,im rows.
void write_envelope_csv(std::ostream& os, const SampledEnvelope& env);
SampledEnvelope read_envelope_csv(std::istream& is);
void save_envelope_csv(const std::string& path, const SampledEnvelope& env);
SampledEnvelope load_envelope_csv(const std::string& path);

// %.12g formatting shared by every CSV writer
std::string fmt12(double x);

}  // namespace tmsort
