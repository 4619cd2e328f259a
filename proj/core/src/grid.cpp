#include "tmsort/grid.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tmsort/errors.hpp"

namespace tmsort {

TimeGrid::TimeGrid(double t0, double step, std::size_t n, double tref)
    : t_start(t0), dt(step), n_points(n), tau_ref(tref) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidParameter("TimeGrid: dt must be positive");
    if (n < 2) throw InvalidParameter("TimeGrid: need at least 2 points");
    if (!(tref > 0.0)) throw InvalidParameter("TimeGrid: tau_ref must be positive");
}

TimeGrid TimeGrid::centered(std::size_t n, double step, double tref) {
    return TimeGrid(-0.5 * static_cast<double>(n - 1) * step, step, n, tref);
}

TimeGrid TimeGrid::spanning(std::size_t n, double half_span, double tref) {
    if (n < 2) throw InvalidParameter("TimeGrid: need at least 2 points");
    return centered(n, 2.0 * half_span / static_cast<double>(n - 1), tref);
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(n_points);
    for (std::size_t j = 0; j < n_points; ++j) out[j] = t(j);
    return out;
}

bool TimeGrid::is_symmetric(double rel_tol) const {
    return std::abs(t_start + t_end()) <= rel_tol * span();
}

bool TimeGrid::same_as(const TimeGrid& o, double rel_tol) const {
    return n_points == o.n_points && std::abs(dt - o.dt) <= rel_tol * dt &&
           std::abs(t_start - o.t_start) <= rel_tol * span();
}

SampledEnvelope::SampledEnvelope(const TimeGrid& g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
    if (samples.size() != grid.n_points) throw InvalidParameter("SampledEnvelope: sample count != grid size");
}

double SampledEnvelope::norm2() const {
    double s = 0.0;
    for (auto& v : samples) s += std::norm(v);
    return s * grid.dt;
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* where) {
    if (!a.same_as(b)) throw IncompatibleGrid(std::string(where) + ": grids differ");
}

std::string fmt12(double x) {
    if (x == 0.0) return "0";  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_envelope_csv(std::ostream& os, const SampledEnvelope& env) {
    const auto& g = env.grid;
    char buf[160];
    std::snprintf(buf, sizeof buf, "# grid t_start=%.17g dt=%.17g n_points=%zu tau_ref=%.17g\n", g.t_start, g.dt,
                  g.n_points, g.tau_ref);
    os << buf << "t_ps,re,im\n";
    for (std::size_t j = 0; j < env.size(); ++j)
        os << fmt12(g.t(j)) << ',' << fmt12(env.samples[j].real()) << ',' << fmt12(env.samples[j].imag()) << '\n';
}

namespace {

double parse_double(std::string_view s) {
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw InvalidParameter("envelope csv: bad number '" + std::string(s) + "'");
    return v;
}

double meta_value(const std::string& line, const std::string& key) {
    auto p = line.find(key + "=");
    if (p == std::string::npos) throw InvalidParameter("envelope csv: missing " + key);
    p += key.size() + 1;
    auto e = line.find(' ', p);
    return parse_double(std::string_view(line).substr(p, e == std::string::npos ? std::string::npos : e - p));
}

}  // namespace

SampledEnvelope read_envelope_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# grid", 0) != 0)
        throw InvalidParameter("envelope csv: missing grid metadata line");
    TimeGrid g(meta_value(line, "t_start"), meta_value(line, "dt"),
               static_cast<std::size_t>(meta_value(line, "n_points")), meta_value(line, "tau_ref"));
    if (!std::getline(is, line) || line != "t_ps,re,im") throw InvalidParameter("envelope csv: bad header");
    std::vector<cplx> s;
    s.reserve(g.n_points);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) throw InvalidParameter("envelope csv: bad row");
        std::string_view v(line);
        s.emplace_back(parse_double(v.substr(c1 + 1, c2 - c1 - 1)), parse_double(v.substr(c2 + 1)));
    }
    return SampledEnvelope(g, std::move(s));
}

void save_envelope_csv(const std::string& path, const SampledEnvelope& env) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_envelope_csv(f, env);
}

SampledEnvelope load_envelope_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_envelope_csv(f);
}

}  // namespace tmsort
