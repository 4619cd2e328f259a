#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace tmsort::cli {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& dst, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

template <class T>
void read(const json& j, const char* key, std::optional<T>& dst, const std::string& where) {
    if (!j.contains(key)) return;
    T v{};
    read(j, key, v, where);
    dst = v;
}

void positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
}

}  // namespace

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("format must be csv or json, got '" + s + "'");
}

void RunConfig::validate() const {
    positive(source.tau_o, "source.tau_o");
    positive(source.tau_p, "source.tau_p");
    positive(source.gain, "source.gain");
    positive(source.sigma_s, "source.sigma_s");
    if (source.tau_e >= 0.0) throw ConfigError("source.tau_e must be negative (type-II, tau_o > 0 > tau_e)");
    if (sorter.m < 1 || sorter.m > 10) throw ConfigError("sorter.m must be in 1..10");
    if (sorter.tau) positive(*sorter.tau, "sorter.tau");
    if (sorter.delta_t) positive(*sorter.delta_t, "sorter.delta_t");
    if (sorter.n_points < 64) throw ConfigError("sorter.n_points must be at least 64");
    if (grid_n && *grid_n < 16) throw ConfigError("grid.n must be at least 16");
    positive(sweep.x_min, "sweep.x_min");
    if (!(sweep.x_max > sweep.x_min)) throw ConfigError("sweep.x_max must exceed sweep.x_min");
    if (sweep.points < 2 || sweep.parity_points < 2) throw ConfigError("sweep needs at least 2 points");
    positive(sweep.ratio_min, "sweep.ratio_min");
    if (!(sweep.ratio_max > sweep.ratio_min)) throw ConfigError("sweep.ratio_max must exceed sweep.ratio_min");
    if (!(design_K >= 1.0)) throw ConfigError("design.K must be >= 1");
    positive(design_f_RF, "design.f_RF_GHz");
    if (schmidt_K && !(*schmidt_K >= 1.0)) throw ConfigError("schmidt.K must be >= 1");
}

RunConfig parse_config(const json& j, const std::string& experiment) {
    RunConfig c;
    c.experiment = experiment;
    only_keys(j, "config", {"experiment", "source", "sorter", "grid", "sweep", "jta", "design", "schmidt", "output",
                            "format"});
    if (j.contains("experiment")) {
        std::string e;
        read(j, "experiment", e, "config");
        if (e != experiment) throw ConfigError("config is for '" + e + "', not '" + experiment + "'");
    }
    if (j.contains("source")) {
        const auto& s = j["source"];
        only_keys(s, "source", {"tau_o", "tau_e", "tau_p", "gain", "sigma_s"});
        bool has_e = s.contains("tau_e");
        read(s, "tau_o", c.source.tau_o, "source");
        read(s, "tau_e", c.source.tau_e, "source");
        read(s, "tau_p", c.source.tau_p, "source");
        read(s, "gain", c.source.gain, "source");
        read(s, "sigma_s", c.source.sigma_s, "source");
        if (!has_e) c.source.tau_e = -c.source.tau_o;
    }
    if (j.contains("sorter")) {
        const auto& s = j["sorter"];
        only_keys(s, "sorter", {"m", "tau", "delta_t", "n_points", "decomposed", "method"});
        read(s, "m", c.sorter.m, "sorter");
        read(s, "tau", c.sorter.tau, "sorter");
        read(s, "delta_t", c.sorter.delta_t, "sorter");
        read(s, "n_points", c.sorter.n_points, "sorter");
        read(s, "decomposed", c.sorter.decomposed, "sorter");
        std::string method;
        read(s, "method", method, "sorter");
        if (method == "quadrature") c.sorter.method = LctMethod::Quadrature;
        else if (method == "chirp" || method.empty()) c.sorter.method = LctMethod::Chirp;
        else throw ConfigError("sorter.method must be chirp or quadrature");
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        only_keys(g, "grid", {"n"});
        read(g, "n", c.grid_n, "grid");
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        only_keys(s, "sweep", {"x_min", "x_max", "points", "ratio_min", "ratio_max", "parity_points"});
        read(s, "x_min", c.sweep.x_min, "sweep");
        read(s, "x_max", c.sweep.x_max, "sweep");
        read(s, "points", c.sweep.points, "sweep");
        read(s, "ratio_min", c.sweep.ratio_min, "sweep");
        read(s, "ratio_max", c.sweep.ratio_max, "sweep");
        read(s, "parity_points", c.sweep.parity_points, "sweep");
    }
    if (j.contains("jta")) {
        const auto& s = j["jta"];
        only_keys(s, "jta", {"kind", "centered"});
        std::string kind = "exact";
        read(s, "kind", kind, "jta");
        if (kind != "exact" && kind != "gauss") throw ConfigError("jta.kind must be exact or gauss");
        c.jta_exact = kind == "exact";
        read(s, "centered", c.jta_centered, "jta");
    }
    if (j.contains("design")) {
        const auto& s = j["design"];
        only_keys(s, "design", {"K", "f_RF_GHz"});
        read(s, "K", c.design_K, "design");
        read(s, "f_RF_GHz", c.design_f_RF, "design");
    }
    if (j.contains("schmidt")) {
        const auto& s = j["schmidt"];
        only_keys(s, "schmidt", {"K"});
        read(s, "K", c.schmidt_K, "schmidt");
    }
    read(j, "output", c.output, "config");
    if (j.contains("format")) {
        std::string f;
        read(j, "format", f, "config");
        c.format = parse_format(f);
    }
    return c;
}

RunConfig load_config(const std::string& path, const std::string& experiment) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(j, experiment);
}

}  // namespace tmsort::cli
