#pragma once

#include "json.hpp"
#include <optional>
#include <string>

#include "tmsort/errors.hpp"
#include "tmsort/fieldgrid.hpp"
#include "tmsort/spdc.hpp"

namespace tmsort::cli {

struct ConfigError : Error {
    using Error::Error;
};

enum class Format { Csv, Json };

struct SorterConfig {
    int m = 2;
    std::optional<double> tau;      // default sqrt(tau_o tau_p) * 0.93 for sweeps, 1 for sort-demo
    std::optional<double> delta_t;
    std::size_t n_points = 2048;
    bool decomposed = false;
    LctMethod method = LctMethod::Chirp;
};

struct SweepConfig {
    double x_min = 0.4;
    double x_max = 2.0;
    int points = 101;
    double ratio_min = 1.0;   // tau_p / tau_o, parity sweep
    double ratio_max = 20.0;
    int parity_points = 20;
};

struct RunConfig {
    std::string experiment;
    SPDCParams source;
    SorterConfig sorter;
    SweepConfig sweep;
    std::optional<std::size_t> grid_n;
    bool jta_exact = true;
    bool jta_centered = false;
    double design_K = 4.0;
    double design_f_RF = 75.0;  // GHz
    std::optional<double> schmidt_K;
    std::string output;  // empty: stdout
    std::optional<Format> format;  // per-command default when unset

    void validate() const;
};

// Throws ConfigError on malformed JSON, unknown keys or wrong types.
RunConfig parse_config(const nlohmann::json& j, const std::string& experiment);
RunConfig load_config(const std::string& path, const std::string& experiment);

Format parse_format(const std::string& s);

}  // namespace tmsort::cli
