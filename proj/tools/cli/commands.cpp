#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tmsort/analysis.hpp"
#include "tmsort/sorter.hpp"
#include "tmsort/spdc.hpp"
#include "validation/acceptance.hpp"

namespace tmsort::cli {

using nlohmann::json;

namespace {

// 12 significant digits, '.' decimal regardless of locale
std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

template <class... T>
void csv_row(std::ostream& o, const T&... v) {
    bool first = true;
    auto put = [&](const auto& x) {
        if (!first) o << ',';
        first = false;
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(x)>>) o << fmt12(x);
        else o << x;
    };
    (put(v), ...);
    o << '\n';
}

Format format_or(const RunConfig& c, Format dflt) { return c.format.value_or(dflt); }

json params_json(const SPDCParams& p) {
    return {{"tau_o", p.tau_o}, {"tau_e", p.tau_e}, {"tau_p", p.tau_p}, {"gain", p.gain}, {"sigma_s", p.sigma_s}};
}

json grid_json(const TimeGrid& g) { return {{"t_start", g.t_start}, {"dt", g.dt}, {"n", g.n_points}}; }

void require_symmetric(const SPDCParams& p, const char* what) {
    if (!p.symmetric()) throw ConfigError(std::string(what) + " needs symmetric group delays (tau_e = -tau_o)");
}

}  // namespace

int cmd_sort_demo(const RunConfig& c, std::ostream& out) {
    auto spec = SorterSpec::standard(c.sorter.m, c.sorter.tau.value_or(1.0));
    if (c.sorter.delta_t) spec.delta_t = *c.sorter.delta_t;
    spec.n_points = c.grid_n.value_or(c.sorter.n_points);
    spec.gate.method = c.sorter.method;
    spec.gate.decomposed = c.sorter.decomposed;
    spec.validate();

    std::vector<RoutingResult> rs;
    double worst = 0.0;
    for (int n = 0; n < spec.n_slots(); ++n) {
        rs.push_back(run_cascade(n, spec));
        worst = std::max(worst, rs.back().leakage);
    }

    if (format_or(c, Format::Json) == Format::Csv) {
        out << "n,window,port,slot,leakage";
        for (int k = 0; k < spec.n_slots(); ++k) out << ",p" << k;
        out << '\n';
        for (const auto& r : rs) {
            out << r.n << ',' << r.designated.window << ',' << port_name(r.designated.port) << ','
                << r.designated.index(spec.m) << ',' << fmt12(r.leakage);
            for (double p : r.slot_power) out << ',' << fmt12(p);
            out << '\n';
        }
        return kOk;
    }
    json modes = json::array();
    for (const auto& r : rs) {
        json ports = json::array();
        for (auto p : r.ports) ports.push_back(port_name(p));
        modes.push_back({{"n", r.n},
                         {"ports", ports},
                         {"designated",
                          {{"window", r.designated.window},
                           {"port", port_name(r.designated.port)},
                           {"slot", r.designated.index(spec.m)}}},
                         {"slot_power", r.slot_power},
                         {"leakage", r.leakage}});
    }
    json doc{{"experiment", "sort-demo"},
             {"m", spec.m},
             {"tau", spec.tau},
             {"delta_t", spec.delta_t},
             {"n_points", spec.n_points},
             {"decomposed", spec.gate.decomposed},
             {"modes", modes},
             {"max_leakage", worst}};
    out << doc.dump(2) << '\n';
    return kOk;
}

int cmd_sweep_ptot(const RunConfig& c, std::ostream& out) {
    const auto& p = c.source;
    require_symmetric(p, "sweep-ptot");
    const double s = std::sqrt(p.tau_o * p.tau_p);
    const std::size_t n = c.grid_n.value_or(768);
    const auto& w = c.sweep;
    const bool as_json = format_or(c, Format::Csv) == Format::Json;
    json rows = json::array();
    if (!as_json) csv_row(out, "tau_ratio", "p_tot_analytic", "p_tot_numeric");
    for (int i = 0; i < w.points; ++i) {
        double x = w.x_min + (w.x_max - w.x_min) * i / (w.points - 1);
        double tau = x * s;
        double pa = 4.0 * p1_analytic(tau, p.tau_o, p.tau_p);
        auto J = jta_exact_centered(p, povm_grid(tau, p.tau_o, p.tau_p, n));
        double pn = 4.0 * p12_numeric(J, tau).p1;
        if (as_json) rows.push_back({{"tau_ratio", x}, {"p_tot_analytic", pa}, {"p_tot_numeric", pn}});
        else csv_row(out, x, pa, pn);
    }
    if (as_json) out << json{{"experiment", "sweep-ptot"}, {"source", params_json(p)}, {"grid_n", n}, {"rows", rows}}.dump(2) << '\n';
    return kOk;
}

int cmd_sweep_parity(const RunConfig& c, std::ostream& out) {
    const auto& p = c.source;
    require_symmetric(p, "sweep-parity");
    const auto& w = c.sweep;
    const bool as_json = format_or(c, Format::Csv) == Format::Json;
    json rows = json::array();
    if (!as_json) csv_row(out, "tau_p", "tau_star", "p_even", "p_odd");
    for (int i = 0; i < w.parity_points; ++i) {
        double r = w.ratio_min + (w.ratio_max - w.ratio_min) * i / (w.parity_points - 1);
        double tp = r * p.tau_o;
        auto e = even_odd_split(p.tau_o, tp);
        if (as_json) rows.push_back({{"tau_p", tp}, {"tau_star", e.tau_star}, {"p_even", e.p_even}, {"p_odd", e.p_odd}});
        else csv_row(out, tp, e.tau_star, e.p_even, e.p_odd);
    }
    if (as_json) out << json{{"experiment", "sweep-parity"}, {"source", params_json(p)}, {"rows", rows}}.dump(2) << '\n';
    return kOk;
}

int cmd_jta_map(const RunConfig& c, std::ostream& out, std::ostream* sidecar) {
    if (c.format == Format::Json) throw ConfigError("jta-map writes CSV with a JSON sidecar; --format json is not supported");
    const auto& p = c.source;
    const std::size_t n = c.grid_n.value_or(256);
    if (c.jta_centered) require_symmetric(p, "jta-map centered");
    JointAmplitude J = c.jta_exact ? (c.jta_centered ? jta_exact_centered(p, n) : jta_exact(p, n))
                                   : (c.jta_centered ? jta_gauss_centered(p, n) : jta_gauss(p, n));
    csv_row(out, "t", "t_prime", "re", "im");
    for (std::size_t i = 0; i < J.t_grid.n_points; ++i)
        for (std::size_t k = 0; k < J.tprime_grid.n_points; ++k) {
            auto v = J.values(i, k);
            csv_row(out, J.t_grid.t(i), J.tprime_grid.t(k), v.real(), v.imag());
        }
    if (sidecar) {
        // support of the exact kernel in t - t'
        const double tm = p.tau_o - p.tau_e;
        json support = c.jta_centered ? json{{"t_minus_tprime_min", -tm}, {"t_minus_tprime_max", tm}}
                                      : json{{"t_minus_tprime_min", 0.0}, {"t_minus_tprime_max", 2.0 * tm}};
        json doc{{"experiment", "jta-map"},
                 {"kind", c.jta_exact ? "exact" : "gauss"},
                 {"centered", c.jta_centered},
                 {"source", params_json(p)},
                 {"t_grid", grid_json(J.t_grid)},
                 {"tprime_grid", grid_json(J.tprime_grid)},
                 {"rect_support", support},
                 {"norm2", J.norm2()}};
        *sidecar << doc.dump(2) << '\n';
    }
    return kOk;
}

int cmd_schmidt(const RunConfig& c, std::ostream& out) {
    SPDCParams p = c.source;
    if (c.schmidt_K) {
        require_symmetric(p, "schmidt with a K target");
        double K = *c.schmidt_K;
        p.tau_p = delta_s(p.sigma_s) * p.tau_o * (K + std::sqrt(K * K - 1.0));
    }
    auto sa = schmidt_analytic(p);
    auto sn = schmidt_numeric(jta_gauss(p, c.grid_n.value_or(512)), 1);
    if (format_or(c, Format::Json) == Format::Csv) {
        csv_row(out, "n", "lambda");
        for (std::size_t k = 0; k < sa.lambdas.size(); ++k) csv_row(out, k, sa.lambdas[k]);
        return kOk;
    }
    json doc{{"experiment", "schmidt"},
             {"source", params_json(p)},
             {"K", sa.K},
             {"K_numeric", sn.schmidt_number()},
             {"lambdas", sa.lambdas},
             {"tau1", sa.tau1},
             {"tau2", sa.tau2},
             {"P_b", sa.Pb}};
    out << doc.dump(2) << '\n';
    return kOk;
}

int cmd_design_source(const RunConfig& c, std::ostream& out) {
    auto r = design_source(c.design_K, c.design_f_RF, c.source.tau_o, c.source.sigma_s);
    if (format_or(c, Format::Json) == Format::Csv) {
        csv_row(out, "quantity", "value");
        csv_row(out, "K", c.design_K);
        csv_row(out, "f_RF_GHz", c.design_f_RF);
        csv_row(out, "tau_p", r.tau_p);
        csv_row(out, "tau", r.tau);
        csv_row(out, "tau_G", r.tau_G);
        csv_row(out, "Omega_m", r.Omega_m);
        csv_row(out, "aperture_ok", r.aperture_ok ? 1 : 0);
        csv_row(out, "f_RF_min_GHz", r.f_RF_min);
        return kOk;
    }
    json doc{{"experiment", "design-source"},
             {"K", c.design_K},
             {"f_RF_GHz", c.design_f_RF},
             {"tau_o", c.source.tau_o},
             {"tau_p", r.tau_p},
             {"tau", r.tau},
             {"tau_G", r.tau_G},
             {"Omega_m", r.Omega_m},
             {"aperture_ok", r.aperture_ok},
             {"f_RF_min_GHz", r.f_RF_min}};
    out << doc.dump(2) << '\n';
    return kOk;
}

int cmd_validate(const RunConfig&, std::ostream& out, const std::vector<int>& only) {
    auto rs = validation::run_acceptance(out, only);
    int passed = 0;
    for (const auto& r : rs) passed += r.pass;
    out << passed << "/" << rs.size() << " criteria passed\n";
    return validation::all_passed(rs) ? kOk : kAcceptance;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Temporal-mode sorter simulations", "tmsort"};
    app.require_subcommand(1);
    std::string config_path, out_path, format;
    std::size_t grid_n = 0;
    long seed = 0;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--grid-n", grid_n, "grid points per axis");
    app.add_option("--seed", seed, "reserved; all commands are deterministic");

    const char* names[] = {"sort-demo", "sweep-ptot", "sweep-parity", "jta-map", "schmidt", "design-source", "validate"};
    const char* help[] = {"route HG_0..HG_{2^m-1} through the cascade",
                          "modulo-4 error probability vs tau",
                          "even/odd error split vs pump duration",
                          "joint temporal amplitude map",
                          "Schmidt spectrum of the Gaussian source",
                          "pulse-gating source design",
                          "run the acceptance suite"};
    std::vector<int> only;
    for (int i = 0; i < 7; ++i) {
        auto* sc = app.add_subcommand(names[i], help[i]);
        sc->fallthrough();
        if (std::string(names[i]) == "validate") sc->add_option("--only", only, "criterion ids");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        int rc = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return rc == 0 ? kOk : kConfig;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        RunConfig c = config_path.empty() ? parse_config(json::object(), cmd) : load_config(config_path, cmd);
        if (!out_path.empty()) c.output = out_path;
        if (!format.empty()) c.format = parse_format(format);
        if (grid_n) c.grid_n = grid_n;
        c.validate();

        std::ostringstream body, side;
        int rc = kOk;
        if (cmd == "sort-demo") rc = cmd_sort_demo(c, body);
        else if (cmd == "sweep-ptot") rc = cmd_sweep_ptot(c, body);
        else if (cmd == "sweep-parity") rc = cmd_sweep_parity(c, body);
        else if (cmd == "jta-map") rc = cmd_jta_map(c, body, c.output.empty() ? nullptr : &side);
        else if (cmd == "schmidt") rc = cmd_schmidt(c, body);
        else if (cmd == "design-source") rc = cmd_design_source(c, body);
        else rc = cmd_validate(c, c.output.empty() ? out : body, only);

        if (c.output.empty()) {
            out << body.str();
        } else {
            std::ofstream f(c.output, std::ios::binary);
            if (!f) throw ConfigError("cannot write " + c.output);
            f << body.str();
            if (cmd == "jta-map") {
                std::ofstream s(c.output + ".json", std::ios::binary);
                if (!s) throw ConfigError("cannot write " + c.output + ".json");
                s << side.str();
            }
        }
        return rc;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const InvalidParameter& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kConfig;
    } catch (const OutOfRegime& e) {
        err << "out of regime: " << e.what() << '\n';
        return kConfig;
    } catch (const InfeasibleDesign& e) {
        err << "infeasible design: " << e.what() << '\n';
        return kConfig;
    } catch (const WindowOverflow& e) {
        err << "window overflow: " << e.what() << '\n';
        return kNumeric;
    } catch (const Error& e) {
        err << "numeric diagnostic: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kOther;
    }
}

}  // namespace tmsort::cli
