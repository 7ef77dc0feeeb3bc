#pragma once

// Scenario configuration and dataset builders behind the command-line tool.
// All rates are ratios to gamma and all times are gamma*t.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "blockade/correlations.hpp"
#include "blockade/entanglement.hpp"
#include "blockade/evolution.hpp"
#include "blockade/observables.hpp"
#include "blockade/steady.hpp"

namespace blockade {

enum class OutputFormat { Csv, Json };

struct ScenarioConfig {
    double omega = 5.0;         ///< Omega / gamma
    double delta = 30.0;        ///< delta / gamma
    double gamma_s_frac = 1.0;  ///< gamma_s / gamma
    std::string initial_state = "gg";
    double t_end = 10.0;
    int samples = 1001;
    DetectorGeometry geometry{};
    double tau_max = 10.0;
    int tau_points = 200;
    // sweep axis: omega range, one family per integer delta/gamma
    double omega_min = 0.05;
    double omega_max = 20.0;
    double omega_step = 0.05;
    int delta_min = 0;
    int delta_max = 10;
    int jobs = 1;
    std::string out;
    OutputFormat format = OutputFormat::Csv;

    void validate() const {
        auto fail = [](const std::string& msg) { throw InputError("config: " + msg); };
        if (!std::isfinite(omega) || !std::isfinite(delta)) fail("omega and delta must be finite");
        if (!(gamma_s_frac >= 0.0 && gamma_s_frac <= 1.0)) fail("gamma-s-frac must lie in [0, 1]");
        if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("t-end must be positive");
        if (samples < 2) fail("samples must be at least 2");
        if (!(tau_max > 0.0) || !std::isfinite(tau_max)) fail("tau-max must be positive");
        if (tau_points < 2) fail("tau-points must be at least 2");
        if (jobs < 1) fail("jobs must be at least 1");
        label_index(initial_state, Basis::Dicke);
    }

    void validate_sweep() const {
        validate();
        if (!(omega_step > 0.0)) throw InputError("config: omega-step must be positive");
        if (!(omega_min > 0.0)) throw InputError("config: omega-min must be positive (the ratio is undefined at 0)");
        if (!(omega_max >= omega_min)) throw InputError("config: empty omega range");
        if (delta_max < delta_min) throw InputError("config: empty delta family range");
    }

    [[nodiscard]] SystemParams params() const { return SystemParams::from_ratios(omega, delta, gamma_s_frac); }
};

/// Figure presets. fig1x and fig2x share the same transient runs; fig5x adds phi1 = phi2 = 0.
inline void apply_preset(ScenarioConfig& cfg, const std::string& name) {
    static const std::map<std::string, std::pair<double, double>> cases{
        {"a", {5.0, 5.0}}, {"b", {5.0, 30.0}}, {"c", {15.0, 30.0}}};
    if (name == "monitor") {
        cfg.omega = 5.0;
        cfg.delta = 30.0;
        cfg.gamma_s_frac = 1.0;
        cfg.geometry = {std::numbers::pi / 2.0, std::numbers::pi / 2.0};
        return;
    }
    if (name.size() == 5 && name.starts_with("fig") && cases.contains(name.substr(4, 1))) {
        const char fig = name[3];
        const auto [omega, delta] = cases.at(name.substr(4, 1));
        if (fig == '1' || fig == '2') {
            cfg.omega = omega;
            cfg.delta = delta;
            cfg.t_end = 10.0;
            cfg.samples = 1001;
            cfg.initial_state = "gg";
            return;
        }
        if (fig == '5') {
            cfg.omega = omega;
            cfg.delta = delta;
            cfg.gamma_s_frac = 1.0;
            cfg.geometry = {0.0, 0.0};
            cfg.tau_max = 10.0;
            cfg.tau_points = 200;
            return;
        }
    }
    throw InputError("unknown preset '" + name + "' (expected fig1a..fig1c, fig2a..fig2c, fig5a..fig5c or monitor)");
}

/// Column-oriented dataset with '#'-prefixed key=value metadata.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end()) {
            throw InputError("no column named " + name);
        }
        return static_cast<std::size_t>(it - columns.begin());
    }
};

/// Shortest round-trip-safe form: 17 significant digits.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string to_csv(const Table& table) {
    std::ostringstream os;
    for (const auto& [key, value] : table.metadata) {
        os << "# " << key << '=' << value << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_double(row[i]);
        }
        os << '\n';
    }
    return os.str();
}

inline nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

inline nlohmann::json to_json(const Table& table) {
    nlohmann::json j;
    j["metadata"] = nlohmann::json::object();
    for (const auto& [key, value] : table.metadata) {
        j["metadata"][key] = value;
    }
    j["columns"] = nlohmann::json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        nlohmann::json col = nlohmann::json::array();
        for (const auto& row : table.rows) {
            col.push_back(number_or_null(row[c]));
        }
        j["columns"][table.columns[c]] = std::move(col);
    }
    return j;
}

inline std::string render(const Table& table, OutputFormat format) {
    return format == OutputFormat::Csv ? to_csv(table) : to_json(table).dump(2) + "\n";
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> param_metadata(const ScenarioConfig& cfg) {
    return {{"omega_over_gamma", format_double(cfg.omega)},
            {"delta_over_gamma", format_double(cfg.delta)},
            {"gamma_s_over_gamma", format_double(cfg.gamma_s_frac)}};
}

/// Runs fn(i) for i in [0, n) on `jobs` workers; fn must write only to slot i.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

inline nlohmann::json matrix_json(const Matrix4c& m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::json rr = nlohmann::json::array();
        nlohmann::json ii = nlohmann::json::array();
        for (int k = 0; k < 4; ++k) {
            rr.push_back(m(i, k).real());
            ii.push_back(m(i, k).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"basis", "Dicke"}, {"order", {"ee", "s", "a", "gg"}}, {"re", re}, {"im", im}};
}

}  // namespace detail

/// Transient dataset: t_gamma, P_e, P_e_squared, P_ee, C, pop_ee, pop_s, pop_a, pop_gg.
inline Table evolve_table(const ScenarioConfig& cfg) {
    cfg.validate();
    const SystemParams params = cfg.params();
    const std::vector<double> times = uniform_grid(cfg.t_end, cfg.samples);
    const Trajectory traj = evolve(params, pure_state(cfg.initial_state, Basis::Dicke), cfg.t_end, times);

    Table t;
    t.metadata = detail::param_metadata(cfg);
    t.metadata.emplace_back("initial_state", cfg.initial_state);
    t.metadata.emplace_back("max_trace_drift", format_double(traj.max_trace_drift));
    t.columns = {"t_gamma", "P_e", "P_e_squared", "P_ee", "C", "pop_ee", "pop_s", "pop_a", "pop_gg"};
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix& rho = traj.states[i];
        const double pe = excitation_probability(rho);
        const auto pops = dicke_populations(rho);
        t.rows.push_back({traj.times[i], pe, pe * pe, double_excitation_probability(rho), concurrence(rho),
                          pops[0], pops[1], pops[2], pops[3]});
    }
    return t;
}

/// Steady-state report: both steady states, their distance, ratio, concurrence and window edge.
inline nlohmann::json steady_report(const ScenarioConfig& cfg) {
    cfg.validate();
    const SystemParams params = cfg.params();
    const DensityMatrix analytic = steady_state_analytic(params);
    const DensityMatrix numeric = steady_state_numeric(params);
    const auto pops = dicke_populations(analytic);

    nlohmann::json j;
    j["params"] = {{"omega_over_gamma", cfg.omega},
                   {"delta_over_gamma", cfg.delta},
                   {"gamma_s_over_gamma", cfg.gamma_s_frac}};
    j["steady_state_analytic"] = detail::matrix_json(analytic.entries());
    j["steady_state_numeric"] = detail::matrix_json(numeric.entries());
    j["frobenius_distance"] = (analytic.entries() - numeric.entries()).norm();
    j["P_e"] = excitation_probability(analytic);
    j["P_ee"] = double_excitation_probability(analytic);
    j["populations"] = {{"ee", pops[0]}, {"s", pops[1]}, {"a", pops[2]}, {"gg", pops[3]}};
    if (params.omega() != 0.0) {
        j["blockade_ratio"] = blockade_ratio_analytic(params);
        j["blockade_ratio_numeric"] = blockade_ratio(numeric);
    } else {
        j["blockade_ratio"] = nullptr;
        j["blockade_ratio_numeric"] = nullptr;
    }
    j["concurrence"] = steady_concurrence_analytic(params);
    j["concurrence_numeric"] = concurrence(numeric);
    j["omega_max_over_gamma"] = entanglement_window(params.delta(), params.gamma());
    return j;
}

/// Flattens a JSON report into a two-column key,value table-like CSV.
inline std::string steady_report_csv(const nlohmann::json& report) {
    std::ostringstream os;
    os << "key,value\n";
    const nlohmann::json flat = report.flatten();
    for (const auto& [key, value] : flat.items()) {
        os << key << ',';
        if (value.is_number()) {
            os << format_double(value.get<double>());
        } else if (value.is_null()) {
            os << "nan";
        } else if (value.is_string()) {
            os << value.get<std::string>();
        } else {
            os << value.dump();
        }
        os << '\n';
    }
    return os.str();
}

enum class SweepQuantity { Ratio, Concurrence, Both };

/// Omega sweep with one column family per integer delta/gamma in [delta_min, delta_max].
/// cross_d<k> is 1 on the first row whose Omega reaches the separability edge of family k.
inline Table sweep_table(const ScenarioConfig& cfg, SweepQuantity quantity = SweepQuantity::Both) {
    cfg.validate_sweep();
    const auto n = static_cast<std::size_t>(std::floor((cfg.omega_max - cfg.omega_min) / cfg.omega_step + 1e-9)) + 1;
    std::vector<double> omegas(n);
    for (std::size_t i = 0; i < n; ++i) {
        omegas[i] = cfg.omega_min + static_cast<double>(i) * cfg.omega_step;
    }
    const bool want_ratio = quantity != SweepQuantity::Concurrence;
    const bool want_conc = quantity != SweepQuantity::Ratio;

    Table t;
    t.metadata = {{"gamma_s_over_gamma", format_double(cfg.gamma_s_frac)},
                  {"omega_step", format_double(cfg.omega_step)}};
    t.columns.emplace_back("omega_over_gamma");
    std::vector<int> deltas;
    for (int d = cfg.delta_min; d <= cfg.delta_max; ++d) {
        deltas.push_back(d);
        const std::string suffix = "_d" + std::to_string(d);
        if (want_ratio) t.columns.push_back("ratio" + suffix);
        if (want_conc) t.columns.push_back("C" + suffix);
        t.columns.push_back("cross" + suffix);
        t.metadata.emplace_back("omega_max" + suffix,
                                format_double(entanglement_window(static_cast<double>(d), 1.0)));
    }

    // index of the first Omega at or beyond each family's window edge
    std::vector<std::optional<std::size_t>> crossing(deltas.size());
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        const double edge = entanglement_window(static_cast<double>(deltas[k]), 1.0);
        if (edge <= 0.0) continue;
        const auto it = std::lower_bound(omegas.begin(), omegas.end(), edge);
        if (it != omegas.end()) crossing[k] = static_cast<std::size_t>(it - omegas.begin());
    }

    t.rows.resize(n);
    detail::parallel_for(n, cfg.jobs, [&](std::size_t i) {
        std::vector<double> row{omegas[i]};
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            const SystemParams p = SystemParams::from_ratios(omegas[i], deltas[k], cfg.gamma_s_frac);
            if (want_ratio) row.push_back(blockade_ratio_analytic(p));
            if (want_conc) row.push_back(steady_concurrence_analytic(p));
            row.push_back(crossing[k] == i ? 1.0 : 0.0);
        }
        t.rows[i] = std::move(row);
    });
    return t;
}

/// g2(tau) dataset with the closed-form zero-delay value in the metadata.
inline Table g2_table(const ScenarioConfig& cfg) {
    cfg.validate();
    const SystemParams params = cfg.params();
    const std::vector<double> taus = default_tau_grid(cfg.tau_max, cfg.tau_points);
    const std::vector<double> values = g2(params, cfg.geometry, taus);

    Table t;
    t.metadata = detail::param_metadata(cfg);
    t.metadata.emplace_back("phi1", format_double(cfg.geometry.phi1));
    t.metadata.emplace_back("phi2", format_double(cfg.geometry.phi2));
    t.metadata.emplace_back("g2_zero_analytic", format_double(g2_zero_analytic(params, cfg.geometry)));
    t.columns = {"tau_gamma", "g2"};
    for (std::size_t i = 0; i < taus.size(); ++i) {
        t.rows.push_back({taus[i], values[i]});
    }
    return t;
}

/// Named datasets (file stem -> table) reproducing one figure.
inline std::vector<std::pair<std::string, Table>> figure_datasets(const std::string& figure, ScenarioConfig base = {}) {
    std::vector<std::pair<std::string, Table>> out;
    if (figure == "fig1" || figure == "fig2" || figure == "fig5") {
        for (const char* c : {"a", "b", "c"}) {
            ScenarioConfig cfg = base;
            const std::string name = figure + c;
            apply_preset(cfg, name);
            out.emplace_back(name, figure == "fig5" ? g2_table(cfg) : evolve_table(cfg));
        }
        return out;
    }
    if (figure == "fig3" || figure == "fig4") {
        ScenarioConfig cfg = base;
        cfg.omega_min = 0.05;
        cfg.omega_max = 20.0;
        cfg.omega_step = 0.05;
        cfg.delta_min = figure == "fig3" ? 0 : 1;
        cfg.delta_max = 10;
        out.emplace_back(figure, sweep_table(cfg, figure == "fig3" ? SweepQuantity::Ratio : SweepQuantity::Concurrence));
        return out;
    }
    throw InputError("unknown figure '" + figure + "' (expected fig1..fig5)");
}

}  // namespace blockade
