// Command-line front end: transient runs, steady-state reports, Omega sweeps,
// g2 datasets and figure reproduction.
//
// Exit codes: 0 success, 1 I/O failure, 2 configuration error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "blockade/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using blockade::OutputFormat;
using blockade::ScenarioConfig;

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Overrides {
    std::optional<std::string> preset;
    std::optional<double> omega, delta, gamma_s_frac, t_end, phi1, phi2, tau_max;
    std::optional<double> omega_min, omega_max, omega_step;
    std::optional<int> samples, tau_points, delta_min, delta_max, jobs;
    std::optional<std::string> initial_state, out, format;
};

template <typename T>
void assign(T& target, const std::optional<T>& value) {
    if (value) target = *value;
}

ScenarioConfig build_config(const Overrides& o) {
    ScenarioConfig cfg;
    if (o.preset) blockade::apply_preset(cfg, *o.preset);
    assign(cfg.omega, o.omega);
    assign(cfg.delta, o.delta);
    assign(cfg.gamma_s_frac, o.gamma_s_frac);
    assign(cfg.t_end, o.t_end);
    assign(cfg.samples, o.samples);
    assign(cfg.initial_state, o.initial_state);
    assign(cfg.tau_max, o.tau_max);
    assign(cfg.tau_points, o.tau_points);
    assign(cfg.omega_min, o.omega_min);
    assign(cfg.omega_max, o.omega_max);
    assign(cfg.omega_step, o.omega_step);
    assign(cfg.delta_min, o.delta_min);
    assign(cfg.delta_max, o.delta_max);
    assign(cfg.jobs, o.jobs);
    assign(cfg.out, o.out);
    if (o.phi1 || o.phi2) {
        cfg.geometry = blockade::DetectorGeometry(o.phi1.value_or(cfg.geometry.phi1), o.phi2.value_or(cfg.geometry.phi2));
    }
    if (o.format) cfg.format = *o.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    return cfg;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << content;
    if (!os) throw IoError("failed writing '" + path + "'");
}

void write_figures(const std::string& figure, const ScenarioConfig& cfg) {
    const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
    const std::string ext = cfg.format == OutputFormat::Json ? ".json" : ".csv";
    for (const auto& [name, table] : blockade::figure_datasets(figure, cfg)) {
        const fs::path path = dir / (name + ext);
        write_output(path.string(), blockade::render(table, cfg.format));
        std::cerr << "wrote " << path.string() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven two-atom dipole-blockade simulator"};
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
    app.require_subcommand(1);

    Overrides o;
    app.add_option("--preset", o.preset, "fig1a..fig1c, fig2a..fig2c, fig5a..fig5c or monitor");
    app.add_option("--omega", o.omega, "Omega/gamma (half Rabi frequency)");
    app.add_option("--delta", o.delta, "delta/gamma (blockade shift)");
    app.add_option("--gamma-s-frac", o.gamma_s_frac, "gamma_s/gamma in [0, 1]");
    app.add_option("--initial-state", o.initial_state, "Dicke label: ee, s, a or gg");
    app.add_option("--t-end", o.t_end, "final time gamma*t");
    app.add_option("--samples", o.samples, "number of time samples");
    app.add_option("--phi1", o.phi1, "phase of detector 1 (radians)");
    app.add_option("--phi2", o.phi2, "phase of detector 2 (radians)");
    app.add_option("--tau-max", o.tau_max, "largest delay gamma*tau");
    app.add_option("--tau-points", o.tau_points, "number of delays");
    app.add_option("--omega-min", o.omega_min, "sweep start Omega/gamma");
    app.add_option("--omega-max", o.omega_max, "sweep end Omega/gamma");
    app.add_option("--omega-step", o.omega_step, "sweep step in Omega/gamma");
    app.add_option("--delta-min", o.delta_min, "first integer delta/gamma family");
    app.add_option("--delta-max", o.delta_max, "last integer delta/gamma family");
    app.add_option("--out", o.out, "output file (directory for 'figures'); stdout if omitted");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs", o.jobs, "worker threads for sweeps");
    app.fallthrough();

    auto* evolve = app.add_subcommand("evolve", "transient populations and concurrence");
    auto* steady = app.add_subcommand("steady", "steady-state report");
    auto* sweep = app.add_subcommand("sweep", "Omega sweep of the blockade ratio and concurrence");
    auto* g2 = app.add_subcommand("g2", "photon-photon correlation g2(tau)");
    auto* figures = app.add_subcommand("figures", "write the datasets of one figure");
    std::string figure;
    figures->add_option("figure", figure, "fig1, fig2, fig3, fig4 or fig5")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
    for (auto* sub : {evolve, steady, sweep, g2, figures}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        ScenarioConfig cfg = build_config(o);
        if (evolve->parsed()) {
            write_output(cfg.out, blockade::render(blockade::evolve_table(cfg), cfg.format));
        } else if (steady->parsed()) {
            const auto report = blockade::steady_report(cfg);
            const bool csv = o.format && *o.format == "csv";
            write_output(cfg.out, csv ? blockade::steady_report_csv(report) : report.dump(2) + "\n");
        } else if (sweep->parsed()) {
            write_output(cfg.out, blockade::render(blockade::sweep_table(cfg), cfg.format));
        } else if (g2->parsed()) {
            write_output(cfg.out, blockade::render(blockade::g2_table(cfg), cfg.format));
        } else if (figures->parsed()) {
            write_figures(figure, cfg);
        }
    } catch (const blockade::UndefinedQuantity& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "hint: choose a non-zero --omega, or detector phases for which light is detected\n";
        return kExitConfig;
    } catch (const blockade::InputError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const blockade::IntegrationFailure& e) {
        std::cerr << "numerical failure: " << e.what() << " (reached gamma*t = " << e.time_reached() << ")\n";
        return kExitNumerical;
    } catch (const blockade::DegenerateSteadyState& e) {
        std::cerr << "numerical failure: " << e.what() << "\nsingular values:";
        for (double s : e.singular_values()) std::cerr << ' ' << s;
        std::cerr << '\n';
        return kExitNumerical;
    } catch (const blockade::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
