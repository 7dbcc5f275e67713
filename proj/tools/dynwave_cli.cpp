// dynwave: run energy-conserving wave simulations with dynamic boundary
// conditions and their convergence studies.
//
//   dynwave run <config> [--set section.key=value]...
//   dynwave converge <config> --levels n [--set section.key=value]...
//   dynwave presets
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 solver failure.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dynwave/config.hpp"
#include "dynwave/csv_io.hpp"
#include "dynwave/harness.hpp"
#include "dynwave/quotients.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;

std::vector<dynwave::ConfigOverride> parse_overrides(const std::vector<std::string>& raw) {
    std::vector<dynwave::ConfigOverride> out;
    for (const auto& s : raw) out.push_back(dynwave::parse_override(s));
    return out;
}

std::filesystem::path prepare_outdir(const dynwave::ExperimentConfig& config) {
    std::filesystem::path dir(config.outdir);
    std::filesystem::create_directories(dir);
    return dir;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& sets) {
    const auto config = dynwave::load_config(config_path, parse_overrides(sets));
    const auto dir = prepare_outdir(config);
    const auto traj = dynwave::run(config);
    dynwave::write_snapshots(dir / "snapshots.csv", traj);
    dynwave::write_energy(dir / "energy.csv", traj);
    dynwave::write_diagnostics(dir / "diagnostics.csv", traj);

    int max_iter = 0;
    for (const auto& d : traj.diagnostics) max_iter = std::max(max_iter, d.iterations);
    fmt::print("K={} N={} dx={:.6g} dt={:.6g}\n", traj.grid.K(), traj.grid.N(), traj.grid.dx(),
               traj.grid.dt());
    fmt::print("J_0={:.17g} relative drift={:.3e} max iterations={}\n", traj.initial_energy,
               traj.drift, max_iter);
    fmt::print("wrote {}\n", dir.string());
    return kExitOk;
}

int cmd_converge(const std::string& config_path, int levels, const std::vector<std::string>& sets) {
    const auto config = dynwave::load_config(config_path, parse_overrides(sets));
    const auto dir = prepare_outdir(config);
    const auto rows = dynwave::convergence_study(config, levels);
    dynwave::write_convergence(dir / "convergence.csv", rows);
    for (const auto& r : rows) {
        fmt::print("level {}  K={:5}  N={:6}  err={:.6e}  order={:.4f}\n", r.level, r.K, r.N,
                   r.err_composite, r.observed_order);
    }
    fmt::print("wrote {}\n", (dir / "convergence.csv").string());
    return kExitOk;
}

int cmd_presets() {
    for (const auto& p : dynwave::preset_catalog()) {
        fmt::print("{}\n  {}\n  {}\n", p.name, p.u0, p.v0);
    }
    fmt::print("\nnonlinearities:\n");
    for (const auto& name : dynwave::nonlinearity_names()) {
        fmt::print("  {:<13} {}\n", name, dynwave::nonlinearity_by_name(name).formula);
    }
    fmt::print("flux densities (kind = general):\n");
    for (const auto& name : dynwave::flux_names()) {
        fmt::print("  {:<13} {}\n", name, dynwave::flux_by_name(name).formula);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-conserving finite difference solver for nonlinear waves with dynamic "
                 "boundary conditions"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    int levels = 4;

    auto* run = app.add_subcommand("run", "Run one experiment and write snapshots/energy/diagnostics CSVs");
    run->add_option("config", config_path, "Configuration file")->required();
    run->add_option("--set", sets, "Override a value, section.key=value");

    auto* converge = app.add_subcommand("converge", "Self-convergence study, writes convergence.csv");
    converge->add_option("config", config_path, "Configuration file")->required();
    converge->add_option("--levels", levels, "Number of refinement levels (>= 3)")
        ->check(CLI::Range(3, 12));
    converge->add_option("--set", sets, "Override a value, section.key=value");

    auto* presets = app.add_subcommand("presets", "List initial-data presets and catalog entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, sets);
        if (converge->parsed()) return cmd_converge(config_path, levels, sets);
        if (presets->parsed()) return cmd_presets();
    } catch (const dynwave::NoConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const dynwave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
