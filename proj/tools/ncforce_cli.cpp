#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncforce/quadrature.hpp"
#include "ncforce/scan.hpp"

namespace {

// Exit codes: 0 success, 1 config error, 2 numerical non-convergence.
int cli_main(int argc, char** argv) {
    CLI::App app{"ncforce: nonconservative dipole forces, net forces and transverse "
                 "displacements for an excited two-atom system"};

    std::string config_path;
    std::string preset, tier, tobs, convention, out, format;
    double rmin = 0, rmax = 0, vmin = 0, vmax = 0, detuning_ratio = 0;
    int rpoints = 0, vpoints = 0, threads = -1;
    bool displacement = false, diagnostic = false, shapes = false;

    auto* opt_config = app.add_option("--config", config_path, "Config file (key = value lines)");
    auto* opt_preset = app.add_option("--preset", preset, "hydrogen|custom")
                           ->check(CLI::IsMember({"hydrogen", "custom"}));
    auto* opt_tier = app.add_option("--tier", tier, "leading|full-identical|full-dissimilar")
                         ->check(CLI::IsMember({"leading", "full-identical", "full-dissimilar"}));
    auto* opt_rmin = app.add_option("--rmin", rmin, "Smallest separation (m)");
    auto* opt_rmax = app.add_option("--rmax", rmax, "Largest separation (m)");
    auto* opt_rpoints = app.add_option("--rpoints", rpoints, "Grid points");
    auto* opt_tobs = app.add_option("--tobs", tobs, "Observation time in seconds, or 'lifetime'");
    auto* opt_detune = app.add_option("--detuning-ratio", detuning_ratio,
                                      "(omega_A-omega_B)/Gamma_A, 0 for identical atoms");
    auto* opt_disp = app.add_flag("--displacement", displacement, "Emit displacement columns");
    auto* opt_conv = app.add_option("--convention", convention, "truncate|full-decay")
                         ->check(CLI::IsMember({"truncate", "full-decay"}));
    auto* opt_diag = app.add_flag("--diagnostic", diagnostic, "Emit per-term force columns");
    auto* opt_out = app.add_option("--out", out, "Output file path");
    auto* opt_format = app.add_option("--format", format, "csv|json")
                           ->check(CLI::IsMember({"csv", "json"}));
    auto* opt_threads = app.add_option("--threads", threads, "Worker threads (0 = hardware)");
    auto* opt_shapes = app.add_flag("--shapes", shapes, "Emit reference shape functions instead");
    auto* opt_vmin = app.add_option("--vmin", vmin, "Shapes: smallest v");
    auto* opt_vmax = app.add_option("--vmax", vmax, "Shapes: largest v");
    auto* opt_vpoints = app.add_option("--vpoints", vpoints, "Shapes: grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints usage or the error
        return code == 0 ? 0 : 1;
    }

    ncforce::ScanConfig config;
    if (*opt_config) config = ncforce::parse_config_file(config_path);

    // Flags win over the config file.
    if (*opt_preset) config.preset = preset;
    if (*opt_tier) ncforce::apply_config_line(config, "tier = " + tier);
    if (*opt_rmin) config.r_min = rmin;
    if (*opt_rmax) config.r_max = rmax;
    if (*opt_rpoints) config.r_points = rpoints;
    if (*opt_tobs) ncforce::apply_config_line(config, "tobs = " + tobs);
    if (*opt_detune) config.detuning_ratio = detuning_ratio;
    if (*opt_disp) config.displacement = true;
    if (*opt_conv) ncforce::apply_config_line(config, "convention = " + convention);
    if (*opt_diag) config.diagnostic = true;
    if (*opt_out) config.output_path = out;
    if (*opt_format) ncforce::apply_config_line(config, "format = " + format);
    if (*opt_threads) config.threads = threads;
    if (*opt_shapes) config.mode = "shapes";
    if (*opt_vmin) config.v_min = vmin;
    if (*opt_vmax) config.v_max = vmax;
    if (*opt_vpoints) config.v_points = vpoints;

    if (config.mode == "shapes") {
        if (!(config.v_min < config.v_max) || config.v_points < 2)
            throw ncforce::ConfigError("shapes: need vmin < vmax and vpoints >= 2");
        std::vector<double> grid(config.v_points);
        for (int i = 0; i < config.v_points; ++i)
            grid[i] = config.v_min +
                      (config.v_max - config.v_min) * i / static_cast<double>(config.v_points - 1);
        ncforce::emit_reference_shapes(grid, config.output_path);
        return 0;
    }
    return ncforce::run_scan(config);
}

} // namespace

int main(int argc, char** argv) {
    try {
        return cli_main(argc, argv);
    } catch (const ncforce::QuadratureNonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
