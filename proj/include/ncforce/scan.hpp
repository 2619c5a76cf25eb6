#pragma once

#include <optional>
#include <span>
#include <string>

#include "ncforce/forces.hpp"
#include "ncforce/kinematics.hpp"

namespace ncforce {

enum class OutputFormat { Csv, Json };

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct ScanConfig {
    std::string mode = "scan"; // scan | shapes
    std::string preset = "hydrogen"; // hydrogen | custom
    FormulaTier tier = FormulaTier::LeadingClosed;
    double r_min = 20e-9;
    double r_max = 200e-9;
    int r_points = 500;
    double t_obs = 0.0;
    bool t_obs_lifetime = false;
    double detuning_ratio = 0.0; // (omega_A - omega_B) / Gamma_A; 0 for identical
    bool displacement = false;
    DisplacementConvention convention = DisplacementConvention::TruncateAtLifetime;
    bool diagnostic = false;
    std::string output_path = "scan.csv";
    OutputFormat format = OutputFormat::Csv;
    int threads = 0; // 0 = hardware concurrency
    // shapes mode grid
    double v_min = 1.0;
    double v_max = 10.0;
    int v_points = 200;
    // custom preset (config file only)
    std::optional<TwoAtomSystem> custom_system;
};

// Plain-text key = value config; lines may carry a leading '#' so an emitted
// scan header is itself a valid config.  Parsing stops at "end-config".
ScanConfig parse_config_file(const std::string& path);
void apply_config_line(ScanConfig& config, const std::string& line);

// Runs the scan described by config and writes the output file.
// Exit status: 0 success, 2 numerical non-convergence on some rows (rows
// flagged, scan completed).  Invalid configurations throw ConfigError before
// anything is written.
int run_scan(const ScanConfig& config);

// Writes v, f_A(v), f_B(v) columns for external plotting and regression
// baselines.  Grid must lie within [1, 100].
void emit_reference_shapes(std::span<const double> v_grid, const std::string& output_path);

// 17-significant-digit float formatting used for all emitted numbers.
std::string format_number(double x);

} // namespace ncforce
