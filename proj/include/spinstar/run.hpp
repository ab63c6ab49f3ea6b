#pragma once

// Experiment runner: key=value configs, named figure presets, CSV output
// with a key=value manifest sidecar.

#include <string>
#include <vector>

#include "spinstar/observables.hpp"
#include "spinstar/thermal.hpp"

namespace spinstar {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kCsvHeader =
    "t,purity,sz_total,entropy_1q,entropy_2q,concurrence,ppt_min_eig,negativity,raw_trace";

struct RunConfig {
    SimParams params;
    QubitPairState initial_state;
    std::string initial_name;  // preset name, or "custom"
    Method method = Method::laguerre;
    std::string output_path = "out.csv";
    int sample_stride = 1;
};

// Named initial states: product_11, bell_01_10, bell_00_11.
QubitPairState initial_state_preset(const std::string& name);

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

struct RunResult {
    std::string csv_path;
    std::string manifest_path;
    std::vector<ObservableRecord> records;
    ReducedTrajectory trajectory;
};

// Computes the trajectory only (no file I/O).
RunResult run_config(const RunConfig& config);
// Computes and writes CSV + manifest.
RunResult run_experiment(const RunConfig& config);

struct PresetCurve {
    std::string label;  // file stem, e.g. "fig1_T0.2"
    RunConfig config;
};

// fig1..fig8 parameter tables; every curve uses mu0 = 2g, g = 1.
std::vector<PresetCurve> preset_curves(const std::string& name);
std::vector<RunResult> run_preset(const std::string& name, const std::string& outdir);

// Default output grid: t = 0, dt, ..., t_max.
std::vector<double> make_time_grid(double dt, double t_max);

// 17-significant-digit formatting used for every CSV/manifest number.
std::string format_double(double value);

}  // namespace spinstar
