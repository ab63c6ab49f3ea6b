#include "spinstar/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace spinstar {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + value + "' for key '" + key + "'");
    }
}

int parse_int(const std::string& value, const std::string& key) {
    const double v = parse_number(value, key);
    if (v != std::floor(v))
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    return static_cast<int>(v);
}

QubitPairState parse_initial_state(const std::string& value, std::string& name_out) {
    if (value == "product_11" || value == "bell_01_10" || value == "bell_00_11") {
        name_out = value;
        return initial_state_preset(value);
    }
    // explicit amplitudes: a00 a11 a01 a10 as re im pairs
    std::istringstream in(value);
    double comps[8];
    for (double& c : comps)
        if (!(in >> c))
            throw ConfigError("config: initial_state must be a preset name or 8 reals "
                              "(a00 a11 a01 a10 as re/im pairs)");
    std::string extra;
    if (in >> extra) throw ConfigError("config: too many values in initial_state");
    QubitPairState psi;
    psi.a00 = {comps[0], comps[1]};
    psi.a11 = {comps[2], comps[3]};
    psi.a01 = {comps[4], comps[5]};
    psi.a10 = {comps[6], comps[7]};
    if (std::abs(psi.norm_sq() - 1.0) > 1e-12)
        throw ConfigError("config: initial_state amplitudes are not normalized");
    name_out = "custom";
    return psi;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

QubitPairState initial_state_preset(const std::string& name) {
    if (name == "product_11") return QubitPairState::product_11();
    if (name == "bell_01_10") return QubitPairState::bell_01_10();
    if (name == "bell_00_11") return QubitPairState::bell_00_11();
    throw ConfigError("unknown initial-state preset '" + name + "'");
}

std::vector<double> make_time_grid(double dt, double t_max) {
    if (t_max == 0.0) return {0.0};
    const auto steps = static_cast<long>(std::llround(t_max / dt));
    std::vector<double> grid(steps + 1);
    for (long i = 0; i <= steps; ++i) grid[i] = i * dt;
    return grid;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig config;
    bool have_initial = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty value for '" + key + "'");

        if (key == "mu0") config.params.mu0 = parse_number(value, key);
        else if (key == "omega") config.params.omega = parse_number(value, key);
        else if (key == "g0") config.params.g0 = parse_number(value, key);
        else if (key == "g") config.params.g = parse_number(value, key);
        else if (key == "temperature") config.params.temperature = parse_number(value, key);
        else if (key == "cutoff_tol") config.params.cutoff_tol = parse_number(value, key);
        else if (key == "k_max") config.params.k_max = parse_int(value, key);
        else if (key == "alpha") config.params.alpha = parse_number(value, key);
        else if (key == "dt") config.params.dt = parse_number(value, key);
        else if (key == "t_max") config.params.t_max = parse_number(value, key);
        else if (key == "trace_tol") config.params.trace_tol = parse_number(value, key);
        else if (key == "initial_state") {
            config.initial_state = parse_initial_state(value, config.initial_name);
            have_initial = true;
        } else if (key == "method") {
            if (value == "laguerre") config.method = Method::laguerre;
            else if (value == "exact") config.method = Method::exact;
            else throw ConfigError(origin + ":" + std::to_string(lineno) +
                                   ": method must be laguerre or exact");
        } else if (key == "output") config.output_path = value;
        else if (key == "sample_stride") {
            config.sample_stride = parse_int(value, key);
            if (config.sample_stride < 1)
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": sample_stride must be >= 1");
        } else {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!have_initial) throw ConfigError(origin + ": missing required key 'initial_state'");
    try {
        config.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path);
}

RunResult run_config(const RunConfig& config) {
    const std::vector<double> grid = make_time_grid(config.params.dt, config.params.t_max);
    RunResult result;
    result.trajectory = evolve_reduced(config.params, config.initial_state, grid, config.method);
    for (std::size_t i = 0; i < grid.size(); i += config.sample_stride)
        result.records.push_back(observe(grid[i], result.trajectory.rho[i]));
    return result;
}

namespace {

std::string render_csv(const std::vector<ObservableRecord>& records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += format_double(r.t);
        out += ',';
        out += format_double(r.purity);
        out += ',';
        out += format_double(r.sz_total);
        out += ',';
        out += format_double(r.entropy_one_qubit);
        out += ',';
        out += format_double(r.entropy_two_qubit);
        out += ',';
        out += format_double(r.concurrence);
        out += ',';
        out += format_double(r.ppt_min_eig);
        out += ',';
        out += format_double(r.negativity);
        out += ',';
        out += format_double(r.raw_trace);
        out += '\n';
    }
    return out;
}

std::string render_manifest(const RunConfig& config, const RunResult& result) {
    const SimParams& p = config.params;
    const ReducedTrajectory& traj = result.trajectory;
    std::ostringstream out;
    out << "version = " << kVersion << '\n'
        << "method = " << (config.method == Method::laguerre ? "laguerre" : "exact") << '\n'
        << "initial_state = " << config.initial_name << '\n';
    const QubitPairState& s = config.initial_state;
    out << "a00 = " << format_double(s.a00.real()) << ' ' << format_double(s.a00.imag()) << '\n'
        << "a11 = " << format_double(s.a11.real()) << ' ' << format_double(s.a11.imag()) << '\n'
        << "a01 = " << format_double(s.a01.real()) << ' ' << format_double(s.a01.imag()) << '\n'
        << "a10 = " << format_double(s.a10.real()) << ' ' << format_double(s.a10.imag()) << '\n'
        << "mu0 = " << format_double(p.mu0) << '\n'
        << "omega = " << format_double(p.omega) << '\n'
        << "g0 = " << format_double(p.g0) << '\n'
        << "g = " << format_double(p.g) << '\n'
        << "temperature = " << format_double(p.temperature) << '\n'
        << "cutoff_tol = " << format_double(p.cutoff_tol) << '\n'
        << "k_max = " << p.k_max << '\n'
        << "alpha = " << format_double(p.alpha) << '\n'
        << "dt = " << format_double(p.dt) << '\n'
        << "t_max = " << format_double(p.t_max) << '\n'
        << "trace_tol = " << format_double(p.trace_tol) << '\n'
        << "sample_stride = " << config.sample_stride << '\n'
        << "m_cutoff = " << traj.ensemble.m_cutoff << '\n'
        << "tail_mass = " << format_double(traj.ensemble.tail_mass) << '\n'
        << "n_fock = " << traj.ensemble.m_cutoff + 3 << '\n'
        << "steps_taken = " << traj.diag.steps_taken << '\n'
        << "step_halvings = " << traj.diag.step_halvings << '\n'
        << "max_norm_error = " << format_double(traj.diag.max_norm_error) << '\n'
        << "max_excitation_drift = " << format_double(traj.diag.max_excitation_drift) << '\n'
        << "max_hermiticity_error = " << format_double(traj.diag.max_hermiticity_error) << '\n'
        << "min_eigenvalue = " << format_double(traj.diag.min_eigenvalue) << '\n'
        << "max_trace_deficit = " << format_double(traj.diag.max_trace_deficit) << '\n'
        << "rows = " << result.records.size() << '\n';
    return out.str();
}

}  // namespace

RunResult run_experiment(const RunConfig& config) {
    RunResult result = run_config(config);
    result.csv_path = config.output_path;
    result.manifest_path = config.output_path + ".manifest";
    write_text_file(result.csv_path, render_csv(result.records));
    write_text_file(result.manifest_path, render_manifest(config, result));
    return result;
}

std::vector<PresetCurve> preset_curves(const std::string& name) {
    auto base = [](const std::string& psi_name, double omega, double g0, double temperature) {
        RunConfig c;
        c.params.mu0 = 2.0;
        c.params.omega = omega;
        c.params.g0 = g0;
        c.params.g = 1.0;
        c.params.temperature = temperature;
        c.initial_state = initial_state_preset(psi_name);
        c.initial_name = psi_name;
        return c;
    };
    std::vector<PresetCurve> curves;
    if (name == "fig1" || name == "fig2") {
        // |11>, g0=g, Omega=0, T in {0.2, 2, 10}g; fig2 is the T=0.2g trace
        if (name == "fig1") {
            curves.push_back({"fig1_T0.2", base("product_11", 0.0, 1.0, 0.2)});
            curves.push_back({"fig1_T2", base("product_11", 0.0, 1.0, 2.0)});
            curves.push_back({"fig1_T10", base("product_11", 0.0, 1.0, 10.0)});
        } else {
            curves.push_back({"fig2_T0.2", base("product_11", 0.0, 1.0, 0.2)});
        }
    } else if (name == "fig3") {
        curves.push_back({"fig3_Om0", base("product_11", 0.0, 1.0, 5.0)});
        curves.push_back({"fig3_Om2", base("product_11", 2.0, 1.0, 5.0)});
        curves.push_back({"fig3_Om5", base("product_11", 5.0, 1.0, 5.0)});
    } else if (name == "fig4") {
        curves.push_back({"fig4_g0_0.2", base("product_11", 0.0, 0.2, 5.0)});
        curves.push_back({"fig4_g0_1", base("product_11", 0.0, 1.0, 5.0)});
        curves.push_back({"fig4_g0_5", base("product_11", 0.0, 5.0, 5.0)});
    } else if (name == "fig5") {
        curves.push_back({"fig5_T2", base("bell_01_10", 0.0, 1.0, 2.0)});
        curves.push_back({"fig5_T5", base("bell_01_10", 0.0, 1.0, 5.0)});
        curves.push_back({"fig5_T20", base("bell_01_10", 0.0, 1.0, 20.0)});
    } else if (name == "fig6") {
        curves.push_back({"fig6_Om0", base("bell_01_10", 0.0, 1.0, 5.0)});
        curves.push_back({"fig6_Om2", base("bell_01_10", 2.0, 1.0, 5.0)});
        curves.push_back({"fig6_Om5", base("bell_01_10", 5.0, 1.0, 5.0)});
    } else if (name == "fig7") {
        curves.push_back({"fig7_g0_0.2", base("bell_01_10", 0.0, 0.2, 5.0)});
        curves.push_back({"fig7_g0_1", base("bell_01_10", 0.0, 1.0, 5.0)});
        curves.push_back({"fig7_g0_5", base("bell_01_10", 0.0, 5.0, 5.0)});
    } else if (name == "fig8") {
        curves.push_back({"fig8_g0_0.2", base("bell_00_11", 0.0, 0.2, 5.0)});
        curves.push_back({"fig8_g0_1", base("bell_00_11", 0.0, 1.0, 5.0)});
        curves.push_back({"fig8_g0_5", base("bell_00_11", 0.0, 5.0, 5.0)});
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected fig1..fig8)");
    }
    return curves;
}

std::vector<RunResult> run_preset(const std::string& name, const std::string& outdir) {
    std::vector<PresetCurve> curves = preset_curves(name);
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw IoError("cannot create output directory '" + outdir + "'");
    std::vector<RunResult> results;
    results.reserve(curves.size());
    for (auto& curve : curves) {
        curve.config.output_path = (std::filesystem::path(outdir) / (curve.label + ".csv")).string();
        results.push_back(run_experiment(curve.config));
    }
    return results;
}

}  // namespace spinstar
