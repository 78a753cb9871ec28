// Command-line workbench: analyze single states, sweep state families, and
// export the boundary polylines of boxes and steering outcomes.
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "steer/workbench.hpp"

namespace {

// 0 success, 1 parse/validation, 2 geometric infeasibility, 3 I/O.
enum ExitCode { kOk = 0, kValidation = 1, kGeometry = 2, kIo = 3 };

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw steer::io_error("cannot open output file '" + path + "'");
    return file;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit separability and steerability from steering-outcome geometry"};
    app.require_subcommand(1);

    std::string state_arg;
    std::string ansatz_arg = "uniform";
    std::string out_path;
    std::string format = "json";
    double tol = 1e-9;
    int directions = 2048;

    auto* analyze_cmd = app.add_subcommand("analyze", "Full report for one state");
    analyze_cmd->add_option("--state", state_arg, "State file or spec string")->required();
    analyze_cmd->add_option("--ansatz", ansatz_arg, "uniform | ansatz JSON file | none");
    analyze_cmd->add_option("--tol", tol, "Numeric tolerance");
    analyze_cmd->add_option("--directions", directions, "Direction budget for spherical packing");
    analyze_cmd->add_option("--out", out_path, "Output path (default stdout)");
    analyze_cmd->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

    std::string family = "werner";
    std::string param = "p";
    std::vector<std::string> fixed_args;
    double lo = 0.0, hi = 1.0;
    double step = 0.0;
    bool bisect = false;
    double sweep_tol = 1e-4;

    auto* sweep_cmd = app.add_subcommand("sweep", "Scan a state family; CSV output");
    sweep_cmd->add_option("--family", family, "werner | modified_werner")->required();
    sweep_cmd->add_option("--param", param, "Swept parameter name");
    sweep_cmd->add_option("--fix", fixed_args, "Fixed parameters, key=value");
    sweep_cmd->add_option("--lo", lo, "Range start")->required();
    sweep_cmd->add_option("--hi", hi, "Range end")->required();
    auto* step_opt = sweep_cmd->add_option("--step", step, "Grid step");
    sweep_cmd->add_flag("--bisect", bisect, "Threshold bisection instead of a grid");
    sweep_cmd->add_option("--tol", sweep_tol, "Bisection / packing tolerance");
    sweep_cmd->add_option("--ansatz", ansatz_arg, "uniform | ansatz JSON file");
    sweep_cmd->add_option("--directions", directions, "Direction budget for spherical packing");
    sweep_cmd->add_option("--out", out_path, "Output path (default stdout)");

    std::string boundary_state;
    std::string axis = "z";
    int samples = 512;

    auto* boundary_cmd = app.add_subcommand("boundary", "Export boundary cross-sections; CSV");
    boundary_cmd->add_option("--ansatz", ansatz_arg, "uniform | ansatz JSON file");
    boundary_cmd->add_option("--state", boundary_state, "Optional state for the steering curve");
    boundary_cmd->add_option("--axis", axis, "Slice axis: x | y | z")->check(CLI::IsMember({"x", "y", "z"}));
    boundary_cmd->add_option("--samples", samples, "Points per curve");
    boundary_cmd->add_option("--out", out_path, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        std::ofstream file;
        if (analyze_cmd->parsed()) {
            std::optional<steer::Ansatz> ansatz;
            if (ansatz_arg != "none") ansatz = steer::load_ansatz(ansatz_arg);
            const auto report = steer::analyze(state_arg, ansatz, tol, directions);
            open_output(out_path, file) << steer::report_to_json(report) << "\n";
        } else if (sweep_cmd->parsed()) {
            if (bisect == static_cast<bool>(*step_opt))
                throw steer::validation_error("sweep: pass exactly one of --step or --bisect");
            steer::SweepConfig config;
            config.family = family;
            config.param = param;
            for (const auto& kv : fixed_args) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw steer::validation_error("--fix expects key=value, got '" + kv + "'");
                config.fixed[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            }
            config.lo = lo;
            config.hi = hi;
            if (!bisect) config.step = step;
            config.tol = sweep_tol;
            config.n_directions = directions;
            config.ansatz = steer::load_ansatz(ansatz_arg);
            steer::sweep(config, open_output(out_path, file));
        } else {
            steer::BoundaryExportConfig config;
            config.ansatz = steer::load_ansatz(ansatz_arg);
            if (!boundary_state.empty()) {
                const auto state = steer::load_state(boundary_state);
                config.map = steer::epr_map(state, steer::Side::AliceToBob);
            }
            config.axis = axis == "x"   ? Eigen::Vector3d::UnitX()
                          : axis == "y" ? Eigen::Vector3d::UnitY()
                                        : Eigen::Vector3d::UnitZ();
            config.samples = samples;
            steer::export_boundary(config, open_output(out_path, file));
        }
    } catch (const steer::io_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kIo;
    } catch (const steer::geometry_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kGeometry;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kValidation;
    }
    return kOk;
}
