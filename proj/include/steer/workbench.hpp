#ifndef STEER_WORKBENCH_HPP
#define STEER_WORKBENCH_HPP

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "steer/classify.hpp"
#include "steer/states.hpp"

namespace steer {

// Full per-state report assembled from the epr and classify layers.
struct AnalysisReport {
    Eigen::Matrix4d theta = Eigen::Matrix4d::Zero();
    PauliVector reduced_a;
    PauliVector reduced_b;
    std::optional<EllipsoidReport> ellipsoid; // absent when projection undefined
    bool ppt = false;
    double ppt_min_eigenvalue = 0.0;
    SeparabilityDecision separability;
    bool packing_applicable = false; // vertex of the requested box at reduced_b
    std::optional<PackingCertificate> packing;
};

// `name:key=value,...` with names werner, modified_werner, bell, product,
// random.  Throws validation_error with field diagnostics.
StateSpec parse_state_spec(const std::string& text);

// Either a state-spec string or a path to a JSON file with exactly one of
// {"theta": 4x4} or {"rho_re": 4x4, "rho_im": 4x4}.
TwoQubitState load_state(const std::string& input);

// "uniform", or a path to a JSON file holding either a list of 4-coordinate
// generators or {"mixture": [{"w": ..., "n": [x,y,z]}, ...]}.
Ansatz load_ansatz(const std::string& input);

AnalysisReport analyze(const std::string& input, const std::optional<Ansatz>& ansatz,
                       double tol = 1e-9, int n_directions = 2048);

// Deterministic JSON rendering of a report (fixed key order).
std::string report_to_json(const AnalysisReport& report);

struct SweepConfig {
    std::string family;                  // werner | modified_werner
    std::string param;                   // p | q
    std::map<std::string, double> fixed; // remaining family parameters
    double lo = 0.0;
    double hi = 1.0;
    std::optional<double> step;          // absent => bisect mode
    double tol = 1e-4;
    int n_directions = 2048;
    Ansatz ansatz = UniformAnsatz{};
};

// CSV columns: param, ppt_min_eig, packing_slack, separable, contained,
// threshold_of.  Bisect mode appends one summary row per bracketed threshold.
void sweep(const SweepConfig& config, std::ostream& out);

struct BoundaryExportConfig {
    Ansatz ansatz = UniformAnsatz{};
    std::optional<EprMap> map;
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ(); // slice plane: span(X0, axis)
    int samples = 512;
};

// CSV columns: curve, x0, b_par.  Curves: box_upper/lower, lightcone_upper/
// lower, and (when a map is given) steering_upper/lower.
void export_boundary(const BoundaryExportConfig& config, std::ostream& out);

// Half-width at height x0 of the planar section of a convex body with the
// given 4D support function, in the plane span(X0-axis, u).
double planar_halfwidth(const std::function<double(const PauliVector&)>& support,
                        const Eigen::Vector3d& u, double x0);

} // namespace steer

#endif
