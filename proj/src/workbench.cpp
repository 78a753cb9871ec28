#include "steer/workbench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "steer/sampling.hpp"

namespace steer {

namespace {

using nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::map<std::string, double> parse_kv(const std::string& text) {
    std::map<std::string, double> kv;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw validation_error("state spec: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        try {
            std::size_t used = 0;
            const double value = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1)
                throw validation_error("state spec: trailing characters in value of '" + key + "'");
            kv[key] = value;
        } catch (const std::invalid_argument&) {
            throw validation_error("state spec: bad numeric value for '" + key + "'");
        } catch (const std::out_of_range&) {
            throw validation_error("state spec: value out of range for '" + key + "'");
        }
    }
    return kv;
}

double require(const std::map<std::string, double>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw validation_error("state spec: missing parameter '" + key + "'");
    return it->second;
}

ordered_json matrix_json(const Eigen::Matrix4d& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

ordered_json pauli_json(const PauliVector& v) {
    return ordered_json::array({v[0], v[1], v[2], v[3]});
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& err) {
        throw validation_error("parse error in '" + path + "': " + err.what());
    }
    return j;
}

Eigen::Matrix4d matrix_from_json(const ordered_json& rows, const std::string& label) {
    if (!rows.is_array() || rows.size() != 4)
        throw validation_error(label + ": expected 4 rows");
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 4)
            throw validation_error(label + ": row " + std::to_string(i) + " must have 4 entries");
        for (int j = 0; j < 4; ++j) {
            const auto& cell = row[static_cast<std::size_t>(j)];
            if (!cell.is_number())
                throw validation_error(label + ": entry (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") is not a number");
            m(i, j) = cell.get<double>();
        }
    }
    return m;
}

bool looks_like_spec(const std::string& input) {
    static const char* names[] = {"werner", "modified_werner", "bell", "product", "random"};
    for (const char* n : names) {
        if (input == n) return true;
        if (input.rfind(std::string(n) + ":", 0) == 0) return true;
    }
    return false;
}

} // namespace

StateSpec parse_state_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const auto kv = colon == std::string::npos ? std::map<std::string, double>{}
                                               : parse_kv(text.substr(colon + 1));
    if (name == "werner") return Werner{require(kv, "p")};
    if (name == "modified_werner") return ModifiedWerner{require(kv, "p"), require(kv, "q")};
    if (name == "bell") return BellPhiPlus{};
    if (name == "product")
        return Product{{require(kv, "ax"), require(kv, "ay"), require(kv, "az")},
                       {require(kv, "bx"), require(kv, "by"), require(kv, "bz")}};
    if (name == "random") return Random{static_cast<std::uint64_t>(require(kv, "seed"))};
    throw validation_error("state spec: unknown family '" + name + "'");
}

TwoQubitState load_state(const std::string& input) {
    if (looks_like_spec(input)) return build(parse_state_spec(input));

    const ordered_json j = load_json_file(input);
    const bool has_theta = j.contains("theta");
    const bool has_rho = j.contains("rho_re") || j.contains("rho_im");
    if (has_theta == has_rho)
        throw validation_error("state file must contain exactly one of 'theta' or "
                               "'rho_re'+'rho_im'");
    if (has_theta) return state_from_theta(matrix_from_json(j["theta"], "theta"));
    if (!j.contains("rho_re") || !j.contains("rho_im"))
        throw validation_error("state file: both 'rho_re' and 'rho_im' are required");
    const Eigen::Matrix4d re = matrix_from_json(j["rho_re"], "rho_re");
    const Eigen::Matrix4d im = matrix_from_json(j["rho_im"], "rho_im");
    return theta_from_density(re.cast<std::complex<double>>() +
                              std::complex<double>(0, 1) * im.cast<std::complex<double>>());
}

Ansatz load_ansatz(const std::string& input) {
    if (input == "uniform") return UniformAnsatz{};
    const ordered_json j = load_json_file(input);
    if (j.is_array()) {
        FiniteAnsatz fin;
        for (const auto& entry : j) {
            if (!entry.is_array() || entry.size() != 4)
                throw validation_error("ansatz file: each generator needs 4 coordinates");
            fin.generators.emplace_back(entry[0].get<double>(), entry[1].get<double>(),
                                        entry[2].get<double>(), entry[3].get<double>());
        }
        validate(fin);
        return fin;
    }
    if (j.is_object() && j.contains("mixture")) {
        DiscreteMixture mix;
        for (const auto& entry : j["mixture"]) {
            if (!entry.contains("w") || !entry.contains("n") || entry["n"].size() != 3)
                throw validation_error("ansatz file: mixture entries need 'w' and 3-vector 'n'");
            mix.weights.push_back(entry["w"].get<double>());
            mix.directions.emplace_back(entry["n"][0].get<double>(), entry["n"][1].get<double>(),
                                        entry["n"][2].get<double>());
        }
        validate(mix);
        return mix;
    }
    throw validation_error("ansatz file: expected a generator list or a 'mixture' object");
}

AnalysisReport analyze(const std::string& input, const std::optional<Ansatz>& ansatz,
                       double tol, int n_directions) {
    const TwoQubitState state = load_state(input);
    AnalysisReport report;
    report.theta = state.theta;
    report.reduced_a = reduced_state(state, Side::BobToAlice);
    report.reduced_b = reduced_state(state, Side::AliceToBob);
    try {
        report.ellipsoid = steering_ellipsoid(state);
    } catch (const geometry_error&) {
        report.ellipsoid.reset();
    }
    std::tie(report.ppt, report.ppt_min_eigenvalue) = is_ppt(state, tol);
    report.separability = decide_separable(state, tol);

    if (ansatz) {
        const EprMap map = epr_map(state, Side::AliceToBob);
        const PauliVector vertex = principal_vertex(*ansatz);
        report.packing_applicable =
            (vertex.vec() - report.reduced_b.vec()).cwiseAbs().maxCoeff() <= 1e-8;
        if (report.packing_applicable)
            report.packing = check_packing(map, *ansatz, tol, n_directions);
    }
    return report;
}

std::string report_to_json(const AnalysisReport& report) {
    ordered_json j;
    j["theta"] = matrix_json(report.theta);
    j["reduced_a"] = pauli_json(report.reduced_a);
    j["reduced_b"] = pauli_json(report.reduced_b);
    if (report.ellipsoid) {
        const auto& e = *report.ellipsoid;
        ordered_json ej;
        ej["center"] = ordered_json::array({e.center[0], e.center[1], e.center[2]});
        ej["semiaxes"] = ordered_json::array({e.semiaxes[0], e.semiaxes[1], e.semiaxes[2]});
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < 3; ++i)
            rows.push_back(ordered_json::array(
                {e.orientation(i, 0), e.orientation(i, 1), e.orientation(i, 2)}));
        ej["orientation"] = rows;
        ej["degenerate"] = e.degenerate;
        j["ellipsoid"] = ej;
    } else {
        j["ellipsoid"] = nullptr;
    }
    j["ppt"] = report.ppt;
    j["ppt_min_eigenvalue"] = report.ppt_min_eigenvalue;
    ordered_json sj;
    sj["separable"] = report.separability.separable;
    sj["method"] = report.separability.method == SeparabilityDecision::Method::BoxCertificate
                       ? "box_certificate"
                       : "ppt";
    sj["certificate_present"] = report.separability.certificate.has_value();
    if (report.separability.certificate) {
        ordered_json gens = ordered_json::array();
        for (const auto& g : report.separability.certificate->generators)
            gens.push_back(pauli_json(g));
        sj["certificate"] = gens;
    }
    j["separability"] = sj;
    if (report.packing) {
        ordered_json pj;
        pj["applicable"] = true;
        pj["contained"] = report.packing->contained;
        pj["slack"] = report.packing->slack;
        pj["sampled_fallback"] = report.packing->sampled_fallback;
        if (report.packing->witness) pj["witness"] = pauli_json(*report.packing->witness);
        j["packing"] = pj;
    } else {
        ordered_json pj;
        pj["applicable"] = false;
        j["packing"] = pj;
    }
    return j.dump(2);
}

namespace {

StateSpec family_spec(const std::string& family, const std::map<std::string, double>& fixed,
                      const std::string& param, double value) {
    std::map<std::string, double> kv = fixed;
    kv[param] = value;
    if (family == "werner") return Werner{require(kv, "p")};
    if (family == "modified_werner")
        return ModifiedWerner{require(kv, "p"), require(kv, "q")};
    throw validation_error("sweep: unknown family '" + family + "'");
}

struct SweepRow {
    double param = 0.0;
    double ppt_min_eig = 0.0;
    std::optional<double> packing_slack;
    bool separable = false;
    std::optional<bool> contained;
};

SweepRow evaluate_sweep_point(const SweepConfig& config, double value) {
    SweepRow row;
    row.param = value;
    const TwoQubitState state =
        build(family_spec(config.family, config.fixed, config.param, value));
    const auto [ppt, min_eig] = is_ppt(state);
    row.separable = ppt;
    row.ppt_min_eig = min_eig;
    try {
        const PackingCertificate cert = check_packing(
            epr_map(state, Side::AliceToBob), config.ansatz, config.tol, config.n_directions);
        row.packing_slack = cert.slack;
        row.contained = cert.contained;
    } catch (const validation_error&) {
        // box vertex away from the reduced state: packing not applicable
    }
    return row;
}

void write_sweep_row(std::ostream& out, const SweepRow& row, const std::string& threshold_of) {
    out << fmt17(row.param) << ',' << fmt17(row.ppt_min_eig) << ','
        << (row.packing_slack ? fmt17(*row.packing_slack) : std::string{}) << ','
        << (row.separable ? "true" : "false") << ','
        << (row.contained ? (*row.contained ? "true" : "false") : std::string{}) << ','
        << threshold_of << "\r\n";
}

} // namespace

void sweep(const SweepConfig& config, std::ostream& out) {
    out << "param,ppt_min_eig,packing_slack,separable,contained,threshold_of\r\n";
    if (config.lo > config.hi) return; // vacuous sweep, header only

    if (config.step) {
        if (!(*config.step > 0.0)) throw validation_error("sweep: step must be positive");
        const auto count = static_cast<long>(std::floor((config.hi - config.lo) / *config.step + 1e-9));
        for (long i = 0; i <= count; ++i)
            write_sweep_row(out, evaluate_sweep_point(config, config.lo + static_cast<double>(i) * *config.step), "");
        return;
    }

    // Bisect mode: one summary row per bracketed predicate.
    const SweepRow at_lo = evaluate_sweep_point(config, config.lo);
    const SweepRow at_hi = evaluate_sweep_point(config, config.hi);
    bool any_bracket = false;
    if (at_lo.separable != at_hi.separable) {
        any_bracket = true;
        const double t = threshold_scan(
            [&](double v) { return evaluate_sweep_point(config, v).separable; }, config.lo,
            config.hi, config.tol);
        write_sweep_row(out, evaluate_sweep_point(config, t), "separable");
    }
    if (at_lo.contained && at_hi.contained && *at_lo.contained != *at_hi.contained) {
        any_bracket = true;
        const double t = threshold_scan(
            [&](double v) { return *evaluate_sweep_point(config, v).contained; }, config.lo,
            config.hi, config.tol);
        write_sweep_row(out, evaluate_sweep_point(config, t), "contained");
    }
    if (!any_bracket)
        throw validation_error("sweep: no predicate changes over the range (no bracket)");
}

double planar_halfwidth(const std::function<double(const PauliVector&)>& support,
                        const Eigen::Vector3d& u, double x0) {
    constexpr double kPi = 3.1415926535897932384626433832795;
    constexpr double kEdge = 1e-7;
    const auto line_height = [&](double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const PauliVector w(c, s * u[0], s * u[1], s * u[2]);
        return (2.0 * support(w) - x0 * c) / s;
    };
    const int grid = 256;
    double best_theta = kEdge;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const double theta = kEdge + (kPi - 2.0 * kEdge) * i / grid;
        const double v = line_height(theta);
        if (v < best) {
            best = v;
            best_theta = theta;
        }
    }
    const double half_step = (kPi - 2.0 * kEdge) / grid;
    const double lo = std::max(kEdge, best_theta - half_step);
    const double hi = std::min(kPi - kEdge, best_theta + half_step);
    const double theta = golden_section_minimize(line_height, lo, hi, 64);
    return std::min(best, line_height(theta));
}

void export_boundary(const BoundaryExportConfig& config, std::ostream& out) {
    validate(config.ansatz);
    const Eigen::Vector3d u = config.axis.normalized();
    const int samples = std::max(config.samples, 8);
    out << "curve,x0,b_par\r\n";
    const auto emit = [&](const std::string& curve, double x0, double b_par) {
        out << curve << ',' << fmt17(x0) << ',' << fmt17(b_par) << "\r\n";
    };

    // Box boundary.  Spherical ansatz: lambda sweep of the cap construction;
    // finite ansatz: support-line envelope of the planar section.
    const bool spherical = !std::holds_alternative<FiniteAnsatz>(config.ansatz);
    if (spherical) {
        const SphericalAnsatz sph =
            std::holds_alternative<UniformAnsatz>(config.ansatz)
                ? SphericalAnsatz{UniformAnsatz{}}
                : SphericalAnsatz{std::get<DiscreteMixture>(config.ansatz)};
        for (int side = 0; side < 2; ++side) {
            const Eigen::Vector3d n0 = side == 0 ? u : (-u).eval();
            for (int i = 0; i <= samples; ++i) {
                const double lambda = 1.0 - 2.0 * i / samples;
                const BoundaryPoint pt = boundary_point(sph, n0, lambda);
                emit(side == 0 ? "box_upper" : "box_lower", pt.x0, pt.b.dot(u));
            }
        }
    } else {
        const double x0_max = principal_vertex(config.ansatz)[0];
        for (int i = 0; i <= samples; ++i) {
            const double x0 = x0_max * i / samples;
            const auto h = [&](const PauliVector& w) { return box_support(config.ansatz, w); };
            emit("box_upper", x0, planar_halfwidth(h, u, x0));
            emit("box_lower", x0, -planar_halfwidth(h, -u, x0));
        }
    }

    // Forward light-cone |b| = x0.
    const double cone_top = 1.0;
    for (int i = 0; i <= samples; ++i) {
        const double x0 = cone_top * i / samples;
        emit("lightcone_upper", x0, x0);
        emit("lightcone_lower", x0, -x0);
    }

    if (config.map) {
        const auto h = [&](const PauliVector& w) { return steering_support(*config.map, w); };
        const double x0_max = 2.0 * h(PauliVector(1.0, 0.0, 0.0, 0.0));
        for (int i = 0; i <= samples; ++i) {
            const double x0 = x0_max * i / samples;
            emit("steering_upper", x0, planar_halfwidth(h, u, x0));
            emit("steering_lower", x0, -planar_halfwidth(h, -u, x0));
        }
    }
}

} // namespace steer
