// Acceptance suite: eight end-to-end criteria, one PASS/FAIL line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "steer/classify.hpp"
#include "steer/sampling.hpp"
#include "steer/states.hpp"
#include "steer/workbench.hpp"

using namespace steer;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion_1_werner_separability() {
    const auto t0 = std::chrono::steady_clock::now();
    const double threshold = threshold_scan(
        [](double p) { return decide_separable(build(Werner{p})).separable; }, 0.0, 1.0, 1e-6);
    const double elapsed = seconds_since(t0);
    const double err = std::abs(threshold - 1.0 / 3.0);
    report(1, "Werner separability threshold 1/3", err <= 1e-6 && elapsed < 5.0,
           "threshold=" + std::to_string(threshold) + " err=" + std::to_string(err) +
               " time=" + std::to_string(elapsed) + "s");
}

void criterion_2_werner_unsteerability() {
    const auto t0 = std::chrono::steady_clock::now();
    const Ansatz uniform{UniformAnsatz{}};
    const double threshold = threshold_scan(
        [&](double p) {
            return check_packing(epr_map(build(Werner{p})), uniform, 1e-9, 2048).contained;
        },
        0.0, 1.0, 1e-4);
    const double elapsed = seconds_since(t0);
    const double err = std::abs(threshold - 0.5);
    report(2, "Werner uniform-packing threshold 1/2", err <= 1e-3 && elapsed < 30.0,
           "threshold=" + std::to_string(threshold) + " err=" + std::to_string(err) +
               " time=" + std::to_string(elapsed) + "s");
}

void criterion_3_modified_werner() {
    const Ansatz uniform{UniformAnsatz{}};
    const double threshold = threshold_scan(
        [&](double q) {
            return check_packing(epr_map(build(ModifiedWerner{0.4, q})), uniform, 1e-9, 2048)
                .contained;
        },
        0.0, 1.0, 1e-4);
    const double expected = std::sqrt(0.2) / 0.6;
    const double err = std::abs(threshold - expected);
    report(3, "modified-Werner q threshold at p=0.4", err <= 1e-3,
           "threshold=" + std::to_string(threshold) + " expected=" + std::to_string(expected) +
               " err=" + std::to_string(err));
}

void criterion_4_uniform_boundary() {
    const SphericalAnsatz uniform{UniformAnsatz{}};
    double worst_uniform = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double x0 = k / 100.0;
        const BoundaryPoint pt = boundary_point_at_height(uniform, Eigen::Vector3d::UnitZ(), x0);
        worst_uniform = std::max(worst_uniform, std::abs(pt.b.norm() - x0 * (1.0 - x0)));
    }

    DiscreteMixture mix;
    mix.directions = fibonacci_sphere(10000);
    mix.weights.assign(mix.directions.size(), 1e-4);
    double total = 0.0;
    for (double w : mix.weights) total += w;
    mix.weights.back() += 1.0 - total;
    const SphericalAnsatz discrete{mix};
    double worst_discrete = 0.0;
    const Eigen::Vector3d n0 = Eigen::Vector3d(0.3, -0.5, 0.81).normalized();
    for (int k = 1; k < 100; ++k) {
        const double x0 = k / 100.0;
        const BoundaryPoint pt = boundary_point_at_height(discrete, n0, x0);
        worst_discrete = std::max(worst_discrete, std::abs(pt.b.norm() - x0 * (1.0 - x0)));
    }

    report(4, "uniform boundary r(x0)=x0(1-x0)", worst_uniform <= 1e-6 && worst_discrete <= 1e-2,
           "uniform_err=" + std::to_string(worst_uniform) +
               " discrete_err=" + std::to_string(worst_discrete));
}

void criterion_5_oracle_equivalence() {
    int unsound = 0;
    int unverified = 0;
    int ppt_count = 0;
    int ppt_certified = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const TwoQubitState state = random_state(seed);
        const bool ppt = is_ppt(state).first;
        if (ppt) ++ppt_count;
        const auto cert = find_box_certificate(state, 1e-8);
        if (!cert) continue;
        if (!ppt) {
            ++unsound;
            continue;
        }
        ++ppt_certified;
        const PackingCertificate packing = check_packing(epr_map(state), Ansatz{*cert}, 1e-8);
        if (!packing.contained) ++unverified;
    }

    int werner_hits = 0;
    for (int k = 0; k < 20; ++k) {
        const double p = (k / 19.0) * (1.0 / 3.0);
        const SeparabilityDecision decision = decide_separable(build(Werner{p}));
        if (decision.separable && decision.certificate &&
            check_packing(epr_map(build(Werner{p})), Ansatz{*decision.certificate}, 1e-8)
                .contained)
            ++werner_hits;
    }

    const bool ok = unsound == 0 && unverified == 0 && werner_hits == 20;
    report(5, "Prop. 1 oracle equivalence on 1000 random states", ok,
           "unsound=" + std::to_string(unsound) + " unverified=" + std::to_string(unverified) +
               " werner_grid=" + std::to_string(werner_hits) + "/20 random_ppt_certified=" +
               std::to_string(ppt_certified) + "/" + std::to_string(ppt_count));
}

void criterion_6_response_construction() {
    const TwoQubitState state = build(Werner{0.45});
    const EprMap map = epr_map(state);
    const Ansatz uniform{UniformAnsatz{}};
    const std::vector<Eigen::Vector3d> dirs = fibonacci_sphere(256);

    double worst_resid = 0.0;
    double worst_col = 0.0;
    int compose_failures = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const PauliVector e1 = random_outcome(trial + 4242);
        const PauliVector e2 = PauliVector::identity() - e1;

        // Reconstruction of both steered outcomes from cap responses.
        for (const PauliVector& e : {e1, e2}) {
            const PauliVector back = lhs_reconstruct(uniform, lhs_response(uniform, map, e));
            worst_resid = std::max(
                worst_resid, (back.vec() - apply_map(map, e).vec()).cwiseAbs().maxCoeff());
        }

        // Lemma 3 composition G = H K: H from the spectral decomposition of
        // E1, K from the projector responses sampled over a direction grid
        // (row 2 complements row 1, so K is exactly column-stochastic).
        const BinaryPovmSpectral spectral = binary_povm_from_spectral(e1);
        const auto cap1 = std::get<CapResponse>(lhs_response(uniform, map, spectral.p1));
        StochasticMatrix k;
        k.entries.resize(2, static_cast<Eigen::Index>(dirs.size()));
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            const double f = cap_response_value(cap1, dirs[j]);
            k.entries(0, static_cast<Eigen::Index>(j)) = f;
            k.entries(1, static_cast<Eigen::Index>(j)) = 1.0 - f;
        }
        try {
            const StochasticMatrix g = compose_stochastic(spectral.h, k);
            const double col_err =
                (g.entries.colwise().sum().array() - 1.0).abs().maxCoeff();
            worst_col = std::max(worst_col, col_err);
        } catch (const validation_error&) {
            ++compose_failures;
        }
    }
    const bool ok = worst_resid <= 1e-8 && worst_col <= 1e-12 && compose_failures == 0;
    report(6, "Prop. 2 / Lemma 3 responses on 100 binary POVMs", ok,
           "max_residual=" + std::to_string(worst_resid) +
               " max_colsum_err=" + std::to_string(worst_col) +
               " compose_failures=" + std::to_string(compose_failures));
}

void criterion_7_geometry_invariants() {
    double worst_sym = 0.0;
    double worst_sub = 0.0;
    int cone_violations = 0;
    std::mt19937_64 eng(0xacce97edULL);
    std::normal_distribution<double> normal;
    const auto direction = [&]() {
        Eigen::Vector4d v(normal(eng), normal(eng), normal(eng), normal(eng));
        return PauliVector(v.normalized());
    };

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const TwoQubitState state = random_state(seed);
        const EprMap map = epr_map(state);
        const PauliVector c = 0.5 * apply_map(map, PauliVector::identity());
        for (int trial = 0; trial < 100; ++trial) {
            const PauliVector w = direction();
            const double gap = steering_support(map, w) - steering_support(map, -w) -
                               2.0 * hs_inner(c, w);
            worst_sym = std::max(worst_sym, std::abs(gap));
        }
        for (int trial = 0; trial < 10000; ++trial) {
            const PauliVector e = random_outcome(seed * 100000 + static_cast<std::uint64_t>(trial));
            if (!classify_cone(apply_map(map, e), 1e-9).in_forward_cone) ++cone_violations;
        }
    }
    for (int trial = 0; trial < 10000; ++trial) {
        const PauliVector a = direction();
        const PauliVector b = direction();
        const double excess = outcome_support(a + b) - outcome_support(a) - outcome_support(b);
        worst_sub = std::max(worst_sub, excess);
    }

    const bool ok = worst_sym <= 1e-9 && worst_sub <= 1e-10 && cone_violations == 0;
    report(7, "geometry invariants (symmetry, sublinearity, cones)", ok,
           "max_symmetry_gap=" + std::to_string(worst_sym) +
               " max_sublinearity_excess=" + std::to_string(worst_sub) +
               " cone_violations=" + std::to_string(cone_violations));
}

void criterion_8_figure2_tangency() {
    BoundaryExportConfig config;
    config.map = epr_map(build(Werner{0.5}));
    config.samples = 1000; // x0 grid of 1e-3 on both curves
    std::ostringstream out;
    export_boundary(config, out);

    std::vector<double> box(1001, std::nan("")), steer_curve(1001, std::nan(""));
    std::vector<int> box_idx, steer_idx;
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line); // header
    int box_i = 0, steer_i = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const std::string curve = line.substr(0, c1);
        const double b = std::stod(line.substr(c2 + 1));
        if (curve == "box_upper") box[static_cast<std::size_t>(box_i++)] = b;
        if (curve == "steering_upper") steer_curve[static_cast<std::size_t>(steer_i++)] = b;
    }

    bool ok = box_i == 1001 && steer_i == 1001;
    double tangency_gap = std::nan("");
    int gap_violations = 0;
    if (ok) {
        tangency_gap = box[500] - steer_curve[500];
        if (std::abs(tangency_gap) >= 1e-6) ok = false;
        for (int i = 1; i < 1000; ++i) {
            if (i == 500) continue;
            if (box[static_cast<std::size_t>(i)] - steer_curve[static_cast<std::size_t>(i)] <=
                0.0)
                ++gap_violations;
        }
        if (gap_violations > 0) ok = false;
    }
    report(8, "figure-2 tangency of steering and box curves", ok,
           "gap_at_half=" + std::to_string(tangency_gap) +
               " interior_gap_violations=" + std::to_string(gap_violations));
}

} // namespace

int main() {
    criterion_1_werner_separability();
    criterion_2_werner_unsteerability();
    criterion_3_modified_werner();
    criterion_4_uniform_boundary();
    criterion_5_oracle_equivalence();
    criterion_6_response_construction();
    criterion_7_geometry_invariants();
    criterion_8_figure2_tangency();
    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
