#include "steer/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "steer/sampling.hpp"

namespace steer {

namespace {

double packing_slack(const EprMap& map, const Ansatz& ansatz, const PauliVector& w) {
    return box_support(ansatz, w) - steering_support(map, w);
}

// Minimize the slack locally on the unit 3-sphere around w0 by golden-section
// line searches along great circles through w0.
std::pair<Eigen::Vector4d, double> refine_worst_direction(const EprMap& map,
                                                          const Ansatz& ansatz,
                                                          Eigen::Vector4d w0) {
    const auto slack_at = [&](const Eigen::Vector4d& w) {
        return packing_slack(map, ansatz, PauliVector(w));
    };
    double best = slack_at(w0);
    double span = 0.4;
    for (int round = 0; round < 7; ++round) {
        // Orthonormal complement of w0 from the coordinate axes.
        std::vector<Eigen::Vector4d> tangents;
        for (int axis = 0; axis < 4 && tangents.size() < 3; ++axis) {
            Eigen::Vector4d u = Eigen::Vector4d::Unit(axis);
            u -= u.dot(w0) * w0;
            for (const auto& t : tangents) u -= u.dot(t) * t;
            if (u.norm() > 1e-6) tangents.push_back(u.normalized());
        }
        for (const auto& u : tangents) {
            const auto f = [&](double t) {
                return slack_at((std::cos(t) * w0 + std::sin(t) * u).normalized());
            };
            const double t = golden_section_minimize(f, -span, span, 48);
            const Eigen::Vector4d cand = (std::cos(t) * w0 + std::sin(t) * u).normalized();
            const double s = slack_at(cand);
            if (s < best) {
                best = s;
                w0 = cand;
            }
        }
        span *= 0.45;
    }
    return {w0, best};
}

// Exact containment test against the uniform box.  The steering outcomes are
// the convex hull of O, the principal vertex, and the mapped rank-1
// projectors; the uniform box has ball cross-sections of radius x0(1-x0), so
// containment reduces to the sign of margin(n) = x0(1-x0) - |b| over the
// mapped projectors (1, n).  The support-function slack at the associated
// tangency direction is margin / 2.
PackingCertificate uniform_packing(const EprMap& map, double tol, int n_directions) {
    const auto margin_at = [&](const Eigen::Vector3d& n) {
        const PauliVector image = apply_map(map, PauliVector(1.0, n[0], n[1], n[2]));
        return image[0] * (1.0 - image[0]) - image.bloch_norm();
    };

    const auto dirs = fibonacci_sphere(std::max(n_directions, 64));
    std::vector<std::pair<double, std::size_t>> ranked(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) ranked[i] = {margin_at(dirs[i]), i};
    std::sort(ranked.begin(), ranked.end());

    // A few well-separated starts guard against isolated tangency basins.
    std::vector<Eigen::Vector3d> starts;
    for (const auto& [margin, idx] : ranked) {
        bool close = false;
        for (const auto& s : starts)
            if (s.dot(dirs[idx]) > std::cos(0.25)) close = true;
        if (!close) starts.push_back(dirs[idx]);
        if (starts.size() == 6) break;
    }

    Eigen::Vector3d best_n = dirs[ranked.front().second];
    double best = ranked.front().first;
    for (const auto& start : starts) {
        Eigen::Vector3d n = start;
        double current = margin_at(n);
        double span = 0.3;
        for (int round = 0; round < 9; ++round) {
            Eigen::Vector3d t1 = n.cross(Eigen::Vector3d::UnitX());
            if (t1.norm() < 1e-6) t1 = n.cross(Eigen::Vector3d::UnitY());
            t1.normalize();
            const Eigen::Vector3d t2 = n.cross(t1).normalized();
            for (const auto& t : {t1, t2}) {
                const auto f = [&](double a) {
                    return margin_at((std::cos(a) * n + std::sin(a) * t).normalized());
                };
                const double a = golden_section_minimize(f, -span, span, 40);
                const Eigen::Vector3d cand = (std::cos(a) * n + std::sin(a) * t).normalized();
                const double v = margin_at(cand);
                if (v < current) {
                    current = v;
                    n = cand;
                }
            }
            span *= 0.5;
        }
        if (current < best) {
            best = current;
            best_n = n;
        }
    }

    PackingCertificate cert;
    cert.slack = 0.5 * best;
    cert.contained = cert.slack >= -tol;
    if (!cert.contained) {
        const PauliVector image =
            apply_map(map, PauliVector(1.0, best_n[0], best_n[1], best_n[2]));
        const double r = image.bloch_norm();
        const Eigen::Vector3d n0 = r > 1e-14 ? (image.bloch() / r).eval() : best_n;
        Eigen::Vector4d w(-(1.0 - 2.0 * image[0]), n0[0], n0[1], n0[2]);
        cert.witness = PauliVector(Eigen::Vector4d(w.normalized()));
    }
    return cert;
}

PackingCertificate sampled_packing(const EprMap& map, const Ansatz& ansatz, double tol,
                                   int n_directions, bool fallback) {
    auto dirs = low_discrepancy_directions_4d(n_directions);
    for (int axis = 0; axis < 4; ++axis) {
        dirs.push_back(Eigen::Vector4d::Unit(axis));
        dirs.push_back(-Eigen::Vector4d::Unit(axis));
    }
    Eigen::Vector4d worst = dirs.front();
    double worst_slack = std::numeric_limits<double>::infinity();
    for (const auto& w : dirs) {
        const double s = packing_slack(map, ansatz, PauliVector(w));
        if (s < worst_slack) {
            worst_slack = s;
            worst = w;
        }
    }
    const auto [refined, slack] = refine_worst_direction(map, ansatz, worst);

    PackingCertificate cert;
    cert.slack = slack;
    cert.contained = slack >= -tol;
    cert.sampled_fallback = fallback;
    if (!cert.contained) cert.witness = PauliVector(refined);
    return cert;
}

// Bounded least squares over the unit hypercube by accelerated projected
// gradient; a is 4 x m.
Eigen::VectorXd bounded_least_squares(const Eigen::MatrixXd& a, const Eigen::Vector4d& y) {
    const Eigen::Index m = a.cols();
    const auto project = [](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return v.cwiseMax(0.0).cwiseMin(1.0);
    };
    if (m == 4) {
        // Independent generators: try the direct solve first.
        Eigen::FullPivLU<Eigen::Matrix4d> lu(a);
        if (lu.rank() == 4) {
            Eigen::Vector4d beta = lu.solve(y);
            if ((beta.array() > -1e-12).all() && (beta.array() < 1.0 + 1e-12).all())
                return project(beta);
        }
    }
    const Eigen::Matrix4d gram = a * a.transpose();
    const double lipschitz =
        std::max(Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(gram, Eigen::EigenvaluesOnly)
                     .eigenvalues()
                     .maxCoeff(),
                 1e-30);
    Eigen::VectorXd beta = Eigen::VectorXd::Constant(m, 0.5);
    Eigen::VectorXd z = beta;
    double momentum = 1.0;
    for (int iter = 0; iter < 20000; ++iter) {
        const Eigen::Vector4d residual = a * z - y;
        if (iter % 16 == 0 && (a * beta - y).norm() < 1e-12) break;
        const Eigen::VectorXd next = project(z - (a.transpose() * residual) / lipschitz);
        const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        z = next + ((momentum - 1.0) / next_momentum) * (next - beta);
        beta = next;
        momentum = next_momentum;
    }
    return beta;
}

Eigen::MatrixXd generator_columns(const Ansatz& ansatz) {
    if (const auto* fin = std::get_if<FiniteAnsatz>(&ansatz)) {
        Eigen::MatrixXd a(4, static_cast<Eigen::Index>(fin->generators.size()));
        for (std::size_t k = 0; k < fin->generators.size(); ++k)
            a.col(static_cast<Eigen::Index>(k)) = fin->generators[k].vec();
        return a;
    }
    const auto& mix = std::get<DiscreteMixture>(ansatz);
    Eigen::MatrixXd a(4, static_cast<Eigen::Index>(mix.weights.size()));
    for (std::size_t k = 0; k < mix.weights.size(); ++k) {
        a(0, static_cast<Eigen::Index>(k)) = mix.weights[k];
        a.block<3, 1>(1, static_cast<Eigen::Index>(k)) = mix.weights[k] * mix.directions[k];
    }
    return a;
}

} // namespace

void validate(const StochasticMatrix& g, double tol) {
    if (g.entries.size() == 0) throw validation_error("stochastic matrix: empty");
    if ((g.entries.array() < -1e-12).any() || (g.entries.array() > 1.0 + 1e-12).any())
        throw validation_error("stochastic matrix: entries outside [0,1]");
    const Eigen::RowVectorXd sums = g.entries.colwise().sum();
    if ((sums.array() - 1.0).abs().maxCoeff() > tol)
        throw validation_error("stochastic matrix: column sums differ from 1");
}

double cap_response_value(const CapResponse& cap, const Eigen::Vector3d& n) {
    return cap.n0.dot(n) > cap.lambda ? cap.scale : 0.0;
}

PackingCertificate check_packing(const EprMap& map, const Ansatz& ansatz, double tol,
                                 int n_directions) {
    validate(ansatz);
    const PauliVector vertex = principal_vertex(ansatz);
    const PauliVector image_id = apply_map(map, PauliVector::identity());
    if ((vertex.vec() - image_id.vec()).cwiseAbs().maxCoeff() > 1e-8)
        throw validation_error(
            "check_packing: box principal vertex must sit at the reduced state of B");

    if (const auto* fin = std::get_if<FiniteAnsatz>(&ansatz)) {
        const FacetNormalSet fn = facet_normals(*fin);
        if (fn.degenerate)
            return sampled_packing(map, ansatz, tol, n_directions, /*fallback=*/true);
        PackingCertificate cert;
        cert.slack = std::numeric_limits<double>::infinity();
        for (const auto& w : fn.normals) {
            const double s = packing_slack(map, ansatz, w);
            if (s < cert.slack) {
                cert.slack = s;
                cert.witness = w;
            }
        }
        cert.contained = cert.slack >= -tol;
        if (cert.contained) cert.witness.reset();
        return cert;
    }
    if (std::holds_alternative<UniformAnsatz>(ansatz))
        return uniform_packing(map, tol, n_directions);
    return sampled_packing(map, ansatz, tol, n_directions, /*fallback=*/false);
}

std::pair<bool, double> is_ppt(const TwoQubitState& state, double tol) {
    // Transposition on B negates the sigma_2^B component.
    Eigen::Matrix4d theta_tb = state.theta;
    theta_tb.col(2) *= -1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(reconstruct_density(theta_tb),
                                                       Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    return {min_eig >= -tol, min_eig};
}

namespace {

using TetraVertices = std::array<Eigen::Vector3d, 4>;

// Minimum over the four faces of (distance of the ellipsoid to the face
// plane, signed toward the opposite vertex).  Positive means the ellipsoid
// lies strictly inside the tetrahedron.
double tetra_min_slack(const TetraVertices& v, const Eigen::Vector3d& center,
                       const Eigen::Matrix3d& shape) {
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
        const auto& p = v[(k + 1) % 4];
        const auto& q = v[(k + 2) % 4];
        const auto& r = v[(k + 3) % 4];
        Eigen::Vector3d n = (q - p).cross(r - p);
        const double len = n.norm();
        if (len < 1e-14) return -std::numeric_limits<double>::infinity();
        n /= len;
        if (n.dot(v[static_cast<std::size_t>(k)] - p) < 0.0) n = -n;
        const double slack = n.dot(center - p) - std::sqrt(std::max(0.0, n.dot(shape * n)));
        worst = std::min(worst, slack);
    }
    return worst;
}

std::optional<TetraVertices> search_tetrahedron(const EllipsoidReport& ell) {
    const Eigen::Matrix3d shape = ell.orientation *
                                  ell.semiaxes.cwiseProduct(ell.semiaxes).asDiagonal() *
                                  ell.orientation.transpose();
    const auto clamp_ball = [](Eigen::Vector3d p) {
        const double n = p.norm();
        return n > 1.0 ? (p / n).eval() : p;
    };

    static const TetraVertices regular = {
        Eigen::Vector3d(1, 1, 1).normalized(), Eigen::Vector3d(1, -1, -1).normalized(),
        Eigen::Vector3d(-1, 1, -1).normalized(), Eigen::Vector3d(-1, -1, 1).normalized()};

    std::vector<TetraVertices> inits;
    TetraVertices oriented, reflected;
    for (int k = 0; k < 4; ++k) {
        oriented[static_cast<std::size_t>(k)] = ell.orientation * regular[static_cast<std::size_t>(k)];
        reflected[static_cast<std::size_t>(k)] = -oriented[static_cast<std::size_t>(k)];
    }
    inits.push_back(oriented);
    inits.push_back(reflected);
    for (const auto& base : {oriented, reflected}) {
        TetraVertices shifted;
        for (int k = 0; k < 4; ++k)
            shifted[static_cast<std::size_t>(k)] =
                clamp_ball(ell.center + (1.0 - ell.center.norm()) * base[static_cast<std::size_t>(k)]);
        inits.push_back(shifted);
    }
    // Partially shrunk starts help when the ellipsoid hugs the Bloch sphere.
    for (const double blend : {0.5, 0.25}) {
        TetraVertices mixed;
        for (int k = 0; k < 4; ++k)
            mixed[static_cast<std::size_t>(k)] =
                clamp_ball(ell.center + blend * (oriented[static_cast<std::size_t>(k)] - ell.center));
        inits.push_back(mixed);
    }
    // Deterministic rotated starts as a coarse global sweep.
    std::mt19937_64 eng(0x7e7a5eedULL);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int extra = 0; extra < 8; ++extra) {
        Eigen::Vector3d axis(unit(eng), unit(eng), unit(eng));
        if (axis.norm() < 1e-6) axis = Eigen::Vector3d::UnitZ();
        const Eigen::Matrix3d rot =
            Eigen::AngleAxisd(angle(eng), axis.normalized()).toRotationMatrix();
        TetraVertices turned;
        for (int k = 0; k < 4; ++k)
            turned[static_cast<std::size_t>(k)] =
                clamp_ball(ell.center +
                           (1.0 - ell.center.norm()) * (rot * regular[static_cast<std::size_t>(k)]));
        inits.push_back(turned);
    }

    std::optional<TetraVertices> best_tetra;
    double best_slack = -std::numeric_limits<double>::infinity();
    for (const auto& init : inits) {
        TetraVertices v = init;
        double current = tetra_min_slack(v, ell.center, shape);
        double step = 0.25;
        for (int iter = 0; iter < 200 && step > 1e-7; ++iter) {
            bool improved = false;
            for (auto& vertex : v)
                for (int axis = 0; axis < 3; ++axis)
                    for (double sign : {1.0, -1.0}) {
                        const Eigen::Vector3d saved = vertex;
                        vertex = clamp_ball(saved + sign * step * Eigen::Vector3d::Unit(axis));
                        const double cand = tetra_min_slack(v, ell.center, shape);
                        if (cand > current + 1e-15) {
                            current = cand;
                            improved = true;
                        } else {
                            vertex = saved;
                        }
                    }
            if (!improved) step *= 0.5;
        }
        if (current > best_slack) {
            best_slack = current;
            best_tetra = v;
        }
    }
    if (best_slack < -1e-9) return std::nullopt;
    return best_tetra;
}

} // namespace

std::optional<FiniteAnsatz> find_box_certificate(const TwoQubitState& state, double tol) {
    const EprMap map = epr_map(state, Side::AliceToBob);
    const PauliVector reduced_b = apply_map(map, PauliVector::identity());
    const double verify_tol = std::max(tol, 1e-8);

    if (map_rank(map) <= 1) {
        // The steering outcomes collapse to the segment [O, reduced state];
        // pack it with four scaled copies of the endpoint.
        FiniteAnsatz cert;
        for (int k = 0; k < 4; ++k) cert.generators.push_back(0.25 * reduced_b);
        try {
            if (check_packing(map, cert, verify_tol).contained) return cert;
        } catch (const validation_error&) {
        }
        return std::nullopt;
    }

    try {
        const EllipsoidReport ell = steering_ellipsoid(state);
        const auto tetra = search_tetrahedron(ell);
        if (!tetra) return std::nullopt;
        std::array<PauliVector, 4> cone_gen;
        for (int k = 0; k < 4; ++k) {
            const auto& vtx = (*tetra)[static_cast<std::size_t>(k)];
            cone_gen[static_cast<std::size_t>(k)] = PauliVector(1.0, vtx[0], vtx[1], vtx[2]);
        }
        const FiniteAnsatz cert = box_from_cone(cone_gen, 0.5 * reduced_b);
        if (check_packing(map, cert, verify_tol).contained) return cert;
    } catch (const geometry_error&) {
    } catch (const validation_error&) {
    }
    return std::nullopt;
}

SeparabilityDecision decide_separable(const TwoQubitState& state, double tol) {
    SeparabilityDecision decision;
    const auto [ppt, min_eig] = is_ppt(state, tol);
    decision.separable = ppt;
    decision.ppt_min_eigenvalue = min_eig;
    decision.method = SeparabilityDecision::Method::PPT;
    if (!ppt) return decision;
    if (auto cert = find_box_certificate(state, std::max(tol, 1e-8))) {
        decision.certificate = std::move(cert);
        decision.method = SeparabilityDecision::Method::BoxCertificate;
    }
    return decision;
}

LhsResponse lhs_response(const Ansatz& ansatz, const EprMap& map, const PauliVector& e) {
    if (!classify_cone(e, kConeTol).in_double_cone())
        throw validation_error("lhs_response: e is not a measurement outcome");
    validate(ansatz);
    const PauliVector image = apply_map(map, e);

    if (std::holds_alternative<UniformAnsatz>(ansatz)) {
        const double x0 = image[0];
        const double r = image.bloch_norm();
        if (x0 < -1e-12 || x0 > 1.0 + 1e-12)
            throw geometry_error("lhs_response: outcome height outside [0,1]");
        const double margin = x0 * (1.0 - x0) - r;
        if (margin < -1e-12)
            throw geometry_error("lhs_response: outcome outside the uniform box, residual " +
                                 std::to_string(-margin));
        CapResponse cap;
        cap.n0 = r > 1e-14 ? (image.bloch() / r).eval() : Eigen::Vector3d::UnitZ();
        if (x0 < 1e-14) return cap; // zero response
        cap.lambda = 2.0 * r / x0 - 1.0;
        cap.scale = std::min(1.0, x0 * x0 / (x0 - r));
        return cap;
    }

    const Eigen::MatrixXd a = generator_columns(ansatz);
    const Eigen::VectorXd beta = bounded_least_squares(a, image.vec());
    const double residual = (a * beta - image.vec()).norm();
    if (residual > 1e-8)
        throw geometry_error("lhs_response: infeasible, residual " + std::to_string(residual));
    return std::vector<double>(beta.data(), beta.data() + beta.size());
}

PauliVector lhs_reconstruct(const Ansatz& ansatz, const LhsResponse& response) {
    if (const auto* cap = std::get_if<CapResponse>(&response)) {
        const double x0 = cap->scale * 0.5 * (1.0 - cap->lambda);
        const Eigen::Vector3d b =
            cap->scale * 0.25 * (1.0 - cap->lambda * cap->lambda) * cap->n0;
        return {x0, b[0], b[1], b[2]};
    }
    const auto& beta = std::get<std::vector<double>>(response);
    const Eigen::MatrixXd a = generator_columns(ansatz);
    Eigen::Map<const Eigen::VectorXd> bvec(beta.data(), static_cast<Eigen::Index>(beta.size()));
    return PauliVector(Eigen::Vector4d(a * bvec));
}

StochasticMatrix binary_lhs_rows(const Ansatz& ansatz, const EprMap& map,
                                 const PauliVector& e1) {
    const LhsResponse response = lhs_response(ansatz, map, e1);
    const auto* beta = std::get_if<std::vector<double>>(&response);
    if (!beta)
        throw validation_error("binary_lhs_rows: finite or mixture ansatz required");
    StochasticMatrix rows;
    rows.entries.resize(2, static_cast<Eigen::Index>(beta->size()));
    for (std::size_t j = 0; j < beta->size(); ++j) {
        const double b = std::clamp((*beta)[j], 0.0, 1.0);
        rows.entries(0, static_cast<Eigen::Index>(j)) = b;
        rows.entries(1, static_cast<Eigen::Index>(j)) = 1.0 - b;
    }
    return rows;
}

StochasticMatrix compose_stochastic(const StochasticMatrix& h, const StochasticMatrix& k) {
    validate(h);
    validate(k);
    if (h.entries.cols() != k.entries.rows())
        throw validation_error("compose_stochastic: dimension mismatch");
    StochasticMatrix g{h.entries * k.entries};
    validate(g);
    return g;
}

BinaryPovmSpectral binary_povm_from_spectral(const PauliVector& e1) {
    if (!classify_cone(e1, kConeTol).in_double_cone())
        throw validation_error("binary_povm_from_spectral: e1 is not a measurement outcome");
    const auto [lo, hi] = eigenvalues_of(e1);
    const double r = e1.bloch_norm();
    const Eigen::Vector3d axis = r > 1e-14 ? (e1.bloch() / r).eval() : Eigen::Vector3d::UnitZ();

    BinaryPovmSpectral out;
    out.p1 = {1.0, -axis[0], -axis[1], -axis[2]}; // eigenprojector of lambda_minus
    out.p2 = {1.0, axis[0], axis[1], axis[2]};
    out.h.entries.resize(2, 2);
    out.h.entries << std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0),
        1.0 - std::clamp(lo, 0.0, 1.0), 1.0 - std::clamp(hi, 0.0, 1.0);
    return out;
}

double threshold_scan(const std::function<bool(double)>& predicate, double lo, double hi,
                      double tol) {
    if (!(tol > 0.0)) throw validation_error("threshold_scan: tol must be positive");
    if (!(lo < hi)) throw validation_error("threshold_scan: empty bracket");
    const bool at_lo = predicate(lo);
    if (predicate(hi) == at_lo)
        throw validation_error("threshold_scan: predicate equal at both endpoints");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (predicate(mid) == at_lo ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace steer
