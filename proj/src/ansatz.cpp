#include "steer/ansatz.hpp"

#include <algorithm>
#include <numeric>

namespace steer {

namespace {

constexpr double kTieTol = 1e-12;
constexpr double kRankTol = 1e-10;   // on singular values
constexpr double kMergeTol = 1e-9;   // angular merge of facet normals

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

} // namespace

void validate(const FiniteAnsatz& ansatz) {
    if (ansatz.generators.empty())
        throw validation_error("finite ansatz: no generators");
    for (const auto& g : ansatz.generators) {
        if (!g.finite()) throw validation_error("finite ansatz: non-finite generator");
        if (!classify_cone(g, kConeTol).in_forward_cone)
            throw validation_error("finite ansatz: generator is not a positive operator");
    }
    PauliVector vertex = PauliVector::zero();
    for (const auto& g : ansatz.generators) vertex = vertex + g;
    if (!(vertex[0] > 0.0 && vertex[0] <= 2.0 + 1e-12))
        throw validation_error("finite ansatz: principal vertex X0 outside (0, 2]");
}

void validate(const DiscreteMixture& mixture) {
    if (mixture.weights.size() != mixture.directions.size())
        throw validation_error("mixture: weights/directions size mismatch");
    if (mixture.weights.empty()) throw validation_error("mixture: empty");
    double total = 0.0;
    for (std::size_t k = 0; k < mixture.weights.size(); ++k) {
        if (!(mixture.weights[k] > 0.0))
            throw validation_error("mixture: weights must be positive");
        if (std::abs(mixture.directions[k].norm() - 1.0) > 1e-12)
            throw validation_error("mixture: directions must be unit vectors");
        total += mixture.weights[k];
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw validation_error("mixture: weights must sum to 1");
}

void validate(const Ansatz& ansatz) {
    std::visit(
        [](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (!std::is_same_v<T, UniformAnsatz>) validate(a);
        },
        ansatz);
}

PauliVector principal_vertex(const Ansatz& ansatz) {
    if (const auto* fin = std::get_if<FiniteAnsatz>(&ansatz)) {
        PauliVector v = PauliVector::zero();
        for (const auto& g : fin->generators) v = v + g;
        return v;
    }
    if (const auto* mix = std::get_if<DiscreteMixture>(&ansatz)) {
        Eigen::Vector3d b = Eigen::Vector3d::Zero();
        for (std::size_t k = 0; k < mix->weights.size(); ++k)
            b += mix->weights[k] * mix->directions[k];
        return {1.0, b[0], b[1], b[2]};
    }
    return {1.0, 0.0, 0.0, 0.0};
}

double box_support(const Ansatz& ansatz, const PauliVector& w) {
    if (const auto* fin = std::get_if<FiniteAnsatz>(&ansatz)) {
        double h = 0.0;
        for (const auto& g : fin->generators) h += positive_part(hs_inner(g, w));
        return h;
    }
    if (const auto* mix = std::get_if<DiscreteMixture>(&ansatz)) {
        double h = 0.0;
        for (std::size_t k = 0; k < mix->weights.size(); ++k)
            h += mix->weights[k] *
                 positive_part(0.5 * (w[0] + w.bloch().dot(mix->directions[k])));
        return h;
    }
    // Uniform: integrate max(0, (a + r cos(theta))/2) over the sphere.
    const double a = w[0];
    const double r = w.bloch_norm();
    if (a >= r) return 0.5 * a;
    if (a <= -r) return 0.0;
    return 0.5 * (a + r) * (a + r) / (4.0 * r);
}

BoundaryPoint boundary_point(const SphericalAnsatz& ansatz, const Eigen::Vector3d& n0,
                             double lambda, const std::vector<double>& g) {
    if (std::abs(n0.norm() - 1.0) > 1e-9)
        throw validation_error("boundary_point: n0 must be a unit vector");

    BoundaryPoint pt;
    pt.lambda = lambda;
    pt.n0 = n0;

    if (std::holds_alternative<UniformAnsatz>(ansatz)) {
        // Spherical cap {n0.n > lambda}: the tie set has zero measure, g is
        // irrelevant.
        if (lambda >= 1.0) return pt;
        if (lambda <= -1.0) {
            pt.x0 = 1.0;
            return pt;
        }
        pt.x0 = 0.5 * (1.0 - lambda);
        pt.b = 0.25 * (1.0 - lambda * lambda) * n0;
        return pt;
    }

    const auto& mix = std::get<DiscreteMixture>(ansatz);
    if (!g.empty() && g.size() != mix.weights.size())
        throw validation_error("boundary_point: g must match the mixture size");
    pt.g_values.assign(mix.weights.size(), 0.0);
    for (std::size_t k = 0; k < mix.weights.size(); ++k) {
        const double dot = n0.dot(mix.directions[k]);
        double f = 0.0;
        if (dot > lambda + kTieTol) {
            f = 1.0;
        } else if (std::abs(dot - lambda) <= kTieTol) {
            f = g.empty() ? 0.0 : g[k];
            if (f < 0.0 || f > 1.0)
                throw validation_error("boundary_point: g values must lie in [0,1]");
            pt.g_values[k] = f;
        }
        pt.x0 += mix.weights[k] * f;
        pt.b += mix.weights[k] * f * mix.directions[k];
    }
    return pt;
}

BoundaryPoint boundary_point_at_height(const SphericalAnsatz& ansatz,
                                       const Eigen::Vector3d& n0, double x0) {
    if (x0 < 0.0 || x0 > 1.0)
        throw validation_error("boundary_point_at_height: x0 outside [0,1]");
    if (std::holds_alternative<UniformAnsatz>(ansatz))
        return boundary_point(ansatz, n0, 1.0 - 2.0 * x0);

    const auto& mix = std::get<DiscreteMixture>(ansatz);
    const std::size_t m = mix.weights.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> dots(m);
    for (std::size_t k = 0; k < m; ++k) dots[k] = n0.dot(mix.directions[k]);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return dots[a] > dots[b]; });

    // Fill caps in decreasing dot order until the weight budget x0 is met; the
    // marginal dot value becomes lambda and its ties carry the remainder.
    double acc = 0.0;
    double lambda = 1.0;
    for (std::size_t k : order) {
        if (acc + mix.weights[k] < x0 - kTieTol) {
            acc += mix.weights[k];
        } else {
            lambda = dots[k];
            break;
        }
    }
    double above = 0.0, tied = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (dots[k] > lambda + kTieTol)
            above += mix.weights[k];
        else if (std::abs(dots[k] - lambda) <= kTieTol)
            tied += mix.weights[k];
    }
    std::vector<double> g(m, 0.0);
    if (tied > 0.0) {
        const double frac = std::clamp((x0 - above) / tied, 0.0, 1.0);
        for (std::size_t k = 0; k < m; ++k)
            if (std::abs(dots[k] - lambda) <= kTieTol) g[k] = frac;
    }
    return boundary_point(ansatz, n0, lambda, g);
}

double uniform_cross_section_radius(double x0) {
    if (!(x0 >= 0.0 && x0 <= 1.0))
        throw validation_error("uniform_cross_section_radius: x0 outside [0,1]");
    return x0 * (1.0 - x0);
}

FacetNormalSet facet_normals(const FiniteAnsatz& ansatz) {
    // Works for arbitrary generator sets; positivity is a packing concern.
    const auto& gen = ansatz.generators;
    for (const auto& g : gen)
        if (!g.finite()) throw validation_error("facet_normals: non-finite generator");
    const std::size_t m = gen.size();
    if (m < 3) throw validation_error("facet_normals: at least 3 generators required");

    FacetNormalSet out;

    Eigen::MatrixXd all(4, static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) all.col(static_cast<Eigen::Index>(k)) = gen[k].vec();
    Eigen::JacobiSVD<Eigen::MatrixXd> full_svd(all, Eigen::ComputeThinU);
    const auto sv = full_svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > kRankTol * sv[0]) ++rank;
    if (rank < 4) {
        out.degenerate = true;
        out.span = full_svd.matrixU().leftCols(rank);
        return out;
    }

    const auto push_unique = [&out](const Eigen::Vector4d& n) {
        for (const auto& existing : out.normals)
            if ((existing.vec() - n).cwiseAbs().maxCoeff() < kMergeTol) return;
        out.normals.emplace_back(n);
    };

    for (std::size_t i = 0; i + 2 < m; ++i)
        for (std::size_t j = i + 1; j + 1 < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                Eigen::Matrix<double, 3, 4> sub;
                sub.row(0) = gen[i].vec();
                sub.row(1) = gen[j].vec();
                sub.row(2) = gen[k].vec();
                Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(sub, Eigen::ComputeFullV);
                const auto s = svd.singularValues();
                if (s[2] <= kRankTol * s[0]) continue; // dependent subset
                Eigen::Vector4d kernel = svd.matrixV().col(3).normalized();
                // Canonical sign before dedup so antipodes stay distinct but stable.
                push_unique(kernel);
                push_unique(-kernel);
            }
    return out;
}

FiniteAnsatz box_from_cone(const std::array<PauliVector, 4>& generators,
                           const PauliVector& center) {
    Eigen::Matrix4d basis;
    for (int k = 0; k < 4; ++k) basis.col(k) = generators[static_cast<std::size_t>(k)].vec();
    Eigen::FullPivLU<Eigen::Matrix4d> lu(basis);
    lu.setThreshold(kRankTol);
    if (lu.rank() < 4)
        throw validation_error("box_from_cone: generators are linearly dependent");

    // lambda_i B_i on the reflected cone boundary: expand 2*center in the
    // generator basis; feasibility of the reflection intersection requires all
    // coefficients positive.
    const Eigen::Vector4d gamma = lu.solve(2.0 * center.vec());
    for (int k = 0; k < 4; ++k)
        if (!(gamma[k] > 0.0))
            throw geometry_error(
                "box_from_cone: cones intersect only at the origin (non-positive scale)");

    FiniteAnsatz box;
    box.generators.reserve(4);
    for (int k = 0; k < 4; ++k)
        box.generators.push_back(gamma[k] * generators[static_cast<std::size_t>(k)]);
    validate(box);
    return box;
}

} // namespace steer
