#ifndef STEER_ANSATZ_HPP
#define STEER_ANSATZ_HPP

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "steer/pauli.hpp"

namespace steer {

// Finite generator set {B_1..B_m}; the polyhedral box is
// {sum beta_i B_i | 0 <= beta_i <= 1}.  Generators must be positive operators
// and the principal vertex sum B_i must have X0 in (0, 2].
struct FiniteAnsatz {
    std::vector<PauliVector> generators;
};

// Uniform distribution on the 3D unit sphere of cone-boundary generators (1, n).
struct UniformAnsatz {};

// Weighted delta-peaks on the unit sphere; weights sum to 1.
struct DiscreteMixture {
    std::vector<double> weights;
    std::vector<Eigen::Vector3d> directions;
};

using SphericalAnsatz = std::variant<UniformAnsatz, DiscreteMixture>;
using Ansatz = std::variant<FiniteAnsatz, UniformAnsatz, DiscreteMixture>;

// Throw validation_error on any violated invariant.
void validate(const FiniteAnsatz& ansatz);
void validate(const DiscreteMixture& mixture);
void validate(const Ansatz& ansatz);

PauliVector principal_vertex(const Ansatz& ansatz);

// Support function of box(ansatz) at direction w (Hilbert-Schmidt pairing).
// Finite: sum_i max(0, <B_i, w>).  Uniform has a closed form in
// (a, r) = (w0, |w_vec|).  Positively homogeneous and sublinear.
double box_support(const Ansatz& ansatz, const PauliVector& w);

// A point on the boundary of the box, from the Lagrange-multiplier cap
// construction: the response function is the indicator of {n0.n > lambda}
// plus g on the tie set {n0.n = lambda}.
struct BoundaryPoint {
    double x0 = 0.0;
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    double lambda = 0.0;
    Eigen::Vector3d n0 = Eigen::Vector3d::UnitZ();
    std::vector<double> g_values; // per-tie weights (DiscreteMixture only)
};

BoundaryPoint boundary_point(const SphericalAnsatz& ansatz, const Eigen::Vector3d& n0,
                             double lambda,
                             const std::vector<double>& g = {});

// Convenience: boundary point of a spherical ansatz at a prescribed
// cross-section height x0 (picks lambda, and tie weights for mixtures).
BoundaryPoint boundary_point_at_height(const SphericalAnsatz& ansatz,
                                       const Eigen::Vector3d& n0, double x0);

// Cross-section radius of the uniform-ansatz box at height x0.
double uniform_cross_section_radius(double x0);

// Candidate facet normals of the 4D zonotope box(ansatz): for every linearly
// independent 3-subset of generators, both unit kernel vectors of the 3x4
// coordinate matrix.  Duplicates are merged.  When the generators span less
// than 4 dimensions the result is flagged degenerate and carries an
// orthonormal basis of the spanned subspace.
struct FacetNormalSet {
    std::vector<PauliVector> normals;
    bool degenerate = false;
    Eigen::Matrix<double, 4, Eigen::Dynamic> span; // columns, when degenerate
};

FacetNormalSet facet_normals(const FiniteAnsatz& ansatz);

// Lemma-style box construction: given 4 linearly independent generators of a
// cone and the center of symmetry, scale each generator by
// lambda_i = max{lambda | lambda B_i in cone^-} where cone^- is the reflection
// of the cone through the center.  box(result) = cone /\ cone^-.
FiniteAnsatz box_from_cone(const std::array<PauliVector, 4>& generators,
                           const PauliVector& center);

} // namespace steer

#endif
