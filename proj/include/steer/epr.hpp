#ifndef STEER_EPR_HPP
#define STEER_EPR_HPP

#include <Eigen/Dense>

#include "steer/pauli.hpp"

namespace steer {

// Two-qubit state in the Pauli correlation representation,
// theta(i,j) = Tr[rho (sigma_i^A otimes sigma_j^B)].  Rows index A, columns B.
struct TwoQubitState {
    Eigen::Matrix4d theta = Eigen::Matrix4d::Zero();
    double psd_margin = 0.0; // smallest eigenvalue of the reconstructed rho
};

enum class Side { AliceToBob, BobToAlice };

// Coordinate action of the EPR map: Alice-to-Bob is (1/2) theta^T.
struct EprMap {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    Side side = Side::AliceToBob;
};

struct EllipsoidReport {
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    Eigen::Vector3d semiaxes = Eigen::Vector3d::Zero(); // sorted descending
    Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
    bool degenerate = false;
};

// Build and validate the correlation representation of a density matrix.
// Throws validation_error naming the violated invariant (hermiticity, trace,
// positivity).
TwoQubitState theta_from_density(const Eigen::Matrix4cd& rho);

// Validate a correlation matrix directly (unit trace, PSD reconstruction).
TwoQubitState state_from_theta(const Eigen::Matrix4d& theta);

// rho = 1/4 sum_ij theta(i,j) sigma_i otimes sigma_j.
Eigen::Matrix4cd reconstruct_density(const Eigen::Matrix4d& theta);

EprMap epr_map(const TwoQubitState& state, Side side = Side::AliceToBob);

PauliVector apply_map(const EprMap& map, const PauliVector& v);

// Reduced state of the receiving party of the given map direction, as a Pauli
// vector (1, bloch): AliceToBob yields Bob's reduced state, the image of the
// identity under epr_map(state, AliceToBob).
PauliVector reduced_state(const TwoQubitState& state, Side side);

// Support function of the steering outcomes M_A' = map(M) at direction w:
// h(w) = outcome_support(m^T w).
double steering_support(const EprMap& map, const PauliVector& w);

inline int map_rank(const EprMap& map, double tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(map.m);
    return static_cast<int>((svd.singularValues().array() > tol * svd.singularValues()[0]).count());
}

// Alice's steering ellipsoid: projective projection of the steering outcomes
// through the origin onto Bob's Bloch hyperplane.  Throws geometry_error when
// the reduced state of A sits on the Bloch sphere boundary (the projection is
// then undefined for some directions).
EllipsoidReport steering_ellipsoid(const TwoQubitState& state);

} // namespace steer

#endif
