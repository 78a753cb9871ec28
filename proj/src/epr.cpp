#include "steer/epr.hpp"

#include <algorithm>
#include <unsupported/Eigen/KroneckerProduct>

namespace steer {

namespace {

double min_eigenvalue(const Eigen::Matrix4cd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace

Eigen::Matrix4cd reconstruct_density(const Eigen::Matrix4d& theta) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rho += 0.25 * theta(i, j) *
                   Eigen::kroneckerProduct(pauli_matrix(i), pauli_matrix(j));
    return rho;
}

TwoQubitState theta_from_density(const Eigen::Matrix4cd& rho) {
    if (!rho.allFinite()) throw validation_error("density matrix has non-finite entries");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw validation_error("density matrix is not hermitian (1e-10)");
    if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-10)
        throw validation_error("density matrix trace differs from 1 (1e-10)");
    const double min_eig = min_eigenvalue(rho);
    if (min_eig < -1e-9)
        throw validation_error(
            "density matrix is not positive semidefinite (eigenvalue below -1e-9)");

    TwoQubitState s;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            s.theta(i, j) =
                (rho * Eigen::kroneckerProduct(pauli_matrix(i), pauli_matrix(j)))
                    .trace()
                    .real();
    s.psd_margin = min_eig;
    return s;
}

TwoQubitState state_from_theta(const Eigen::Matrix4d& theta) {
    if (!theta.allFinite()) throw validation_error("theta has non-finite entries");
    if (std::abs(theta(0, 0) - 1.0) > 1e-10)
        throw validation_error("theta(0,0) differs from 1 (unit trace)");
    TwoQubitState s;
    s.theta = theta;
    s.psd_margin = min_eigenvalue(reconstruct_density(theta));
    if (s.psd_margin < -1e-9)
        throw validation_error(
            "density matrix is not positive semidefinite (eigenvalue below -1e-9)");
    return s;
}

EprMap epr_map(const TwoQubitState& state, Side side) {
    EprMap map;
    map.side = side;
    if (side == Side::AliceToBob)
        map.m = 0.5 * state.theta.transpose();
    else
        map.m = 0.5 * state.theta;
    return map;
}

PauliVector apply_map(const EprMap& map, const PauliVector& v) {
    return PauliVector(Eigen::Vector4d(map.m * v.vec()));
}

PauliVector reduced_state(const TwoQubitState& state, Side side) {
    if (side == Side::BobToAlice)
        return {1.0, state.theta(1, 0), state.theta(2, 0), state.theta(3, 0)};
    return {1.0, state.theta(0, 1), state.theta(0, 2), state.theta(0, 3)};
}

double steering_support(const EprMap& map, const PauliVector& w) {
    return outcome_support(PauliVector(Eigen::Vector4d(map.m.transpose() * w.vec())));
}

EllipsoidReport steering_ellipsoid(const TwoQubitState& state) {
    const Eigen::Vector3d a = state.theta.block<3, 1>(1, 0); // Alice's Bloch vector
    const Eigen::Vector3d b = state.theta.block<1, 3>(0, 1).transpose();
    const Eigen::Matrix3d t = state.theta.block<3, 3>(1, 1);

    const double a2 = a.squaredNorm();
    if (a2 >= 1.0 - 1e-12)
        throw geometry_error(
            "steering ellipsoid undefined: reduced state of A on the Bloch sphere");
    const double gamma = 1.0 / (1.0 - a2);

    // Projective image of the Bloch sphere: center and quadratic form.
    const Eigen::Matrix3d tt_ba = t.transpose() - b * a.transpose();
    const Eigen::Matrix3d q =
        gamma * tt_ba * (Eigen::Matrix3d::Identity() + gamma * a * a.transpose()) *
        tt_ba.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(q);

    EllipsoidReport rep;
    rep.center = gamma * (b - t.transpose() * a);
    // Eigen sorts ascending; report descending.
    for (int k = 0; k < 3; ++k) {
        rep.semiaxes[k] = std::sqrt(std::max(0.0, es.eigenvalues()[2 - k]));
        rep.orientation.col(k) = es.eigenvectors().col(2 - k);
    }
    if (rep.orientation.determinant() < 0.0) rep.orientation.col(2) *= -1.0;
    rep.degenerate =
        map_rank(epr_map(state, Side::AliceToBob)) < 4 || rep.semiaxes.minCoeff() < 1e-12;
    return rep;
}

} // namespace steer
