#ifndef STEER_PAULI_HPP
#define STEER_PAULI_HPP

#include <array>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "steer/errors.hpp"

namespace steer {

// A hermitian qubit operator A = 1/2 sum_i x[i] sigma_i in Pauli coordinates
// x[i] = Tr(A sigma_i).  The Hilbert-Schmidt inner product <A,B> = Tr(A B)
// becomes 1/2 sum_i a[i] b[i] in these coordinates.
struct PauliVector {
    std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};

    PauliVector() = default;
    PauliVector(double x0, double x1, double x2, double x3) : x{x0, x1, x2, x3} {}
    explicit PauliVector(const Eigen::Vector4d& v) : x{v[0], v[1], v[2], v[3]} {}

    double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }

    Eigen::Vector4d vec() const { return {x[0], x[1], x[2], x[3]}; }
    Eigen::Vector3d bloch() const { return {x[1], x[2], x[3]}; }
    double bloch_norm() const { return bloch().norm(); }

    bool finite() const {
        return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]) &&
               std::isfinite(x[3]);
    }

    static PauliVector identity() { return {2.0, 0.0, 0.0, 0.0}; }
    static PauliVector zero() { return {0.0, 0.0, 0.0, 0.0}; }

    friend PauliVector operator+(const PauliVector& a, const PauliVector& b) {
        return {a.x[0] + b.x[0], a.x[1] + b.x[1], a.x[2] + b.x[2], a.x[3] + b.x[3]};
    }
    friend PauliVector operator-(const PauliVector& a, const PauliVector& b) {
        return {a.x[0] - b.x[0], a.x[1] - b.x[1], a.x[2] - b.x[2], a.x[3] - b.x[3]};
    }
    friend PauliVector operator*(double s, const PauliVector& a) {
        return {s * a.x[0], s * a.x[1], s * a.x[2], s * a.x[3]};
    }
    friend PauliVector operator-(const PauliVector& a) { return -1.0 * a; }
};

// Hilbert-Schmidt inner product in coordinates.
inline double hs_inner(const PauliVector& a, const PauliVector& b) {
    return 0.5 * (a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]);
}

// Membership of an operator in the forward light-cone at O (positivity), the
// backward light-cone at the identity, and thus the double-cone of
// measurement outcomes.  margin = min(lambda_minus, 1 - lambda_plus); it is
// negative outside the double-cone.
struct ConeMembership {
    bool in_forward_cone = false;
    bool in_backward_cone = false;
    double margin = 0.0;

    bool in_double_cone() const { return in_forward_cone && in_backward_cone; }
};

// Default tolerance for cone membership tests.
inline constexpr double kConeTol = 1e-9;

// Eigenvalues of the operator with coordinates v, sorted ascending:
// ((x0 - |x|)/2, (x0 + |x|)/2).
std::pair<double, double> eigenvalues_of(const PauliVector& v);

ConeMembership classify_cone(const PauliVector& v, double tol = kConeTol);

// Support function of the double-cone M = {M | 0 <= M <= I} at direction c,
// under the Hilbert-Schmidt pairing: the sum of positive eigenvalues of c.
double outcome_support(const PauliVector& c);

// Point reflection: 2*center - v.
PauliVector reflect_through(const PauliVector& v, const PauliVector& center);

// 2x2 hermitian matrix of the operator and its inverse.
Eigen::Matrix2cd to_matrix(const PauliVector& v);
PauliVector from_matrix(const Eigen::Matrix2cd& a);

// The four Pauli matrices sigma_0..sigma_3.
const Eigen::Matrix2cd& pauli_matrix(int i);

} // namespace steer

#endif
