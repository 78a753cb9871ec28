#include "steer/pauli.hpp"

#include <complex>

namespace steer {

using std::complex;

std::pair<double, double> eigenvalues_of(const PauliVector& v) {
    if (!v.finite()) throw validation_error("eigenvalues_of: non-finite coordinates");
    const double r = v.bloch_norm();
    return {0.5 * (v[0] - r), 0.5 * (v[0] + r)};
}

ConeMembership classify_cone(const PauliVector& v, double tol) {
    if (!v.finite()) throw validation_error("classify_cone: non-finite coordinates");
    if (tol < 0.0) throw validation_error("classify_cone: negative tolerance");
    const auto forward = [tol](const PauliVector& u) {
        const double r2 = u.bloch().squaredNorm();
        return u[0] >= -tol && u[0] * u[0] >= r2 - tol;
    };
    ConeMembership cm;
    cm.in_forward_cone = forward(v);
    cm.in_backward_cone = forward(PauliVector::identity() - v);
    const auto [lo, hi] = eigenvalues_of(v);
    cm.margin = std::min(lo, 1.0 - hi);
    return cm;
}

double outcome_support(const PauliVector& c) {
    const auto [lo, hi] = eigenvalues_of(c);
    return std::max(0.0, lo) + std::max(0.0, hi);
}

PauliVector reflect_through(const PauliVector& v, const PauliVector& center) {
    return 2.0 * center - v;
}

const Eigen::Matrix2cd& pauli_matrix(int i) {
    static const std::array<Eigen::Matrix2cd, 4> sigma = [] {
        std::array<Eigen::Matrix2cd, 4> s;
        const complex<double> I(0.0, 1.0);
        s[0] << 1, 0, 0, 1;
        s[1] << 0, 1, 1, 0;
        s[2] << 0, -I, I, 0;
        s[3] << 1, 0, 0, -1;
        return s;
    }();
    return sigma[static_cast<std::size_t>(i)];
}

Eigen::Matrix2cd to_matrix(const PauliVector& v) {
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 4; ++i) a += 0.5 * v[i] * pauli_matrix(i);
    return a;
}

PauliVector from_matrix(const Eigen::Matrix2cd& a) {
    PauliVector v;
    for (int i = 0; i < 4; ++i) v[i] = (a * pauli_matrix(i)).trace().real();
    return v;
}

} // namespace steer
