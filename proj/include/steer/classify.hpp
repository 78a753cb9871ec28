#ifndef STEER_CLASSIFY_HPP
#define STEER_CLASSIFY_HPP

#include <functional>
#include <optional>
#include <utility>

#include "steer/ansatz.hpp"
#include "steer/epr.hpp"

namespace steer {

// Outcome of a support-function containment check of the steering outcomes
// against a polyhedral box.  slack is the minimum of
// box_support(w) - steering_support(w) over the checked directions; a witness
// direction is present exactly when containment fails.
struct PackingCertificate {
    bool contained = false;
    std::optional<PauliVector> witness;
    double slack = 0.0;
    bool sampled_fallback = false; // degenerate box, dominance only sampled
};

struct SeparabilityDecision {
    enum class Method { PPT, BoxCertificate };

    bool separable = false;
    Method method = Method::PPT;
    std::optional<FiniteAnsatz> certificate;
    double ppt_min_eigenvalue = 0.0;
};

// Column-stochastic response matrix: 0 <= entries <= 1, column sums 1.
struct StochasticMatrix {
    Eigen::MatrixXd entries;
};

void validate(const StochasticMatrix& g, double tol = 1e-9);

// Cap response of the uniform ansatz realizing a steering outcome:
// f(n) = scale * 1_{n0.n > lambda}.
struct CapResponse {
    double lambda = 1.0;
    Eigen::Vector3d n0 = Eigen::Vector3d::UnitZ();
    double scale = 0.0;
};

double cap_response_value(const CapResponse& cap, const Eigen::Vector3d& n);

// LHS weights for a finite ansatz, or a cap response for the uniform one.
using LhsResponse = std::variant<std::vector<double>, CapResponse>;

// Packability of the steering outcomes in box(ansatz).  Precondition: the box
// principal vertex must equal the image of the identity (the reduced state of
// B) to 1e-8.  Finite ansatz: exact facet-normal support dominance; spherical
// ansatz: n_directions low-discrepancy directions plus local refinement of
// the worst one.
PackingCertificate check_packing(const EprMap& map, const Ansatz& ansatz,
                                 double tol = 1e-9, int n_directions = 2048);

// Partial-transpose positivity over B: exact separability oracle for two
// qubits.  Returns (ppt, min eigenvalue of rho^{T_B}).
std::pair<bool, double> is_ppt(const TwoQubitState& state, double tol = 1e-9);

// Best-effort search for a verified 4-generator box packing the steering
// outcomes with its principal vertex at the reduced state of B: nested
// tetrahedron around the steering ellipsoid, lifted to the cone and cut by
// the reflected cone.  Every returned certificate has already passed
// check_packing at tolerance max(tol, 1e-8).
std::optional<FiniteAnsatz> find_box_certificate(const TwoQubitState& state,
                                                 double tol = 1e-8);

// Separability decision (PPT authority) with a best-effort, independently
// verified 4-generator box certificate when separable.
SeparabilityDecision decide_separable(const TwoQubitState& state, double tol = 1e-9);

// Weights (finite/discrete ansatz) or cap response (uniform) reproducing the
// steering outcome of measurement effect e.  Throws geometry_error with the
// residual when e' lies outside the box.
LhsResponse lhs_response(const Ansatz& ansatz, const EprMap& map, const PauliVector& e);

// Reconstruct the steering outcome a response represents (for verification).
PauliVector lhs_reconstruct(const Ansatz& ansatz, const LhsResponse& response);

// The (beta, 1-beta) row pair of a binary POVM for a finite/discrete ansatz.
StochasticMatrix binary_lhs_rows(const Ansatz& ansatz, const EprMap& map,
                                 const PauliVector& e1);

StochasticMatrix compose_stochastic(const StochasticMatrix& h, const StochasticMatrix& k);

// Spectral decomposition of a binary POVM effect: orthogonal projector pair
// (p1 + p2 = I) and the 2x2 column-stochastic H with
// E1 = H(0,0) p1 + H(0,1) p2.  Eigenvalues ascending: H(0,0) <= H(0,1).
struct BinaryPovmSpectral {
    StochasticMatrix h;
    PauliVector p1;
    PauliVector p2;
};

BinaryPovmSpectral binary_povm_from_spectral(const PauliVector& e1);

// Bisection for the boundary of a monotone predicate over [lo, hi];
// requires predicate(lo) != predicate(hi).
double threshold_scan(const std::function<bool(double)>& predicate, double lo,
                      double hi, double tol);

} // namespace steer

#endif
