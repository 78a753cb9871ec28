#ifndef STEER_STATES_HPP
#define STEER_STATES_HPP

#include <cstdint>
#include <variant>

#include <Eigen/Dense>

#include "steer/epr.hpp"

namespace steer {

// Parametric state families used throughout the test and CLI surfaces.
struct Werner {
    double p = 0.0;
};
struct ModifiedWerner {
    double p = 0.0;
    double q = 0.0;
};
struct BellPhiPlus {};
struct Product {
    Eigen::Vector3d bloch_a = Eigen::Vector3d::Zero();
    Eigen::Vector3d bloch_b = Eigen::Vector3d::Zero();
};
struct Random {
    std::uint64_t seed = 0;
};

using StateSpec = std::variant<Werner, ModifiedWerner, BellPhiPlus, Product, Random>;

TwoQubitState build(const StateSpec& spec);

// Seeded random full-rank state: rho = G G^dagger / Tr(G G^dagger) with G a
// complex 4x4 matrix of standard normals.  Deterministic: mt19937_64 seeded
// directly, normals by Box-Muller on 53-bit uniforms (documented, bit-stable).
TwoQubitState random_state(std::uint64_t seed);

// Seeded random element of the double-cone of measurement outcomes M
// (useful as a random POVM effect; I - E is the complementary effect).
PauliVector random_outcome(std::uint64_t seed);

} // namespace steer

#endif
