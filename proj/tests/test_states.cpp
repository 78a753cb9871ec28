#include "doctest.h"

#include "steer/classify.hpp"
#include "steer/states.hpp"

using namespace steer;

namespace {

Eigen::Matrix4d werner_theta(double p) {
    Eigen::Matrix4d theta = Eigen::Matrix4d::Zero();
    theta.diagonal() << 1.0, p, -p, p;
    return theta;
}

// Partial trace over the other side, straight from the density matrix.
PauliVector reduced_oracle(const Eigen::Matrix4d& theta, Side side) {
    const Eigen::Matrix4cd rho = reconstruct_density(theta);
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (side == Side::AliceToBob)
                    r(i, j) += rho(2 * i + k, 2 * j + k); // trace out B
                else
                    r(i, j) += rho(2 * k + i, 2 * k + j); // trace out A
            }
    return from_matrix(r);
}

} // namespace

TEST_CASE("werner family") {
    for (double p : {0.0, 0.25, 0.5, 1.0})
        CHECK((build(Werner{p}).theta - werner_theta(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(build(Werner{1.2}), validation_error);
    CHECK_THROWS_AS(build(Werner{-0.1}), validation_error);
}

TEST_CASE("modified werner family") {
    const TwoQubitState s = build(ModifiedWerner{0.4, 0.75});
    Eigen::Matrix4d expected = werner_theta(0.4);
    expected(3, 0) = 0.75 * 0.6;
    CHECK((s.theta - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s.psd_margin >= -1e-12);

    // Alice carries the bias, Bob stays maximally mixed.
    const PauliVector a = reduced_oracle(s.theta, Side::AliceToBob);
    CHECK(a[3] == doctest::Approx(0.45));
    const PauliVector b = reduced_oracle(s.theta, Side::BobToAlice);
    CHECK(b.bloch_norm() < 1e-12);
    CHECK((reduced_state(s, Side::BobToAlice).vec() - a.vec()).cwiseAbs().maxCoeff() < 1e-10);

    CHECK_THROWS_AS(build(ModifiedWerner{0.4, 1.5}), validation_error);
    CHECK_THROWS_AS(build(ModifiedWerner{-0.1, 0.5}), validation_error);
}

TEST_CASE("bell and product families") {
    Eigen::Matrix4d bell = Eigen::Matrix4d::Zero();
    bell.diagonal() << 1.0, 1.0, -1.0, 1.0;
    CHECK((build(BellPhiPlus{}).theta - bell).cwiseAbs().maxCoeff() < 1e-12);

    const TwoQubitState prod = build(Product{{0.3, 0, 0}, {0, 0, -0.4}});
    CHECK(prod.theta(1, 0) == doctest::Approx(0.3));
    CHECK(prod.theta(0, 3) == doctest::Approx(-0.4));
    CHECK(prod.theta(1, 3) == doctest::Approx(-0.12));
    CHECK(prod.theta(2, 2) == doctest::Approx(0.0));

    CHECK_THROWS_AS(build(Product{{2, 0, 0}, {0, 0, 0}}), validation_error);
}

TEST_CASE("random states are deterministic and valid") {
    const TwoQubitState a = random_state(42);
    const TwoQubitState b = random_state(42);
    CHECK((a.theta - b.theta).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.theta - random_state(43).theta).cwiseAbs().maxCoeff() > 1e-6);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const TwoQubitState s = random_state(seed);
        CHECK(s.theta(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.psd_margin >= -1e-10);
    }
}

TEST_CASE("random states hit both separability classes") {
    int ppt_count = 0;
    const int total = 500;
    for (std::uint64_t seed = 0; seed < total; ++seed)
        if (is_ppt(random_state(seed)).first) ++ppt_count;
    // Regression bounds for the Ginibre ensemble at this seed base.
    CHECK(ppt_count >= total / 10);
    CHECK(total - ppt_count >= total / 10);
}

TEST_CASE("random outcomes live in the double cone") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const PauliVector e = random_outcome(seed);
        CHECK(classify_cone(e).in_double_cone());
    }
    CHECK((random_outcome(5).vec() - random_outcome(5).vec()).cwiseAbs().maxCoeff() == 0.0);
}
