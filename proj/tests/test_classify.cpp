#include "doctest.h"

#include "steer/classify.hpp"
#include "steer/sampling.hpp"
#include "steer/states.hpp"
#include "test_util.hpp"

using namespace steer;
using steer::test::random_double_cone_point;
using steer::test::random_direction;

namespace {

bool witness_separates(const EprMap& map, const Ansatz& ansatz, const PauliVector& w,
                       double tol) {
    return steering_support(map, w) > box_support(ansatz, w) + tol;
}

PauliVector reconstruct_from_rows(const Ansatz& ansatz, const StochasticMatrix& rows,
                                  Eigen::Index row) {
    std::vector<double> beta;
    for (Eigen::Index j = 0; j < rows.entries.cols(); ++j)
        beta.push_back(rows.entries(row, j));
    return lhs_reconstruct(ansatz, LhsResponse{beta});
}

} // namespace

TEST_CASE("check_packing: Werner against the uniform box") {
    const Ansatz uniform{UniformAnsatz{}};

    const PackingCertificate inside =
        check_packing(epr_map(build(Werner{0.45})), uniform, 1e-9, 2048);
    CHECK(inside.contained);
    CHECK(inside.slack > 0.0);
    CHECK_FALSE(inside.witness.has_value());
    CHECK_FALSE(inside.sampled_fallback);

    const EprMap steered = epr_map(build(Werner{0.6}));
    const PackingCertificate outside = check_packing(steered, uniform, 1e-9, 2048);
    CHECK_FALSE(outside.contained);
    REQUIRE(outside.witness.has_value());
    CHECK(witness_separates(steered, uniform, *outside.witness, 1e-12));
}

TEST_CASE("check_packing: modified Werner escapes the uniform box") {
    const EprMap map = epr_map(build(ModifiedWerner{0.4, 0.8}));
    const PackingCertificate cert = check_packing(map, Ansatz{UniformAnsatz{}}, 1e-9, 2048);
    CHECK_FALSE(cert.contained);
    REQUIRE(cert.witness.has_value());
    CHECK(witness_separates(map, Ansatz{UniformAnsatz{}}, *cert.witness, 1e-12));
}

TEST_CASE("check_packing enforces the vertex precondition") {
    const EprMap map = epr_map(build(Product{{0, 0, 0}, {0, 0, 0.4}}));
    // reduced B has a z bias, the uniform box vertex does not
    CHECK_THROWS_AS(check_packing(map, Ansatz{UniformAnsatz{}}, 1e-9, 512), validation_error);
}

TEST_CASE("check_packing: finite box certificate of a separable Werner") {
    const TwoQubitState state = build(Werner{0.3});
    const auto cert = find_box_certificate(state);
    REQUIRE(cert.has_value());
    const PackingCertificate packing = check_packing(epr_map(state), Ansatz{*cert}, 1e-8);
    CHECK(packing.contained);
    CHECK_FALSE(packing.sampled_fallback);
    CHECK((principal_vertex(Ansatz{*cert}).vec() - Eigen::Vector4d(1, 0, 0, 0))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
}

TEST_CASE("is_ppt: frozen eigenvalues") {
    CHECK(is_ppt(build(Werner{1.0 / 3.0})).second == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(is_ppt(build(BellPhiPlus{})).second == doctest::Approx(-0.5));
    CHECK(is_ppt(build(Werner{0.7})).second == doctest::Approx((1.0 - 3.0 * 0.7) / 4.0));
    CHECK(is_ppt(build(Product{{0.3, 0, 0}, {0, 0.2, 0}})).first);
}

TEST_CASE("decide_separable on the Werner family") {
    const SeparabilityDecision sep = decide_separable(build(Werner{0.3}));
    CHECK(sep.separable);
    REQUIRE(sep.certificate.has_value());
    CHECK(sep.certificate->generators.size() == 4);

    const SeparabilityDecision ent = decide_separable(build(Werner{0.34}));
    CHECK_FALSE(ent.separable);
    CHECK_FALSE(ent.certificate.has_value());
    CHECK(ent.ppt_min_eigenvalue < 0.0);
}

TEST_CASE("decide_separable on degenerate maps") {
    const SeparabilityDecision prod = decide_separable(build(Product{{0.2, 0, 0}, {0, 0, 0.5}}));
    CHECK(prod.separable);
    CHECK(prod.certificate.has_value());

    const SeparabilityDecision mixed = decide_separable(build(Werner{0.0}));
    CHECK(mixed.separable);
    CHECK(mixed.certificate.has_value());
}

TEST_CASE("certificates agree with the PPT oracle on random states") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const TwoQubitState state = random_state(seed);
        const bool ppt = is_ppt(state).first;
        const auto cert = find_box_certificate(state);
        if (cert) {
            CHECK(ppt); // a certificate for an entangled state would be unsound
            const PackingCertificate packing =
                check_packing(epr_map(state), Ansatz{*cert}, 1e-8);
            CHECK(packing.contained);
        }
        const SeparabilityDecision decision = decide_separable(state);
        CHECK(decision.separable == ppt);
    }
}

TEST_CASE("packing slack decreases along the Werner family") {
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 20; ++i) {
        const double p = i / 20.0;
        const PackingCertificate cert =
            check_packing(epr_map(build(Werner{p})), Ansatz{UniformAnsatz{}}, 1e-9, 1024);
        CHECK(cert.slack <= previous + 1e-9);
        previous = cert.slack;
    }
}

TEST_CASE("lhs_response: uniform cap inversion") {
    const Ansatz uniform{UniformAnsatz{}};
    const EprMap map = epr_map(build(Werner{0.4}));

    const PauliVector e(1, 0, 0, 1); // projector on +z
    const LhsResponse resp = lhs_response(uniform, map, e);
    const auto* cap = std::get_if<CapResponse>(&resp);
    REQUIRE(cap != nullptr);
    CHECK(cap->scale >= 0.0);
    CHECK(cap->scale <= 1.0);
    const PauliVector back = lhs_reconstruct(uniform, resp);
    const PauliVector image = apply_map(map, e);
    CHECK((back.vec() - image.vec()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(image[0] == doctest::Approx(0.5));

    // identity and null effects
    const PauliVector full = lhs_reconstruct(uniform, lhs_response(uniform, map, PauliVector::identity()));
    CHECK((full.vec() - Eigen::Vector4d(1, 0, 0, 0)).cwiseAbs().maxCoeff() < 1e-8);
    const PauliVector none = lhs_reconstruct(uniform, lhs_response(uniform, map, PauliVector::zero()));
    CHECK(none.vec().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lhs_response rejects outcomes outside the box") {
    const EprMap steered = epr_map(build(Werner{0.6}));
    CHECK_THROWS_AS(lhs_response(Ansatz{UniformAnsatz{}}, steered, PauliVector(1, 0, 0, 1)),
                    geometry_error);
    CHECK_THROWS_AS(lhs_response(Ansatz{UniformAnsatz{}}, steered, PauliVector(1, 0, 0, 2)),
                    validation_error); // not an effect at all
}

TEST_CASE("lhs_response round trip on random effects") {
    const Ansatz uniform{UniformAnsatz{}};
    const EprMap map = epr_map(build(Werner{0.45}));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const PauliVector e = random_outcome(seed);
        const LhsResponse resp = lhs_response(uniform, map, e);
        const PauliVector back = lhs_reconstruct(uniform, resp);
        const PauliVector image = apply_map(map, e);
        CHECK((back.vec() - image.vec()).cwiseAbs().maxCoeff() < 1e-8);
        if (const auto* cap = std::get_if<CapResponse>(&resp)) {
            CHECK(cap->scale >= -1e-12);
            CHECK(cap->scale <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("lhs_response on a finite certificate box") {
    const TwoQubitState state = build(Werner{0.3});
    const auto cert = find_box_certificate(state);
    REQUIRE(cert.has_value());
    const Ansatz box{*cert};
    const EprMap map = epr_map(state);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PauliVector e = random_outcome(seed + 1000);
        const LhsResponse resp = lhs_response(box, map, e);
        const auto* beta = std::get_if<std::vector<double>>(&resp);
        REQUIRE(beta != nullptr);
        for (double b : *beta) {
            CHECK(b >= -1e-12);
            CHECK(b <= 1.0 + 1e-12);
        }
        const PauliVector back = lhs_reconstruct(box, resp);
        CHECK((back.vec() - apply_map(map, e).vec()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("binary_lhs_rows build a column-stochastic response") {
    const TwoQubitState state = build(Werner{0.3});
    const auto cert = find_box_certificate(state);
    REQUIRE(cert.has_value());
    const Ansatz box{*cert};
    const EprMap map = epr_map(state);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PauliVector e1 = random_outcome(seed + 77);
        const StochasticMatrix rows = binary_lhs_rows(box, map, e1);
        CHECK_NOTHROW(validate(rows));
        // Row 0 realizes e1', row 1 the complementary effect.
        const PauliVector r0 = reconstruct_from_rows(box, rows, 0);
        CHECK((r0.vec() - apply_map(map, e1).vec()).cwiseAbs().maxCoeff() < 1e-8);
        const PauliVector r1 = reconstruct_from_rows(box, rows, 1);
        const PauliVector complement =
            apply_map(map, PauliVector::identity() - e1);
        CHECK((r1.vec() - complement.vec()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("stochastic matrix validation and composition") {
    StochasticMatrix bad;
    bad.entries.resize(2, 2);
    bad.entries << 0.5, 0.7, 0.6, 0.3;
    CHECK_THROWS_AS(validate(bad), validation_error);

    StochasticMatrix h;
    h.entries.resize(2, 2);
    h.entries << 1.0, 0.25, 0.0, 0.75;
    StochasticMatrix k;
    k.entries.resize(2, 3);
    k.entries << 0.2, 0.5, 1.0, 0.8, 0.5, 0.0;
    const StochasticMatrix g = compose_stochastic(h, k);
    CHECK(g.entries(0, 0) == doctest::Approx(1.0 * 0.2 + 0.25 * 0.8));
    CHECK((g.entries.colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);

    StochasticMatrix identity2;
    identity2.entries = Eigen::Matrix2d::Identity();
    const StochasticMatrix same = compose_stochastic(identity2, k);
    CHECK((same.entries - k.entries).cwiseAbs().maxCoeff() < 1e-15);

    StochasticMatrix wide;
    wide.entries.resize(3, 2);
    wide.entries << 0.2, 0.1, 0.3, 0.4, 0.5, 0.5;
    CHECK_THROWS_AS(compose_stochastic(h, wide), validation_error);
}

TEST_CASE("binary POVM spectral decomposition") {
    const BinaryPovmSpectral half = binary_povm_from_spectral(0.5 * PauliVector::identity());
    CHECK(half.h.entries(0, 0) == doctest::Approx(0.5));
    CHECK(half.h.entries(0, 1) == doctest::Approx(0.5));
    CHECK((half.p1.vec() - Eigen::Vector4d(1, 0, 0, -1)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((half.p2.vec() - Eigen::Vector4d(1, 0, 0, 1)).cwiseAbs().maxCoeff() < 1e-12);

    const BinaryPovmSpectral biased = binary_povm_from_spectral(PauliVector(0.9, 0, 0, 0.5));
    CHECK(biased.h.entries(0, 0) == doctest::Approx(0.2));
    CHECK(biased.h.entries(0, 1) == doctest::Approx(0.7));
    CHECK((biased.p2.vec() - Eigen::Vector4d(1, 0, 0, 1)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(binary_povm_from_spectral(PauliVector(1, 0, 0, 2)), validation_error);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const PauliVector e1 = random_outcome(seed + 31);
        const BinaryPovmSpectral dec = binary_povm_from_spectral(e1);
        CHECK_NOTHROW(validate(dec.h));
        CHECK(dec.h.entries(0, 0) <= dec.h.entries(0, 1) + 1e-12); // ascending
        const PauliVector rebuilt =
            dec.h.entries(0, 0) * dec.p1 + dec.h.entries(0, 1) * dec.p2;
        CHECK((rebuilt.vec() - e1.vec()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((dec.p1 + dec.p2).vec().isApprox(Eigen::Vector4d(2, 0, 0, 0), 1e-12));
    }
}

TEST_CASE("threshold_scan basics") {
    const double t = threshold_scan([](double x) { return x <= 0.3; }, 0.0, 1.0, 1e-9);
    CHECK(t == doctest::Approx(0.3).epsilon(1e-8));
    CHECK_THROWS_AS(threshold_scan([](double) { return true; }, 0.0, 1.0, 1e-6),
                    validation_error);
    CHECK_THROWS_AS(threshold_scan([](double x) { return x < 0.5; }, 1.0, 0.0, 1e-6),
                    validation_error);
    CHECK_THROWS_AS(threshold_scan([](double x) { return x < 0.5; }, 0.0, 1.0, 0.0),
                    validation_error);
}
