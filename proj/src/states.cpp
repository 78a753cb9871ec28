#include "steer/states.hpp"

#include <cmath>
#include <random>

namespace steer {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double uniform53(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Box-Muller; one value per call, caching the sine branch.
class NormalSource {
public:
    explicit NormalSource(std::mt19937_64& eng) : eng_(eng) {}
    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = std::max(uniform53(eng_), 1e-300);
        const double u2 = uniform53(eng_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

private:
    std::mt19937_64& eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

TwoQubitState build(const StateSpec& spec) {
    if (const auto* w = std::get_if<Werner>(&spec)) {
        if (w->p < 0.0 || w->p > 1.0)
            throw validation_error("Werner: p outside [0,1]");
        Eigen::Matrix4d theta = Eigen::Matrix4d::Zero();
        theta.diagonal() << 1.0, w->p, -w->p, w->p;
        return state_from_theta(theta);
    }
    if (const auto* mw = std::get_if<ModifiedWerner>(&spec)) {
        if (mw->p < 0.0 || mw->p > 1.0)
            throw validation_error("ModifiedWerner: p outside [0,1]");
        if (std::abs(mw->q) > 1.0)
            throw validation_error("ModifiedWerner: |q| outside [0,1]");
        Eigen::Matrix4d theta = Eigen::Matrix4d::Zero();
        theta.diagonal() << 1.0, mw->p, -mw->p, mw->p;
        // The q sigma_z admixture sits on Alice's side: theta(3,0) = q(1-p),
        // pinned by reduced_state(A) = (1,0,0,q(1-p)) and reduced_state(B) =
        // (1,0,0,0).
        theta(3, 0) = mw->q * (1.0 - mw->p);
        return state_from_theta(theta);
    }
    if (std::holds_alternative<BellPhiPlus>(spec)) {
        Eigen::Matrix4d theta = Eigen::Matrix4d::Zero();
        theta.diagonal() << 1.0, 1.0, -1.0, 1.0;
        return state_from_theta(theta);
    }
    if (const auto* pr = std::get_if<Product>(&spec)) {
        if (pr->bloch_a.norm() > 1.0 + 1e-12 || pr->bloch_b.norm() > 1.0 + 1e-12)
            throw validation_error("Product: Bloch vector norm exceeds 1");
        Eigen::Vector4d a(1.0, pr->bloch_a[0], pr->bloch_a[1], pr->bloch_a[2]);
        Eigen::Vector4d b(1.0, pr->bloch_b[0], pr->bloch_b[1], pr->bloch_b[2]);
        return state_from_theta(a * b.transpose());
    }
    return random_state(std::get<Random>(spec).seed);
}

TwoQubitState random_state(std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    NormalSource normal(eng);
    Eigen::Matrix4cd g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double re = normal();
            const double im = normal();
            g(i, j) = std::complex<double>(re, im);
        }
    Eigen::Matrix4cd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return theta_from_density(rho);
}

PauliVector random_outcome(std::uint64_t seed) {
    std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ull);
    NormalSource normal(eng);
    Eigen::Vector3d dir(normal(), normal(), normal());
    if (dir.norm() < 1e-12) dir = Eigen::Vector3d::UnitZ();
    dir.normalize();
    const double x0 = 2.0 * uniform53(eng);
    const double r = uniform53(eng) * std::min(x0, 2.0 - x0);
    return {x0, r * dir[0], r * dir[1], r * dir[2]};
}

} // namespace steer
