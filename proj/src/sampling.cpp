#include "steer/sampling.hpp"

#include <cmath>

namespace steer {

double radical_inverse(std::uint64_t index, unsigned base) {
    double inv = 1.0 / base;
    double scale = inv;
    double value = 0.0;
    while (index > 0) {
        value += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= inv;
    }
    return value;
}

namespace {

// Box-Muller on a pair of (0,1) values; clamps away from 0 for the log.
std::pair<double, double> gaussian_pair(double u1, double u2) {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    u1 = std::max(u1, 1e-300);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

} // namespace

std::vector<Eigen::Vector4d> low_discrepancy_directions_4d(int count) {
    std::vector<Eigen::Vector4d> dirs;
    dirs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const auto idx = static_cast<std::uint64_t>(i) + 1;
        const auto [z0, z1] =
            gaussian_pair(radical_inverse(idx, 2), radical_inverse(idx, 3));
        const auto [z2, z3] =
            gaussian_pair(radical_inverse(idx, 5), radical_inverse(idx, 7));
        Eigen::Vector4d v(z0, z1, z2, z3);
        const double n = v.norm();
        if (n < 1e-12) continue;
        dirs.push_back(v / n);
    }
    return dirs;
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int count) {
    constexpr double kGolden = 2.399963229728653; // 2*pi*(2 - golden ratio)
    std::vector<Eigen::Vector3d> dirs;
    dirs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = kGolden * i;
        dirs.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
    return dirs;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo,
                               double hi, int iterations) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace steer
