#ifndef STEER_SAMPLING_HPP
#define STEER_SAMPLING_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace steer {

// Radical-inverse (van der Corput) value of index in the given base.
double radical_inverse(std::uint64_t index, unsigned base);

// Deterministic low-discrepancy directions on the unit 3-sphere in R^4
// (Halton points pushed through Box-Muller and normalized).
std::vector<Eigen::Vector4d> low_discrepancy_directions_4d(int count);

// Fibonacci lattice on the unit 2-sphere.
std::vector<Eigen::Vector3d> fibonacci_sphere(int count);

// Golden-section minimization of f on [lo, hi]; returns the argmin.
double golden_section_minimize(const std::function<double(double)>& f, double lo,
                               double hi, int iterations = 60);

} // namespace steer

#endif
