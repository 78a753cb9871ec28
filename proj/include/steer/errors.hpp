#ifndef STEER_ERRORS_HPP
#define STEER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace steer {

// Input failed a documented invariant (bad matrix, bad parameters, parse failure).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A geometric construction is infeasible (cones do not intersect, projection undefined).
class geometry_error : public std::runtime_error {
public:
    explicit geometry_error(const std::string& what) : std::runtime_error(what) {}
};

// File / stream failure.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace steer

#endif
