#ifndef FUNK_TYPES_HPP
#define FUNK_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace funk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Error taxonomy. The CLI maps each class onto a distinct exit status.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input (body files, flags).
struct ParseError : Error {
    using Error::Error;
};

/// A structural invariant does not hold (degenerate polytope, non-PD form,
/// incompatible method, point not interior, ...).
struct InvariantError : Error {
    using Error::Error;
};

/// G is not strictly inside K with the required margin.
struct ContainmentError : Error {
    using Error::Error;
};

/// A numerical guard tripped (equatorial gnomonic point, divergent weight).
struct NumericalGuardError : Error {
    using Error::Error;
};

/// Volume of the d-dimensional Euclidean unit ball.
double unit_ball_volume(int d);

/// Surface measure of the unit sphere S^{d-1} in R^d.
double sphere_area(int d);

inline constexpr double pi = std::numbers::pi;

} // namespace funk

#endif // FUNK_TYPES_HPP
