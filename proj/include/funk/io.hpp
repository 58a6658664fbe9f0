#ifndef FUNK_IO_HPP
#define FUNK_IO_HPP

#include "funk/bodies.hpp"

#include <string>

namespace funk {

/// Body description JSON:
///   {"type": "polytope", "vertices": [[...], ...]}
///   {"type": "ball", "center": [...], "radius": r}
///   {"type": "ellipsoid", "center": [...], "shape": [[...], ...]}
/// where `shape` is the matrix A of {x : (x - c)^T A (x - c) <= 1}.
/// Malformed text raises ParseError; degenerate bodies raise InvariantError.
ConvexBody parse_body(const std::string& text);
ConvexBody load_body(const std::string& path);

/// Inverse of parse_body for polytopes and ellipsoids.
std::string body_to_json(const ConvexBody& body);

} // namespace funk

#endif // FUNK_IO_HPP
