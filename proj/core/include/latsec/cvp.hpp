#pragma once

#include "latsec/lattice.hpp"
#include "latsec/spectrum.hpp"

#include <vector>

namespace latsec {

struct LatticePoint {
    Vector point;      // the lattice point itself
    IntVector coords;  // its integer coordinates in the generator basis
    double dist_sq;    // squared distance to the query target
};

/// Exact closest lattice point to `target` (full-rank square generator only).
/// Sphere decoder with the search radius initialized from the rounded
/// coordinates of the target (Babai point). Among points whose squared
/// distances to the target differ by at most 1e-9, returns the one with
/// lexicographically smallest integer coordinate vector.
LatticePoint closest_point(const Lattice& lattice, const Vector& target);

/// All lattice points p with ||p - target||^2 <= radius_sq, unsorted.
/// Same search core as closest_point without radius shrinking; ResourceLimit
/// when more than limits.max_points points fall inside the ball.
std::vector<LatticePoint> points_within(const Lattice& lattice, const Vector& target,
                                        double radius_sq,
                                        const EnumerationLimits& limits = {});

}  // namespace latsec
