#pragma once

#include "latsec/lattice.hpp"

#include <cstdint>
#include <vector>

namespace latsec {

struct SpectrumEntry {
    double norm_sq;
    std::int64_t count;
};

/// Multiset "squared norm -> number of lattice vectors", exhaustive for all
/// vectors with squared norm <= radius_sq. Entries are sorted strictly
/// increasing, the first entry is (0, 1), and every nonzero count is even
/// (x and -x are enumerated separately). Squared norms closer than 1e-9 are
/// grouped into one entry; norms of integral lattices are exact integers, the
/// tolerance only absorbs rounding in scaled lattices.
class NormSpectrum {
public:
    NormSpectrum(std::vector<SpectrumEntry> entries, double radius_sq);

    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    double radius_sq() const { return radius_sq_; }

    std::int64_t total_points() const;
    /// Smallest nonzero squared norm; throws InvalidArgument if the spectrum
    /// holds only the origin.
    double min_nonzero_norm_sq() const;
    /// Count at the given squared norm (0 if absent), matched within tol.
    std::int64_t count_at(double norm_sq, double tol = 1e-9) const;

private:
    std::vector<SpectrumEntry> entries_;
    double radius_sq_;
};

struct EnumerationLimits {
    /// Refuse enumerations whose predicted or actual point count exceeds this.
    std::int64_t max_points = 10'000'000;
};

/// Exhaustively enumerates every lattice vector with squared norm <=
/// radius_sq, grouped by squared norm. Fincke-Pohst bounded search on the
/// Cholesky factor of the Gram matrix; works for m <= n. Throws ResourceLimit
/// when the volume-heuristic prediction or the running point count exceeds
/// limits.max_points.
NormSpectrum enumerate_points(const Lattice& lattice, double radius_sq,
                              const EnumerationLimits& limits = {});

/// Length of the shortest nonzero vector, via enumeration with the radius
/// seeded from the shortest basis row (doubled adaptively if needed).
double min_distance(const Lattice& lattice, const EnumerationLimits& limits = {});

/// Number of vectors of minimal nonzero length.
std::int64_t kissing_number(const Lattice& lattice, const EnumerationLimits& limits = {});

/// Hermite parameter d_min^2 / det(G G^T)^{1/n}; scale invariant. Requires a
/// full-rank square generator, otherwise throws InvalidArgument.
double hermite_parameter(const Lattice& lattice, const EnumerationLimits& limits = {});

}  // namespace latsec
