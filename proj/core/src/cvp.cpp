#include "latsec/cvp.hpp"

#include "latsec/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <optional>

namespace latsec {

namespace {

constexpr double kTieTol = 1e-9;

bool lex_less(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
}

struct SearchContext {
    const Matrix& r;          // upper Cholesky factor of the Gram matrix
    const Vector& real_coords; // real solution of u M = target
    int n;
};

// Depth-first sphere search over integer coordinates, visiting candidates per
// level in a zig-zag around the level's real center so that early solutions
// are near-optimal. `visit` is called with the complete coordinate vector and
// its exact squared distance; it returns the (possibly shrunken) squared
// search radius.
template <typename Visit>
void sphere_search(const SearchContext& ctx, IntVector& u, Visit&& visit,
                   int level, double used, double& radius_ref) {
    double partial = 0.0;
    for (int j = level + 1; j < ctx.n; ++j) {
        partial += ctx.r(level, j) *
                   (static_cast<double>(u[j]) - ctx.real_coords[j]);
    }
    const double rll = ctx.r(level, level);
    const double center = ctx.real_coords[level] - partial / rll;
    const auto base = static_cast<std::int64_t>(std::llround(center));
    for (std::int64_t step = 0;; ++step) {
        bool any_inside = false;
        for (int sign = 0; sign < (step == 0 ? 1 : 2); ++sign) {
            const std::int64_t cand = (sign == 0) ? base + step : base - step;
            const double comp = rll * (static_cast<double>(cand) - center);
            const double used_next = used + comp * comp;
            if (used_next > radius_ref + kTieTol) {
                continue;
            }
            any_inside = true;
            u[level] = cand;
            if (level == 0) {
                radius_ref = std::min(radius_ref, visit(u, used_next));
            } else {
                sphere_search(ctx, u, visit, level - 1, used_next, radius_ref);
            }
        }
        // contributions grow with |cand - center|, so once both directions
        // fall outside the budget every later step does too
        if (!any_inside) {
            break;
        }
    }
}

SearchContext make_context(const Lattice& lattice, const Vector& target,
                           Matrix& r_storage, Vector& coords_storage) {
    if (!lattice.is_full_rank_square()) {
        throw InvalidArgument("closest-point search requires a full-rank square generator");
    }
    if (target.size() != lattice.ambient_dim()) {
        throw InvalidArgument("target dimension does not match lattice");
    }
    r_storage = lattice.gram().llt().matrixU();
    coords_storage = lattice.generator().transpose().partialPivLu().solve(target);
    return SearchContext{r_storage, coords_storage, lattice.rank()};
}

}  // namespace

LatticePoint closest_point(const Lattice& lattice, const Vector& target) {
    Matrix r;
    Vector real_coords;
    const SearchContext ctx = make_context(lattice, target, r, real_coords);
    const int n = ctx.n;

    // Babai rounding gives the initial radius and a guaranteed candidate.
    IntVector babai(n);
    for (int i = 0; i < n; ++i) {
        babai[i] = std::llround(real_coords[i]);
    }
    const Vector babai_point = lattice.point_from_coords(babai);
    double best_dist = (babai_point - target).squaredNorm();
    IntVector best = babai;

    double radius = best_dist;
    IntVector u = IntVector::Zero(n);
    sphere_search(
        ctx, u,
        [&](const IntVector& cand, double dist) {
            if (dist < best_dist - kTieTol) {
                best_dist = dist;
                best = cand;
            } else if (dist <= best_dist + kTieTol) {
                // tie within tolerance: keep the lexicographically smaller coords
                if (lex_less(cand, best)) {
                    best = cand;
                }
                best_dist = std::min(best_dist, dist);
            }
            return best_dist;  // radius_ref gets best_dist; ties stay reachable via +kTieTol
        },
        n - 1, 0.0, radius);

    return LatticePoint{lattice.point_from_coords(best), best, best_dist};
}

std::vector<LatticePoint> points_within(const Lattice& lattice, const Vector& target,
                                        double radius_sq,
                                        const EnumerationLimits& limits) {
    if (radius_sq < 0.0) {
        throw InvalidArgument("search radius must be nonnegative");
    }
    Matrix r;
    Vector real_coords;
    const SearchContext ctx = make_context(lattice, target, r, real_coords);

    std::vector<LatticePoint> found;
    double radius = radius_sq;
    IntVector u = IntVector::Zero(ctx.n);
    sphere_search(
        ctx, u,
        [&](const IntVector& cand, double dist) {
            if (dist <= radius_sq + kTieTol) {
                if (static_cast<std::int64_t>(found.size()) >= limits.max_points) {
                    throw ResourceLimit("ball search exceeded the cap of " +
                                        std::to_string(limits.max_points) + " points");
                }
                found.push_back(
                    LatticePoint{lattice.point_from_coords(cand), cand, dist});
            }
            return radius_sq;  // fixed radius, no shrinking
        },
        ctx.n - 1, 0.0, radius);
    return found;
}

}  // namespace latsec
