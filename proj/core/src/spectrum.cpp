#include "latsec/spectrum.hpp"

#include "latsec/errors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace latsec {

namespace {

constexpr double kNormGroupTol = 1e-9;

// Strict weak ordering that treats squared norms within kNormGroupTol as equal.
struct FuzzyLess {
    bool operator()(double a, double b) const { return a < b - kNormGroupTol; }
};

double unit_ball_volume(int dim) {
    // pi^{m/2} / Gamma(m/2 + 1)
    return std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

}  // namespace

NormSpectrum::NormSpectrum(std::vector<SpectrumEntry> entries, double radius_sq)
    : entries_(std::move(entries)), radius_sq_(radius_sq) {}

std::int64_t NormSpectrum::total_points() const {
    std::int64_t total = 0;
    for (const auto& e : entries_) {
        total += e.count;
    }
    return total;
}

double NormSpectrum::min_nonzero_norm_sq() const {
    for (const auto& e : entries_) {
        if (e.norm_sq > kNormGroupTol) {
            return e.norm_sq;
        }
    }
    throw InvalidArgument("spectrum holds only the origin");
}

std::int64_t NormSpectrum::count_at(double norm_sq, double tol) const {
    for (const auto& e : entries_) {
        if (std::abs(e.norm_sq - norm_sq) <= tol) {
            return e.count;
        }
    }
    return 0;
}

NormSpectrum enumerate_points(const Lattice& lattice, double radius_sq,
                              const EnumerationLimits& limits) {
    if (radius_sq < 0.0) {
        throw InvalidArgument("enumeration radius must be nonnegative");
    }
    const int m = lattice.rank();

    // Volume-heuristic prediction; refuse obviously hopeless requests before
    // starting. The running counter below is the hard guard.
    const double predicted =
        unit_ball_volume(m) * std::pow(radius_sq, m / 2.0) / lattice.volume();
    if (predicted > 2.0 * static_cast<double>(limits.max_points)) {
        throw ResourceLimit("enumeration with radius_sq " + std::to_string(radius_sq) +
                            " would visit about " + std::to_string(predicted) +
                            " points, over the cap of " +
                            std::to_string(limits.max_points));
    }

    // ||u M||^2 = u G u^T = ||R u^T||^2 with G = R^T R, R upper triangular.
    const Matrix r = lattice.gram().llt().matrixU();

    std::map<double, std::int64_t, FuzzyLess> bins;
    std::int64_t visited = 0;
    IntVector u = IntVector::Zero(m);

    // Depth-first over coordinate levels m-1 .. 0; at level i the interval of
    // feasible u_i follows from the remaining budget and the partial sums of
    // R(i, j) u_j for j > i.
    auto descend = [&](auto&& self, int level, double used) -> void {
        double partial = 0.0;
        for (int j = level + 1; j < m; ++j) {
            partial += r(level, j) * static_cast<double>(u[j]);
        }
        // Rounding can push `used` a hair past the radius on boundary
        // vectors; the per-candidate check below stays the exact gate.
        const double budget = std::max(radius_sq - used, 0.0);
        if (used > radius_sq + kNormGroupTol) {
            return;
        }
        const double center = -partial / r(level, level);
        const double half_width = std::sqrt(budget) / r(level, level);
        const auto lo = static_cast<std::int64_t>(std::ceil(center - half_width - 1e-12));
        const auto hi = static_cast<std::int64_t>(std::floor(center + half_width + 1e-12));
        for (std::int64_t t = lo; t <= hi; ++t) {
            const double comp = r(level, level) * (static_cast<double>(t) - center);
            const double used_next = used + comp * comp;
            if (used_next > radius_sq + kNormGroupTol) {
                continue;
            }
            u[level] = t;
            if (level == 0) {
                if (++visited > limits.max_points) {
                    throw ResourceLimit("enumeration exceeded the cap of " +
                                        std::to_string(limits.max_points) + " points");
                }
                bins[std::min(used_next, radius_sq)] += 1;
            } else {
                self(self, level - 1, used_next);
            }
        }
        u[level] = 0;
    };
    descend(descend, m - 1, 0.0);

    std::vector<SpectrumEntry> entries;
    entries.reserve(bins.size());
    for (const auto& [norm_sq, count] : bins) {
        entries.push_back({norm_sq < kNormGroupTol ? 0.0 : norm_sq, count});
    }
    return NormSpectrum(std::move(entries), radius_sq);
}

double min_distance(const Lattice& lattice, const EnumerationLimits& limits) {
    double radius_sq = lattice.generator().rowwise().squaredNorm().minCoeff();
    for (;;) {
        const NormSpectrum spectrum = enumerate_points(lattice, radius_sq, limits);
        for (const auto& e : spectrum.entries()) {
            if (e.norm_sq > kNormGroupTol) {
                return std::sqrt(e.norm_sq);
            }
        }
        radius_sq *= 2.0;  // unreachable for a valid basis row, kept as a guard
    }
}

std::int64_t kissing_number(const Lattice& lattice, const EnumerationLimits& limits) {
    const double d = min_distance(lattice, limits);
    const double d_sq = d * d;
    const NormSpectrum spectrum = enumerate_points(lattice, d_sq + kNormGroupTol, limits);
    return spectrum.count_at(d_sq);
}

double hermite_parameter(const Lattice& lattice, const EnumerationLimits& limits) {
    if (!lattice.is_full_rank_square()) {
        throw InvalidArgument("Hermite parameter requires a full-rank square generator");
    }
    const double d = min_distance(lattice, limits);
    const int n = lattice.rank();
    return d * d / std::pow(lattice.volume(), 2.0 / n);
}

}  // namespace latsec
