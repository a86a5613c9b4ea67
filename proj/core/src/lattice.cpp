#include "latsec/lattice.hpp"

#include "latsec/errors.hpp"

#include <Eigen/QR>

#include <cmath>
#include <utility>

namespace latsec {

Lattice::Lattice(Matrix generator, std::string name)
    : generator_(std::move(generator)), name_(std::move(name)) {
    const auto m = generator_.rows();
    const auto n = generator_.cols();
    if (m < 1 || n < 1) {
        throw InvalidArgument("lattice generator must be nonempty");
    }
    if (m > n) {
        throw InvalidArgument("lattice generator has more rows than columns");
    }
    gram_ = generator_ * generator_.transpose();
    const double det = gram_.determinant();
    Eigen::ColPivHouseholderQR<Matrix> qr(generator_);
    if (det <= 0.0 || qr.rank() < m) {
        throw InvalidArgument("lattice generator rows are not linearly independent");
    }
    volume_ = std::sqrt(det);
}

Vector Lattice::point_from_coords(const IntVector& coords) const {
    if (coords.size() != generator_.rows()) {
        throw InvalidArgument("coordinate vector length does not match lattice rank");
    }
    return generator_.transpose() * coords.cast<double>();
}

IntVector Lattice::coords_from_point(const Vector& point, double tol) const {
    if (!is_full_rank_square()) {
        throw InvalidArgument("coordinates require a full-rank square generator");
    }
    if (point.size() != generator_.cols()) {
        throw InvalidArgument("point dimension does not match lattice");
    }
    const Vector real = generator_.transpose().partialPivLu().solve(point);
    IntVector coords(real.size());
    for (Eigen::Index i = 0; i < real.size(); ++i) {
        coords[i] = std::llround(real[i]);
    }
    const double err = (generator_.transpose() * coords.cast<double>() - point)
                           .lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, point.lpNorm<Eigen::Infinity>());
    if (err > tol * scale) {
        throw InvalidArgument("point is not a lattice point of " +
                              (name_.empty() ? std::string("the lattice") : name_));
    }
    return coords;
}

Lattice integer_lattice(int n) {
    if (n < 1) {
        throw InvalidArgument("Z^n requires n >= 1");
    }
    return Lattice(Matrix::Identity(n, n), "Z" + std::to_string(n));
}

Lattice checkerboard_lattice(int n) {
    if (n < 2) {
        throw InvalidArgument("D_n requires n >= 2");
    }
    // Conway-Sloane basis: (-1,-1,0,...), then e_{i-1} - e_i.
    Matrix g = Matrix::Zero(n, n);
    g(0, 0) = -1.0;
    g(0, 1) = -1.0;
    for (int i = 1; i < n; ++i) {
        g(i, i - 1) = 1.0;
        g(i, i) = -1.0;
    }
    return Lattice(std::move(g), "D" + std::to_string(n));
}

Lattice gosset_lattice() {
    // Even coordinate system: D8 chain rows plus the (1/2,...,1/2) glue vector.
    Matrix g = Matrix::Zero(8, 8);
    g(0, 0) = 2.0;
    for (int i = 1; i < 7; ++i) {
        g(i, i - 1) = -1.0;
        g(i, i) = 1.0;
    }
    g.row(7).setConstant(0.5);
    return Lattice(std::move(g), "E8");
}

Lattice gosset_construction_a() {
    // Rows 0..3: the Reed-Muller (8,4,4) generator lifted to Z; rows 4..7:
    // 2*e_j for the positions {3,5,6,7} outside the information set {0,1,2,4}.
    Matrix g = Matrix::Zero(8, 8);
    const int rm[4][8] = {
        {1, 1, 1, 1, 1, 1, 1, 1},
        {0, 1, 0, 1, 0, 1, 0, 1},
        {0, 0, 1, 1, 0, 0, 1, 1},
        {0, 0, 0, 0, 1, 1, 1, 1},
    };
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 8; ++j) {
            g(i, j) = rm[i][j];
        }
    }
    g(4, 3) = 2.0;
    g(5, 5) = 2.0;
    g(6, 6) = 2.0;
    g(7, 7) = 2.0;
    return Lattice(std::move(g), "E8A");
}

Lattice scaled(const Lattice& lattice, double factor) {
    if (!(factor > 0.0)) {
        throw InvalidArgument("scaling factor must be positive");
    }
    std::string label;
    if (!lattice.name().empty()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", factor);
        label = std::string(buf) + "*" + lattice.name();
    }
    return Lattice(lattice.generator() * factor, std::move(label));
}

}  // namespace latsec
