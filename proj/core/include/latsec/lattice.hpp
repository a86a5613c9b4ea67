#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace latsec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// A lattice given by a generator matrix whose m rows are a basis of the
/// lattice in R^n (m <= n, rows linearly independent). The Gram matrix and
/// fundamental volume are computed once at construction. Immutable and safe
/// to share across threads.
class Lattice {
public:
    /// Throws InvalidArgument if generator is empty or its rows are not
    /// linearly independent (checked via det(G G^T) and rank).
    explicit Lattice(Matrix generator, std::string name = "");

    const Matrix& generator() const { return generator_; }
    const Matrix& gram() const { return gram_; }
    const std::string& name() const { return name_; }

    /// Number of basis vectors m (the intrinsic dimension).
    int rank() const { return static_cast<int>(generator_.rows()); }
    /// Ambient dimension n.
    int ambient_dim() const { return static_cast<int>(generator_.cols()); }
    bool is_full_rank_square() const { return generator_.rows() == generator_.cols(); }

    /// Fundamental volume det(G G^T)^{1/2}.
    double volume() const { return volume_; }

    /// Lattice point with the given integer coordinates (row convention
    /// x = u * generator, returned as a column vector).
    Vector point_from_coords(const IntVector& coords) const;

    /// Integer coordinates of a point that must lie in the lattice; throws
    /// InvalidArgument if the point is further than `tol` from the lattice
    /// (checked coordinate-wise after rounding). Requires a square generator.
    IntVector coords_from_point(const Vector& point, double tol = 1e-9) const;

private:
    Matrix generator_;
    Matrix gram_;
    double volume_;
    std::string name_;
};

/// Z^n, the cubic lattice (identity generator). n >= 1.
Lattice integer_lattice(int n);

/// D_n, the integer vectors with even coordinate sum (volume 2). n >= 2.
Lattice checkerboard_lattice(int n);

/// E8 in the even coordinate system: unit volume, minimum squared norm 2.
Lattice gosset_lattice();

/// E8 as Construction A over the Reed-Muller (8,4,4) code: 2Z^8 + (8,4,4),
/// volume 16, minimum squared norm 4.
Lattice gosset_construction_a();

/// The lattice scaled by a positive factor (generator * factor).
Lattice scaled(const Lattice& lattice, double factor);

}  // namespace latsec
