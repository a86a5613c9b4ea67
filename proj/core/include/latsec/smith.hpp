#pragma once

#include "latsec/lattice.hpp"

#include <cstdint>
#include <vector>

namespace latsec {

/// Smith normal form B = U * D * V of a nonsingular integer matrix:
/// U, V unimodular, D = diag(d_1..d_n) with d_i >= 1 and d_i | d_{i+1}.
/// v_inv is V^{-1}, tracked during reduction (needed for coset labeling).
struct SmithDecomposition {
    IntMatrix u, d, v, v_inv;
    std::vector<std::int64_t> diag;

    std::int64_t index() const;  // product of the d_i = |det B|
};

/// Elementary row/column reduction over Z with the usual divisibility fix-up.
/// Intended for the small matrices that arise as sublattice relations; entries
/// stay within int64 for those. Throws InvalidArgument on singular input.
SmithDecomposition smith_normal_form(const IntMatrix& b);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
std::int64_t integer_determinant(const IntMatrix& m);

}  // namespace latsec
