#include "latsec/smith.hpp"

#include "latsec/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace latsec {

namespace {

using Int = std::int64_t;

// Floor-division quotient so remainders land in [0, |b|).
Int div_floor(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

struct Reduction {
    IntMatrix b;       // working matrix, becomes D
    IntMatrix u;       // accumulated so that original = u * b * v
    IntMatrix v;
    IntMatrix v_inv;

    // Row ops transform b as E*b; u absorbs E^{-1} on the right.
    void swap_rows(Eigen::Index i, Eigen::Index k) {
        b.row(i).swap(b.row(k));
        u.col(i).swap(u.col(k));
    }
    void add_row(Eigen::Index dst, Eigen::Index src, Int factor) {
        // row_dst += factor * row_src; U undoes it: col_src -= factor * col_dst
        b.row(dst) += factor * b.row(src);
        u.col(src) -= factor * u.col(dst);
    }
    void negate_row(Eigen::Index i) {
        b.row(i) = -b.row(i);
        u.col(i) = -u.col(i);
    }
    // Column ops transform b as b*F; v absorbs F^{-1} on the left, v_inv tracks F.
    void swap_cols(Eigen::Index j, Eigen::Index k) {
        b.col(j).swap(b.col(k));
        v.row(j).swap(v.row(k));
        v_inv.col(j).swap(v_inv.col(k));
    }
    void add_col(Eigen::Index dst, Eigen::Index src, Int factor) {
        b.col(dst) += factor * b.col(src);
        v.row(src) -= factor * v.row(dst);
        v_inv.col(dst) += factor * v_inv.col(src);
    }
};

}  // namespace

std::int64_t SmithDecomposition::index() const {
    Int prod = 1;
    for (Int di : diag) {
        prod *= di;
    }
    return prod;
}

SmithDecomposition smith_normal_form(const IntMatrix& input) {
    if (input.rows() != input.cols() || input.rows() < 1) {
        throw InvalidArgument("Smith normal form expects a square nonempty matrix");
    }
    const Eigen::Index n = input.rows();

    Reduction w{input, IntMatrix::Identity(n, n), IntMatrix::Identity(n, n),
                IntMatrix::Identity(n, n)};

    for (Eigen::Index k = 0; k < n; ++k) {
        for (;;) {
            // Move the submatrix entry of least nonzero magnitude to (k, k).
            Eigen::Index pi = -1, pj = -1;
            Int pivot = 0;
            for (Eigen::Index i = k; i < n; ++i) {
                for (Eigen::Index j = k; j < n; ++j) {
                    const Int a = std::abs(w.b(i, j));
                    if (a != 0 && (pivot == 0 || a < pivot)) {
                        pivot = a;
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pivot == 0) {
                throw InvalidArgument("matrix is singular over the integers");
            }
            if (pi != k) w.swap_rows(pi, k);
            if (pj != k) w.swap_cols(pj, k);
            if (w.b(k, k) < 0) w.negate_row(k);

            // Clear the pivot row and column modulo the pivot.
            bool reduced = true;
            for (Eigen::Index i = k + 1; i < n; ++i) {
                if (w.b(i, k) != 0) {
                    w.add_row(i, k, -div_floor(w.b(i, k), w.b(k, k)));
                    if (w.b(i, k) != 0) reduced = false;
                }
            }
            for (Eigen::Index j = k + 1; j < n; ++j) {
                if (w.b(k, j) != 0) {
                    w.add_col(j, k, -div_floor(w.b(k, j), w.b(k, k)));
                    if (w.b(k, j) != 0) reduced = false;
                }
            }
            if (!reduced) {
                continue;  // smaller remainders appeared, pick a new pivot
            }

            // Divisibility fix: fold in any remaining entry the pivot misses.
            bool divides_all = true;
            for (Eigen::Index i = k + 1; i < n && divides_all; ++i) {
                for (Eigen::Index j = k + 1; j < n && divides_all; ++j) {
                    if (w.b(i, j) % w.b(k, k) != 0) {
                        w.add_row(k, i, 1);
                        divides_all = false;
                    }
                }
            }
            if (divides_all) {
                break;
            }
        }
    }

    SmithDecomposition out;
    out.u = w.u;
    out.v = w.v;
    out.v_inv = w.v_inv;
    out.d = IntMatrix::Zero(n, n);
    out.diag.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        out.d(k, k) = w.b(k, k);
        out.diag[static_cast<std::size_t>(k)] = w.b(k, k);
    }
    return out;
}

std::int64_t integer_determinant(const IntMatrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvalidArgument("determinant expects a square nonempty matrix");
    }
    const Eigen::Index n = m.rows();
    using Wide = __int128;
    Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic> a =
        m.cast<Wide>();

    // Bareiss fraction-free elimination with row-swap sign tracking.
    int sign = 1;
    Wide prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            Eigen::Index swap = -1;
            for (Eigen::Index i = k + 1; i < n; ++i) {
                if (a(i, k) != 0) {
                    swap = i;
                    break;
                }
            }
            if (swap < 0) {
                return 0;
            }
            a.row(k).swap(a.row(swap));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return static_cast<std::int64_t>(sign * a(n - 1, n - 1));
}

}  // namespace latsec
