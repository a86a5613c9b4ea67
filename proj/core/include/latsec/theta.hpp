#pragma once

#include "latsec/lattice.hpp"
#include "latsec/spectrum.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace latsec {

/// Evaluation point of a theta series on the positive real axis:
/// y > 0 and the nome q = e^{-pi y} in (0, 1). For y large enough that the
/// nome underflows, q is exactly 0 and every theta evaluation degenerates to
/// the origin term.
struct ThetaArg {
    double y;
    double q;

    static ThetaArg from_y(double y);
    /// Channel-to-theta map y = 1 / (2 pi sigma^2).
    static ThetaArg from_sigma(double sigma);
};

enum class JacobiTheta { theta2, theta3, theta4 };

/// Jacobi theta constant by direct q-series summation, truncated once a
/// geometric bound on the dropped tail clears tol (absolute error <= tol up
/// to rounding). Throws InvalidArgument unless 0 < q < 1 and tol > 0; q = 0
/// is accepted as the underflow limit of e^{-pi y}.
double jacobi_theta(JacobiTheta which, double q, double tol = 1e-12);

/// Families with closed-form theta series in terms of the Jacobi thetas.
/// `scale` applies to the lattice (norms scale quadratically, so the series
/// is evaluated at y * scale^2).
struct ThetaFamily {
    enum class Kind { cubic, checkerboard, gosset, leech };
    Kind kind;
    int dim;           // n for Z^n / D_n; 8 for E8; 24 for Leech
    double scale = 1.0;

    std::string label() const;
};

ThetaFamily cubic_family(int n);
ThetaFamily checkerboard_family(int n);
ThetaFamily gosset_family();
ThetaFamily leech_family();

/// Closed-form theta series:
///   Z^n:   theta3^n
///   D_n:   (theta3^n + theta4^n) / 2
///   E8:    (theta2^8 + theta3^8 + theta4^8) / 2
///   Leech: (theta2^8 + theta3^8 + theta4^8)^3 / 8
///          - 45/16 * theta2^8 theta3^8 theta4^8
double theta_closed_form(const ThetaFamily& family, const ThetaArg& arg,
                         double tol = 1e-12);

/// Theta series of an explicit lattice by exhaustive shell enumeration:
/// sum over the norm spectrum of count * q^{norm}. The enumeration radius is
/// chosen so that a volume-heuristic bound (4x guard, summed over all shells
/// beyond the radius) on the dropped tail stays below tol; the result agrees
/// with the infinite series to within tol. Throws ResourceLimit (suggesting a
/// larger tol or larger y) if the required radius would exceed the point cap.
double theta_enumerated(const Lattice& lattice, const ThetaArg& arg,
                        double tol = 1e-10, const EnumerationLimits& limits = {});

/// Either a closed-form family or an explicit lattice; one evaluation entry
/// point for the secrecy-function machinery.
class ThetaSource {
public:
    ThetaSource(ThetaFamily family);   // NOLINT(google-explicit-constructor)
    ThetaSource(Lattice lattice);      // NOLINT(google-explicit-constructor)

    int dim() const;
    std::string label() const;
    bool is_closed_form() const { return std::holds_alternative<ThetaFamily>(source_); }

    double theta(const ThetaArg& arg, double tol = 1e-10,
                 const EnumerationLimits& limits = {}) const;

private:
    std::variant<ThetaFamily, Lattice> source_;
};

/// Secrecy function Xi(y) = Theta_{Z^n}(y) / Theta_Lambda(y); the numerator
/// is always theta3(q)^n for the matching dimension, with no volume
/// normalization.
double secrecy_function(const ThetaSource& source, const ThetaArg& arg,
                        double tol = 1e-10, const EnumerationLimits& limits = {});

struct SecrecySearch {
    double y_lo = 1.0 / 16.0;
    double y_hi = 16.0;
    /// Refinement stop: golden-section interval width in log y.
    double tol = 1e-6;
    int grid_points = 64;
    double theta_tol = 1e-10;
    EnumerationLimits limits{};
};

struct SecrecyResult {
    double gain;
    double argmax_y;
    /// Every (y, Xi(y)) the search evaluated, grid first, in evaluation order.
    std::vector<std::pair<double, double>> evaluations;
    /// Set when the maximum sits on the search boundary; the true supremum
    /// may lie outside the bracket.
    bool boundary_warning;
};

/// Maximizes the secrecy function over [y_lo, y_hi]: coarse log-spaced grid,
/// then golden-section refinement around the best grid point. Ties prefer
/// smaller y. gain/argmax_y always point at the best evaluated sample.
SecrecyResult secrecy_gain(const ThetaSource& source, const SecrecySearch& search = {});

}  // namespace latsec
