#include "latsec/theta.hpp"

#include "latsec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latsec {

namespace {

constexpr double kPi = std::numbers::pi;

double pow_int(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

double unit_ball_volume(int dim) {
    return std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

// Volume-heuristic bound (with a 4x guard) on sum_{||x||^2 > r2} q^{||x||^2},
// summed shell by shell of unit squared-norm width. Geometric decay in q makes
// this a short loop; no lattice points are enumerated here.
double tail_bound(int dim, double volume, double q, double r2) {
    const double vn = unit_ball_volume(dim);
    double total = 0.0;
    double s = std::max(0.0, r2);
    for (int shell = 0; shell < 100000; ++shell) {
        const double shell_points =
            vn * (std::pow(s + 1.0, dim / 2.0) - std::pow(s, dim / 2.0)) / volume;
        const double term = 4.0 * shell_points * std::pow(q, s);
        total += term;
        if (term < 1e-18 && shell > 2) {
            break;
        }
        s += 1.0;
    }
    return total;
}

}  // namespace

ThetaArg ThetaArg::from_y(double y) {
    if (!(y > 0.0)) {
        throw InvalidArgument("theta argument y must be positive");
    }
    return ThetaArg{y, std::exp(-kPi * y)};
}

ThetaArg ThetaArg::from_sigma(double sigma) {
    if (!(sigma > 0.0)) {
        throw InvalidArgument("noise standard deviation must be positive");
    }
    return from_y(1.0 / (2.0 * kPi * sigma * sigma));
}

double jacobi_theta(JacobiTheta which, double q, double tol) {
    if (!(q >= 0.0) || !(q < 1.0)) {
        throw InvalidArgument("jacobi theta requires 0 < q < 1");
    }
    if (!(tol > 0.0)) {
        throw InvalidArgument("jacobi theta requires tol > 0");
    }
    if (q == 0.0) {
        // underflow of e^{-pi y} for huge y; only the n = 0 term survives
        return which == JacobiTheta::theta2 ? 0.0 : 1.0;
    }
    // Successive term ratios only shrink, so the dropped tail is bounded by
    // the geometric sum 2*term/(1-q); stop once that clears tol.
    const double tail_gate = tol * (1.0 - q) / 2.0;
    switch (which) {
        case JacobiTheta::theta2: {
            // 2 q^{1/4} sum_{n>=0} q^{n(n+1)}
            double sum = 0.0;
            double term = 1.0;  // q^{n(n+1)} at n = 0
            double ratio = q * q;  // multiply by q^{2n} each step, n = 1, 2, ...
            for (;;) {
                sum += term;
                term *= ratio;
                ratio *= q * q;
                if (term < tail_gate) {
                    sum += term;
                    break;
                }
            }
            return 2.0 * std::pow(q, 0.25) * sum;
        }
        case JacobiTheta::theta3:
        case JacobiTheta::theta4: {
            const double sign = (which == JacobiTheta::theta4) ? -1.0 : 1.0;
            double sum = 1.0;
            double term = q;       // q^{n^2} at n = 1
            double ratio = q;      // q^{2n-1} with n = 1; advance by q^2
            double s = sign;
            for (;;) {
                sum += 2.0 * s * term;
                ratio *= q * q;
                term *= ratio;
                s *= sign;
                if (term < tail_gate) {
                    sum += 2.0 * s * term;
                    break;
                }
            }
            return sum;
        }
    }
    throw InvalidArgument("unknown jacobi theta selector");
}

std::string ThetaFamily::label() const {
    std::string base;
    switch (kind) {
        case Kind::cubic: base = "Z" + std::to_string(dim); break;
        case Kind::checkerboard: base = "D" + std::to_string(dim); break;
        case Kind::gosset: base = "E8"; break;
        case Kind::leech: base = "Leech"; break;
    }
    if (scale != 1.0) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", scale);
        base = std::string(buf) + "*" + base;
    }
    return base;
}

ThetaFamily cubic_family(int n) {
    if (n < 1) {
        throw InvalidArgument("Z^n requires n >= 1");
    }
    return ThetaFamily{ThetaFamily::Kind::cubic, n};
}

ThetaFamily checkerboard_family(int n) {
    if (n < 2) {
        throw InvalidArgument("D_n requires n >= 2");
    }
    return ThetaFamily{ThetaFamily::Kind::checkerboard, n};
}

ThetaFamily gosset_family() { return ThetaFamily{ThetaFamily::Kind::gosset, 8}; }

ThetaFamily leech_family() { return ThetaFamily{ThetaFamily::Kind::leech, 24}; }

double theta_closed_form(const ThetaFamily& family, const ThetaArg& arg, double tol) {
    // Scaling the lattice by a multiplies every squared norm by a^2, which is
    // the same series evaluated at y * a^2.
    const ThetaArg at = (family.scale == 1.0)
                            ? arg
                            : ThetaArg::from_y(arg.y * family.scale * family.scale);
    const double q = at.q;
    switch (family.kind) {
        case ThetaFamily::Kind::cubic:
            return pow_int(jacobi_theta(JacobiTheta::theta3, q, tol), family.dim);
        case ThetaFamily::Kind::checkerboard:
            return 0.5 * (pow_int(jacobi_theta(JacobiTheta::theta3, q, tol), family.dim) +
                          pow_int(jacobi_theta(JacobiTheta::theta4, q, tol), family.dim));
        case ThetaFamily::Kind::gosset: {
            const double t2 = pow_int(jacobi_theta(JacobiTheta::theta2, q, tol), 8);
            const double t3 = pow_int(jacobi_theta(JacobiTheta::theta3, q, tol), 8);
            const double t4 = pow_int(jacobi_theta(JacobiTheta::theta4, q, tol), 8);
            return 0.5 * (t2 + t3 + t4);
        }
        case ThetaFamily::Kind::leech: {
            const double t2 = pow_int(jacobi_theta(JacobiTheta::theta2, q, tol), 8);
            const double t3 = pow_int(jacobi_theta(JacobiTheta::theta3, q, tol), 8);
            const double t4 = pow_int(jacobi_theta(JacobiTheta::theta4, q, tol), 8);
            const double s = t2 + t3 + t4;
            return s * s * s / 8.0 - 45.0 / 16.0 * t2 * t3 * t4;
        }
    }
    throw InvalidArgument("unknown theta family");
}

double theta_enumerated(const Lattice& lattice, const ThetaArg& arg, double tol,
                        const EnumerationLimits& limits) {
    if (!(tol > 0.0)) {
        throw InvalidArgument("theta_enumerated requires tol > 0");
    }
    const int m = lattice.rank();
    const double q = arg.q;

    // Grow the radius until the heuristic tail bound is under tol, then
    // bisect back to the smallest sufficient radius (the 1.5x growth alone
    // overshoots the point count by up to 1.5^{m/2}). The bound needs no
    // enumeration, so the (capped) exhaustive pass runs exactly once.
    double r2 = 1.0;
    double r2_low = 0.0;
    while (tail_bound(m, lattice.volume(), q, r2) >= tol) {
        r2_low = r2;
        r2 *= 1.5;
        const double predicted =
            unit_ball_volume(m) * std::pow(r2, m / 2.0) / lattice.volume();
        if (predicted > 4.0 * static_cast<double>(limits.max_points)) {
            throw ResourceLimit(
                "theta series tail needs enumeration past the point cap; "
                "use a larger tol or a larger y");
        }
    }
    for (int step = 0; step < 30 && r2_low > 0.0; ++step) {
        const double mid = 0.5 * (r2_low + r2);
        (tail_bound(m, lattice.volume(), q, mid) < tol ? r2 : r2_low) = mid;
    }
    if (unit_ball_volume(m) * std::pow(r2, m / 2.0) / lattice.volume() >
        2.0 * static_cast<double>(limits.max_points)) {
        throw ResourceLimit(
            "theta series tail needs enumeration past the point cap; "
            "use a larger tol or a larger y");
    }

    const NormSpectrum spectrum = enumerate_points(lattice, r2, limits);
    // Ascending-term order (largest norms first) for accumulation accuracy.
    long double sum = 0.0L;
    const auto& entries = spectrum.entries();
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        sum += static_cast<long double>(it->count) *
               std::pow(static_cast<long double>(q), static_cast<long double>(it->norm_sq));
    }
    return static_cast<double>(sum);
}

ThetaSource::ThetaSource(ThetaFamily family) : source_(family) {}
ThetaSource::ThetaSource(Lattice lattice) : source_(std::move(lattice)) {}

int ThetaSource::dim() const {
    if (const auto* family = std::get_if<ThetaFamily>(&source_)) {
        return family->dim;
    }
    return std::get<Lattice>(source_).rank();
}

std::string ThetaSource::label() const {
    if (const auto* family = std::get_if<ThetaFamily>(&source_)) {
        return family->label();
    }
    return std::get<Lattice>(source_).name();
}

double ThetaSource::theta(const ThetaArg& arg, double tol,
                          const EnumerationLimits& limits) const {
    if (const auto* family = std::get_if<ThetaFamily>(&source_)) {
        return theta_closed_form(*family, arg, std::min(tol, 1e-12));
    }
    return theta_enumerated(std::get<Lattice>(source_), arg, tol, limits);
}

double secrecy_function(const ThetaSource& source, const ThetaArg& arg, double tol,
                        const EnumerationLimits& limits) {
    const double numer =
        pow_int(jacobi_theta(JacobiTheta::theta3, arg.q, 1e-12), source.dim());
    const double denom = source.theta(arg, tol, limits);
    return numer / denom;
}

SecrecyResult secrecy_gain(const ThetaSource& source, const SecrecySearch& search) {
    if (!(search.y_lo > 0.0) || !(search.y_hi > search.y_lo)) {
        throw InvalidArgument("secrecy gain search requires 0 < y_lo < y_hi");
    }
    if (!(search.tol > 0.0) || search.grid_points < 3) {
        throw InvalidArgument("secrecy gain search requires tol > 0 and >= 3 grid points");
    }

    SecrecyResult result;
    result.boundary_warning = false;

    auto xi = [&](double y) {
        const double v = secrecy_function(source, ThetaArg::from_y(y), search.theta_tol,
                                          search.limits);
        result.evaluations.emplace_back(y, v);
        return v;
    };

    // Log-spaced coarse grid; ties keep the earlier (smaller) y.
    const double t_lo = std::log(search.y_lo);
    const double t_hi = std::log(search.y_hi);
    const int grid = search.grid_points;
    int best_idx = 0;
    double best_val = -1.0;
    std::vector<double> ts(grid);
    for (int i = 0; i < grid; ++i) {
        ts[i] = t_lo + (t_hi - t_lo) * i / (grid - 1);
        const double v = xi(std::exp(ts[i]));
        if (v > best_val) {
            best_val = v;
            best_idx = i;
        }
    }

    if (best_idx == 0 || best_idx == grid - 1) {
        result.boundary_warning = true;
        result.argmax_y = std::exp(ts[best_idx]);
        result.gain = best_val;
        return result;
    }

    // Golden-section refinement of t = log y on the bracketing grid cells.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = ts[best_idx - 1];
    double b = ts[best_idx + 1];
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = xi(std::exp(x1));
    double f2 = xi(std::exp(x2));
    while (b - a > search.tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = xi(std::exp(x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = xi(std::exp(x1));
        }
    }

    // Report the best evaluated sample, ties toward smaller y.
    const auto* best = &result.evaluations.front();
    for (const auto& e : result.evaluations) {
        if (e.second > best->second ||
            (e.second == best->second && e.first < best->first)) {
            best = &e;
        }
    }
    result.argmax_y = best->first;
    result.gain = best->second;
    return result;
}

}  // namespace latsec
