#pragma once

#include "latsec/quotient.hpp"
#include "latsec/spectrum.hpp"

#include <cstdint>
#include <optional>

namespace latsec {

/// Gaussian wiretap channel: Bob sees noise of standard deviation sigma_b per
/// real dimension, Eve sigma_e. The regime of interest has sigma_b < sigma_e.
/// sigma = 0 is accepted and means a noiseless channel.
struct ChannelParams {
    double sigma_b;
    double sigma_e;
};

/// Two-sided correct-decision approximation of Eve's probability: the raw
/// value of the large-sigma formula
///   (1/(sqrt(2 pi) sigma_e)^n) * Vol(Lambda_b) * Theta_{Lambda_e}(y),
/// y = 1/(2 pi sigma_e^2), plus a [0,1]-clamped companion. `valid` is false
/// when the raw value leaves [0,1], i.e. outside the approximation's domain.
struct PceApprox {
    double raw;
    double clamped;
    bool valid;
};

struct SimOptions {
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    /// Window half-width L: the random Lambda_e point has integer coordinates
    /// in [-L, L)^n in the D-transformed basis.
    std::int64_t window = 2;
    /// 0 = one worker per hardware thread; results do not depend on this.
    int threads = 0;
    double theta_tol = 1e-10;
    EnumerationLimits limits{};
};

struct SimReport {
    std::int64_t trials;
    double p_correct_bob;
    double p_correct_eve;
    double stderr_bob;
    double stderr_eve;
    double approx_pcb;
    PceApprox approx_pce;
    /// Right-hand side of the probability-ratio approximation,
    /// equal to approx_pce.raw / approx_pcb.
    std::optional<double> ratio_analytic;
    /// p_correct_eve / p_correct_bob (absent when the denominator is 0).
    std::optional<double> ratio_empirical;
    std::uint64_t seed;
    // config echo
    double sigma_b;
    double sigma_e;
    std::int64_t window;
    std::string lattice_b;
    std::string lattice_e;
};

/// Monte Carlo estimate of Bob's and Eve's correct-coset probabilities.
/// Per trial: uniform label, random Lambda_e window point, transmit
/// x = representative + r, decode x + noise for each receiver by nearest
/// point in Lambda_b, count coset matches. Deterministic given (seed, trials,
/// config); trial t draws from a counter-based substream keyed by (seed, t).
/// Also fills in the analytic companions (approx_pcb by noise-only Monte
/// Carlo with the same seed and trial count, approx_pce by theta evaluation).
SimReport simulate(const QuotientCode& quotient, const ChannelParams& channel,
                   const SimOptions& options = {});

/// Eve's large-sigma approximation evaluated by exhaustive theta enumeration
/// of Lambda_e at y = 1/(2 pi sigma_e^2).
PceApprox approx_pce(const QuotientCode& quotient, double sigma_e,
                     double theta_tol = 1e-10, const EnumerationLimits& limits = {});

/// P(noise lands in the Voronoi cell of the origin): noise-only Monte Carlo,
/// testing closest_point(lattice, noise) == 0. Estimates Bob's single-point
/// correct-decision probability.
double approx_pcb(const Lattice& lattice_b, double sigma_b, std::int64_t trials,
                  std::uint64_t seed, int threads = 0);

/// Two-term kissing-number approximation of the Lambda_e theta sum,
/// 1 + tau e^{-d_min^2 / (2 sigma_e^2)}; the coarse first-order design
/// criterion, for comparison against the full theta evaluation.
double first_order_theta_sum(const Lattice& lattice_e, double sigma_e,
                             const EnumerationLimits& limits = {});

}  // namespace latsec
