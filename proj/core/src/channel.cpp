#include "latsec/channel.hpp"

#include "latsec/cvp.hpp"
#include "latsec/errors.hpp"
#include "latsec/rng.hpp"
#include "latsec/theta.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>
#include <vector>

namespace latsec {

namespace {

// Stream ids for the counter-based substreams; one per random quantity.
enum Stream : std::uint64_t {
    kStreamLabel = 1,
    kStreamWindow = 2,
    kStreamNoiseBob = 3,
    kStreamNoiseEve = 4,
    kStreamVoronoi = 5,
};

Vector gaussian_vector(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream,
                       int n, double sigma) {
    Vector v = Vector::Zero(n);
    if (sigma == 0.0) {
        return v;
    }
    for (int c = 0; c < n; c += 2) {
        const auto [g1, g2] =
            rng::gaussian_pair(rng::word(seed, trial, stream, static_cast<std::uint64_t>(c)),
                               rng::word(seed, trial, stream, static_cast<std::uint64_t>(c) + 1));
        v[c] = sigma * g1;
        if (c + 1 < n) {
            v[c + 1] = sigma * g2;
        }
    }
    return v;
}

int resolve_threads(int requested, std::int64_t trials) {
    int t = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) {
        t = 1;
    }
    return static_cast<int>(std::min<std::int64_t>(t, std::max<std::int64_t>(1, trials)));
}

// Partitioned integer reduction: results are sums of per-trial 0/1 outcomes,
// so the report does not depend on the partitioning.
template <typename PerTrial>
std::int64_t count_over_trials(std::int64_t trials, int threads, PerTrial&& body) {
    std::vector<std::future<std::int64_t>> futures;
    const std::int64_t chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(trials, lo + chunk);
        if (lo >= hi) {
            break;
        }
        futures.push_back(std::async(std::launch::async, [lo, hi, &body]() {
            std::int64_t local = 0;
            for (std::int64_t t = lo; t < hi; ++t) {
                local += body(t) ? 1 : 0;
            }
            return local;
        }));
    }
    std::int64_t total = 0;
    for (auto& f : futures) {
        total += f.get();
    }
    return total;
}

double binomial_stderr(double p, std::int64_t trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

void validate_sigma(double sigma, const char* who) {
    if (!(sigma >= 0.0)) {
        throw InvalidArgument(std::string(who) + " noise standard deviation must be >= 0");
    }
}

}  // namespace

PceApprox approx_pce(const QuotientCode& quotient, double sigma_e, double theta_tol,
                     const EnumerationLimits& limits) {
    if (!(sigma_e > 0.0)) {
        throw InvalidArgument("approx_pce requires sigma_e > 0");
    }
    const int n = quotient.lattice_b().ambient_dim();
    const ThetaArg arg = ThetaArg::from_sigma(sigma_e);
    const double theta = theta_enumerated(quotient.lattice_e(), arg, theta_tol, limits);
    const double raw = theta * quotient.lattice_b().volume() /
                       std::pow(std::sqrt(2.0 * std::numbers::pi) * sigma_e, n);
    PceApprox out;
    out.raw = raw;
    out.clamped = std::clamp(raw, 0.0, 1.0);
    out.valid = raw >= 0.0 && raw <= 1.0;
    return out;
}

double approx_pcb(const Lattice& lattice_b, double sigma_b, std::int64_t trials,
                  std::uint64_t seed, int threads) {
    validate_sigma(sigma_b, "Bob");
    if (trials < 1) {
        throw InvalidArgument("at least one trial is required");
    }
    const int n = lattice_b.ambient_dim();
    const int workers = resolve_threads(threads, trials);
    const std::int64_t hits = count_over_trials(trials, workers, [&](std::int64_t t) {
        const Vector noise =
            gaussian_vector(seed, static_cast<std::uint64_t>(t), kStreamVoronoi, n, sigma_b);
        const LatticePoint nearest = closest_point(lattice_b, noise);
        return nearest.coords.isZero();
    });
    return static_cast<double>(hits) / static_cast<double>(trials);
}

SimReport simulate(const QuotientCode& quotient, const ChannelParams& channel,
                   const SimOptions& options) {
    validate_sigma(channel.sigma_b, "Bob");
    validate_sigma(channel.sigma_e, "Eve");
    if (options.trials < 1) {
        throw InvalidArgument("at least one trial is required");
    }
    if (options.window < 1) {
        throw InvalidArgument("window half-width must be >= 1");
    }

    const int n = quotient.lattice_b().ambient_dim();
    const int k = quotient.rate_bits();
    const std::int64_t window = options.window;

    // Precompute the 2^k coset representatives once; encoding inside the trial
    // loop is then a table lookup plus the window point.
    std::vector<Vector> reps;
    reps.reserve(static_cast<std::size_t>(quotient.index()));
    std::vector<std::vector<std::int64_t>> digit_table;
    digit_table.reserve(static_cast<std::size_t>(quotient.index()));
    for (std::int64_t idx = 0; idx < quotient.index(); ++idx) {
        std::string bits(static_cast<std::size_t>(k), '0');
        for (int b = 0; b < k; ++b) {
            if (idx & (std::int64_t{1} << b)) {
                bits[static_cast<std::size_t>(b)] = '1';
            }
        }
        const CosetLabel label = quotient.label_from_bits(bits);
        reps.push_back(quotient.min_energy_representative(label));
        digit_table.push_back(label.digits);
    }

    const auto digits_of_coords = [&](const IntVector& coords) {
        const IntVector transformed = quotient.snf().v_inv.transpose() * coords;
        std::vector<std::int64_t> digits(quotient.snf().diag.size());
        for (std::size_t i = 0; i < digits.size(); ++i) {
            const std::int64_t d = quotient.snf().diag[i];
            const std::int64_t r = transformed[static_cast<Eigen::Index>(i)] % d;
            digits[i] = r < 0 ? r + d : r;
        }
        return digits;
    };

    const int workers = resolve_threads(options.threads, options.trials);
    const std::uint64_t seed = options.seed;

    struct TrialOutcome {
        bool bob;
        bool eve;
    };
    auto run_trial = [&](std::int64_t t) -> TrialOutcome {
        const auto trial = static_cast<std::uint64_t>(t);
        // label: k independent bits
        std::int64_t idx = 0;
        for (int b = 0; b < k; ++b) {
            if (rng::word(seed, trial, kStreamLabel, static_cast<std::uint64_t>(b)) & 1) {
                idx |= (std::int64_t{1} << b);
            }
        }
        // random Lambda_e point from the window
        IntVector z(n);
        for (int c = 0; c < n; ++c) {
            z[c] = rng::uniform_int(
                rng::word(seed, trial, kStreamWindow, static_cast<std::uint64_t>(c)),
                -window, window);
        }
        const Vector x = reps[static_cast<std::size_t>(idx)] + quotient.lattice_e_point(z);
        const auto& sent_digits = digit_table[static_cast<std::size_t>(idx)];

        const Vector noise_bob =
            gaussian_vector(seed, trial, kStreamNoiseBob, n, channel.sigma_b);
        const Vector noise_eve =
            gaussian_vector(seed, trial, kStreamNoiseEve, n, channel.sigma_e);

        const LatticePoint bob_hat = closest_point(quotient.lattice_b(), x + noise_bob);
        const LatticePoint eve_hat = closest_point(quotient.lattice_b(), x + noise_eve);
        return TrialOutcome{digits_of_coords(bob_hat.coords) == sent_digits,
                            digits_of_coords(eve_hat.coords) == sent_digits};
    };

    struct Counts {
        std::int64_t bob = 0;
        std::int64_t eve = 0;
    };
    std::vector<std::future<Counts>> futures;
    const std::int64_t chunk = (options.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(options.trials, lo + chunk);
        if (lo >= hi) {
            break;
        }
        futures.push_back(std::async(std::launch::async, [lo, hi, &run_trial]() {
            Counts local;
            for (std::int64_t t = lo; t < hi; ++t) {
                const TrialOutcome outcome = run_trial(t);
                local.bob += outcome.bob ? 1 : 0;
                local.eve += outcome.eve ? 1 : 0;
            }
            return local;
        }));
    }
    std::int64_t bob_hits = 0;
    std::int64_t eve_hits = 0;
    for (auto& f : futures) {
        const Counts c = f.get();
        bob_hits += c.bob;
        eve_hits += c.eve;
    }

    SimReport report;
    report.trials = options.trials;
    report.p_correct_bob = static_cast<double>(bob_hits) / static_cast<double>(options.trials);
    report.p_correct_eve = static_cast<double>(eve_hits) / static_cast<double>(options.trials);
    report.stderr_bob = binomial_stderr(report.p_correct_bob, options.trials);
    report.stderr_eve = binomial_stderr(report.p_correct_eve, options.trials);
    report.approx_pcb = approx_pcb(quotient.lattice_b(), channel.sigma_b, options.trials,
                                   options.seed, options.threads);
    if (channel.sigma_e > 0.0) {
        report.approx_pce =
            approx_pce(quotient, channel.sigma_e, options.theta_tol, options.limits);
    } else {
        report.approx_pce = PceApprox{1.0, 1.0, true};
    }
    if (report.approx_pcb > 0.0) {
        report.ratio_analytic = report.approx_pce.raw / report.approx_pcb;
    }
    if (report.p_correct_bob > 0.0) {
        report.ratio_empirical = report.p_correct_eve / report.p_correct_bob;
    }
    report.seed = options.seed;
    report.sigma_b = channel.sigma_b;
    report.sigma_e = channel.sigma_e;
    report.window = options.window;
    report.lattice_b = quotient.lattice_b().name();
    report.lattice_e = quotient.lattice_e().name();
    return report;
}

double first_order_theta_sum(const Lattice& lattice_e, double sigma_e,
                             const EnumerationLimits& limits) {
    if (!(sigma_e > 0.0)) {
        throw InvalidArgument("first-order theta sum requires sigma_e > 0");
    }
    const double d = min_distance(lattice_e, limits);
    const auto tau = static_cast<double>(kissing_number(lattice_e, limits));
    return 1.0 + tau * std::exp(-d * d / (2.0 * sigma_e * sigma_e));
}

}  // namespace latsec
