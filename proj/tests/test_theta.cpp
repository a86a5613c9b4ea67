#include <latsec/errors.hpp>
#include <latsec/theta.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace latsec;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference values from a 25-digit mpmath evaluation of the q-series.
// theta3(e^-pi) equals the closed form pi^{1/4} / Gamma(3/4).
constexpr double kTheta3AtPi = 1.0864348112133080145753161;
constexpr double kTheta2AtPi = 0.9135791381561168214072426;  // = theta4(e^-pi)
constexpr double kTheta3AtHalfPi = 1.4194954880837661233621867;
constexpr double kTheta2AtHalfPi = 1.4089316367312201279932553;
constexpr double kTheta4AtHalfPi = 0.5879742828917120587331725;
constexpr double kThetaE8At1 = 1.4557628922687093224624220;
constexpr double kThetaE8AtHalf = 16.0133918149558025470866400;
constexpr double kThetaE8At2 = 1.0008369884347376591929146;
constexpr double kThetaD8At1 = 1.2131357435572577687186850;
constexpr double kThetaD8AtHalf = 8.2493230561893528272870580;
constexpr double kXiE8AtQuarter = 1.0000557959208762296678927;  // y = 1/4 and 4
constexpr double kXiE8AtHalf = 1.0294109923780951692612120;     // y = 1/2 and 2

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("jacobi theta constants at the self-dual point") {
    const double q = std::exp(-kPi);
    CHECK(rel_err(jacobi_theta(JacobiTheta::theta3, q), kTheta3AtPi) < 1e-14);
    CHECK(rel_err(jacobi_theta(JacobiTheta::theta2, q), kTheta2AtPi) < 1e-14);
    CHECK(rel_err(jacobi_theta(JacobiTheta::theta4, q), kTheta2AtPi) < 1e-14);
    // y <-> 1/y fixed point: theta2 and theta4 coincide at q = e^-pi
    CHECK(jacobi_theta(JacobiTheta::theta2, q) ==
          doctest::Approx(jacobi_theta(JacobiTheta::theta4, q)).epsilon(1e-14));
}

TEST_CASE("jacobi theta against the independent long-double summation") {
    for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double q = std::exp(-kPi * y);
        CHECK(rel_err(jacobi_theta(JacobiTheta::theta2, q),
                      static_cast<double>(oracle::theta2(q))) < 1e-13);
        CHECK(rel_err(jacobi_theta(JacobiTheta::theta3, q),
                      static_cast<double>(oracle::theta3(q))) < 1e-13);
        CHECK(rel_err(jacobi_theta(JacobiTheta::theta4, q),
                      static_cast<double>(oracle::theta4(q))) < 1e-13);
    }
}

TEST_CASE("theta3 tends to 1 as q -> 0") {
    CHECK(jacobi_theta(JacobiTheta::theta3, 1e-300) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ThetaArg::from_y(1e9).q == 0.0);  // underflow regime
    CHECK(theta_closed_form(cubic_family(2), ThetaArg::from_y(1e9)) == 1.0);
}

TEST_CASE("jacobi theta domain errors") {
    CHECK_THROWS_AS(jacobi_theta(JacobiTheta::theta3, -0.1), InvalidArgument);
    CHECK_THROWS_AS(jacobi_theta(JacobiTheta::theta3, 1.0), InvalidArgument);
    CHECK_THROWS_AS(jacobi_theta(JacobiTheta::theta3, 1.5), InvalidArgument);
    CHECK_THROWS_AS(jacobi_theta(JacobiTheta::theta3, 0.5, 0.0), InvalidArgument);
    CHECK_THROWS_AS(ThetaArg::from_y(0.0), InvalidArgument);
    CHECK_THROWS_AS(ThetaArg::from_y(-1.0), InvalidArgument);
}

TEST_CASE("jacobi identity theta3^4 = theta2^4 + theta4^4") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> qdist(0.001, 0.8);
    for (int i = 0; i < 50; ++i) {
        const double q = qdist(gen);
        const double t2 = std::pow(jacobi_theta(JacobiTheta::theta2, q), 4);
        const double t3 = std::pow(jacobi_theta(JacobiTheta::theta3, q), 4);
        const double t4 = std::pow(jacobi_theta(JacobiTheta::theta4, q), 4);
        CHECK(rel_err(t3, t2 + t4) < 1e-10);
    }
}

TEST_CASE("closed forms at y = 1") {
    const ThetaArg y1 = ThetaArg::from_y(1.0);
    CHECK(rel_err(theta_closed_form(cubic_family(1), y1), kTheta3AtPi) < 1e-13);
    CHECK(rel_err(theta_closed_form(gosset_family(), y1), kThetaE8At1) < 1e-13);
    CHECK(rel_err(theta_closed_form(checkerboard_family(8), y1), kThetaD8At1) < 1e-13);
}

TEST_CASE("Leech closed form exposes the 196560 kissing count") {
    // Theta - 1 ~ tau * q^4 for large y (minimum squared norm 4). Larger y
    // makes the extraction cancel catastrophically in doubles, so pin y = 2
    // against the 25-digit reference of (Theta - 1) / q^4, whose deviation
    // from 196560 is the norm-6 shell.
    const ThetaArg y2 = ThetaArg::from_y(2.0);
    const double theta = theta_closed_form(leech_family(), y2);
    const double leading = (theta - 1.0) / std::pow(y2.q, 4);
    CHECK(rel_err(leading, 196618.4984527312) < 1e-6);
    CHECK(rel_err(leading, 196560.0) < 1e-3);
}

TEST_CASE("enumerated theta agrees with the closed forms") {
    for (double y : {0.5, 1.0, 2.0}) {
        const ThetaArg arg = ThetaArg::from_y(y);
        SUBCASE("cubic") {
            for (int n : {1, 2, 4, 8}) {
                const double closed = theta_closed_form(cubic_family(n), arg);
                const double enumd = theta_enumerated(integer_lattice(n), arg, 1e-10);
                CHECK(rel_err(enumd, closed) < 1e-9);
            }
        }
        SUBCASE("checkerboard and gosset") {
            CHECK(rel_err(theta_enumerated(checkerboard_lattice(8), arg, 1e-10),
                          theta_closed_form(checkerboard_family(8), arg)) < 1e-9);
            CHECK(rel_err(theta_enumerated(gosset_lattice(), arg, 1e-10),
                          theta_closed_form(gosset_family(), arg)) < 1e-9);
        }
    }
}

TEST_CASE("frozen enumerated values") {
    CHECK(rel_err(theta_enumerated(gosset_lattice(), ThetaArg::from_y(0.5)),
                  kThetaE8AtHalf) < 1e-9);
    CHECK(rel_err(theta_enumerated(gosset_lattice(), ThetaArg::from_y(2.0)),
                  kThetaE8At2) < 1e-9);
    CHECK(rel_err(theta_enumerated(checkerboard_lattice(8), ThetaArg::from_y(0.5)),
                  kThetaD8AtHalf) < 1e-9);
    CHECK(rel_err(theta_enumerated(integer_lattice(2), ThetaArg::from_y(1.0)),
                  kTheta3AtPi * kTheta3AtPi) < 1e-9);
}

TEST_CASE("scaled families evaluate at scale^2 * y") {
    // Theta_{aL}(y) = Theta_L(a^2 y); E8A is sqrt(2)-similar to E8 up to
    // rotation, so enumerating E8A equals the E8 closed form at 2y.
    const ThetaArg y1 = ThetaArg::from_y(1.0);
    const double e8a = theta_enumerated(gosset_construction_a(), y1, 1e-10);
    CHECK(rel_err(e8a, theta_closed_form(gosset_family(), ThetaArg::from_y(2.0))) < 1e-9);

    ThetaFamily doubled = gosset_family();
    doubled.scale = std::sqrt(2.0);
    CHECK(rel_err(theta_closed_form(doubled, y1), e8a) < 1e-9);
}

TEST_CASE("theta is strictly decreasing in y") {
    double prev = std::numeric_limits<double>::infinity();
    for (double y = 0.25; y <= 4.0; y *= std::sqrt(2.0)) {
        const double v = theta_closed_form(gosset_family(), ThetaArg::from_y(y));
        CHECK(v < prev);
        prev = v;
    }
    prev = std::numeric_limits<double>::infinity();
    for (double y = 0.5; y <= 4.0; y *= std::sqrt(2.0)) {
        const double v = theta_enumerated(checkerboard_lattice(4), ThetaArg::from_y(y));
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("enumerated theta refuses past the cap instead of degrading") {
    EnumerationLimits limits;
    limits.max_points = 500;
    CHECK_THROWS_AS(
        theta_enumerated(gosset_lattice(), ThetaArg::from_y(0.25), 1e-10, limits),
        ResourceLimit);
}

TEST_CASE("sigma to y map") {
    CHECK(ThetaArg::from_sigma(1.0 / std::sqrt(2.0 * kPi)).y == doctest::Approx(1.0));
    CHECK(ThetaArg::from_sigma(1.0).y == doctest::Approx(1.0 / (2.0 * kPi)));
    CHECK(ThetaArg::from_sigma(1e6).y == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(ThetaArg::from_sigma(0.0), InvalidArgument);
}

TEST_CASE("secrecy function") {
    SUBCASE("identically 1 for the cubic family") {
        for (double y : {0.1, 0.5, 1.0, 3.0, 1e9}) {
            CHECK(secrecy_function(cubic_family(4), ThetaArg::from_y(y)) == 1.0);
        }
    }
    SUBCASE("E8 value 4/3 at y = 1") {
        CHECK(rel_err(secrecy_function(gosset_family(), ThetaArg::from_y(1.0)),
                      4.0 / 3.0) < 1e-12);
    }
    SUBCASE("D8 value 8/5 at y = 1") {
        // theta3^4 = 2 theta4^4 at y = 1 makes the ratio exactly 8/5
        CHECK(rel_err(secrecy_function(checkerboard_family(8), ThetaArg::from_y(1.0)),
                      1.6) < 1e-12);
    }
    SUBCASE("E8 is symmetric under y <-> 1/y") {
        for (double y : {0.25, 0.5, 2.0, 4.0}) {
            const double a = secrecy_function(gosset_family(), ThetaArg::from_y(y));
            const double b = secrecy_function(gosset_family(), ThetaArg::from_y(1.0 / y));
            CHECK(std::abs(a - b) < 1e-8);
        }
        CHECK(rel_err(secrecy_function(gosset_family(), ThetaArg::from_y(0.25)),
                      kXiE8AtQuarter) < 1e-12);
        CHECK(rel_err(secrecy_function(gosset_family(), ThetaArg::from_y(0.5)),
                      kXiE8AtHalf) < 1e-12);
    }
    SUBCASE("enumerated and closed-form sources agree") {
        const double via_lattice =
            secrecy_function(ThetaSource(gosset_lattice()), ThetaArg::from_y(1.0));
        CHECK(rel_err(via_lattice, 4.0 / 3.0) < 1e-9);
    }
}

TEST_CASE("secrecy gain search") {
    SUBCASE("flat for Z^n") {
        const SecrecyResult result = secrecy_gain(cubic_family(8));
        CHECK(result.gain == doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& [y, xi] : result.evaluations) {
            CHECK(xi == 1.0);
        }
    }
    SUBCASE("E8 peaks at y = 1 with gain 4/3") {
        const SecrecyResult result = secrecy_gain(gosset_family());
        CHECK_FALSE(result.boundary_warning);
        CHECK(std::abs(result.argmax_y - 1.0) < 1e-3);
        CHECK(std::abs(result.gain - 4.0 / 3.0) < 1e-6);
        // the reported gain is the max of the trace
        double best = 0.0;
        for (const auto& [y, xi] : result.evaluations) {
            best = std::max(best, xi);
        }
        CHECK(result.gain == best);
    }
    SUBCASE("D8 under the literal definition is monotone: max at the boundary") {
        // The printed ratio theta3^8 / Theta_D8 decreases from 2 (density
        // ratio at y -> 0) to 1, so the bracket maximum sits on y_lo.
        const SecrecyResult result = secrecy_gain(checkerboard_family(8));
        CHECK(result.boundary_warning);
        CHECK(result.argmax_y == doctest::Approx(1.0 / 16.0));
        CHECK(result.gain == doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("determinism") {
        const SecrecyResult a = secrecy_gain(gosset_family());
        const SecrecyResult b = secrecy_gain(gosset_family());
        CHECK(a.argmax_y == b.argmax_y);
        CHECK(a.gain == b.gain);
        CHECK(a.evaluations == b.evaluations);
    }
    SUBCASE("bad brackets are rejected") {
        SecrecySearch s;
        s.y_lo = 2.0;
        s.y_hi = 1.0;
        CHECK_THROWS_AS(secrecy_gain(gosset_family(), s), InvalidArgument);
    }
}
