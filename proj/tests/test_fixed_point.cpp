#include <cmath>
#include <optional>
#include <stdexcept>

#include "doctest.h"
#include "qrep/fixed_point.hpp"
#include "qrep/noise.hpp"
#include "qrep/purify.hpp"
#include "qrep/state.hpp"
#include "qrep/time_model.hpp"

using qrep::GraphDiagonalState;
using qrep::NoiseModel;
using qrep::TimeModel;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

const NoiseModel kDefault{0.99, 0.99, 1.0};
const TimeModel kTime{0.333e-4, 10.0};

}  // namespace

TEST_SUITE("fixed_point") {

TEST_CASE("purification_round matches its two building blocks") {
    GraphDiagonalState s({0.7, 0.15, 0.1, 0.05});
    GraphDiagonalState partner = qrep::make_werner(0.8);
    const double wait = 2.0e-4;

    GraphDiagonalState regular =
        qrep::purification_round(s, std::nullopt, wait, kDefault);
    GraphDiagonalState expected_regular =
        qrep::regular_round(s, wait, kDefault).state;
    CHECK(close(regular.coeffs()[0], expected_regular.coeffs()[0], 1e-15));
    CHECK(close(regular.coeffs()[1], expected_regular.coeffs()[1], 1e-15));
    CHECK(close(regular.coeffs()[2], expected_regular.coeffs()[2], 1e-15));
    CHECK(close(regular.coeffs()[3], expected_regular.coeffs()[3], 1e-15));

    GraphDiagonalState pumping =
        qrep::purification_round(s, partner, wait, kDefault);
    GraphDiagonalState expected_pumping = qrep::memory_decohere(
        qrep::dejmps_noisy(s, partner, kDefault).state, wait, kDefault);
    for (int i = 0; i < 4; ++i) {
        CHECK(close(pumping.coeffs()[i], expected_pumping.coeffs()[i], 1e-15));
    }
}

TEST_CASE("iterate_fixed_point converges onto a genuine fixed point") {
    const double wait = kTime.signal_wait_s(1);
    qrep::FixedPointResult r = qrep::iterate_fixed_point(
        qrep::make_werner(0.99), std::nullopt, wait, kDefault);
    REQUIRE(r.converged);
    CHECK(r.iterations > 0);
    GraphDiagonalState moved =
        qrep::purification_round(r.state, std::nullopt, wait, kDefault);
    for (int i = 0; i < 4; ++i) {
        CHECK(close(moved.coeffs()[i], r.state.coeffs()[i], 1e-10));
    }
    // Level-1 regular fixed point from the high end, pinned.
    CHECK(close(qrep::fidelity(r.state), 0.985870421, 1e-8));
}

TEST_CASE("the pumping fixed point does not depend on the starting pair") {
    const double wait = kTime.signal_wait_s(2);
    GraphDiagonalState partner = qrep::make_werner(0.8);
    qrep::FixedPointResult low = qrep::iterate_fixed_point(
        qrep::make_werner(0.5), partner, wait, kDefault);
    qrep::FixedPointResult high = qrep::iterate_fixed_point(
        qrep::make_werner(0.95), partner, wait, kDefault);
    REQUIRE(low.converged);
    REQUIRE(high.converged);
    for (int i = 0; i < 4; ++i) {
        CHECK(close(low.state.coeffs()[i], high.state.coeffs()[i], 1e-10));
    }
}

TEST_CASE("the strict driver throws on non-convergence, with the last iterate") {
    qrep::FixedPointOptions tight;
    tight.tol = 1e-15;
    tight.max_iterations = 3;
    bool threw = false;
    try {
        qrep::iterate_to_fixed_point(qrep::make_werner(0.8), std::nullopt,
                                     kTime.signal_wait_s(1), kDefault, tight);
    } catch (const qrep::convergence_error& e) {
        threw = true;
        double f = qrep::fidelity(e.last_iterate());
        CHECK(f > 0.25);
        CHECK(f <= 1.0);
    }
    CHECK(threw);

    qrep::FixedPointResult soft = qrep::iterate_fixed_point(
        qrep::make_werner(0.8), std::nullopt, kTime.signal_wait_s(1), kDefault,
        tight);
    CHECK_FALSE(soft.converged);
    CHECK(soft.iterations == 3);
}

TEST_CASE("invalid iteration options are rejected") {
    qrep::FixedPointOptions bad_tol;
    bad_tol.tol = 0.0;
    CHECK_THROWS_AS(qrep::iterate_fixed_point(qrep::make_werner(0.8),
                                              std::nullopt, 1e-4, kDefault,
                                              bad_tol),
                    std::invalid_argument);
    qrep::FixedPointOptions bad_cap;
    bad_cap.max_iterations = 0;
    CHECK_THROWS_AS(qrep::iterate_fixed_point(qrep::make_werner(0.8),
                                              std::nullopt, 1e-4, kDefault,
                                              bad_cap),
                    std::invalid_argument);
}

TEST_CASE("purifiable brackets the gain window at the first level") {
    const double wait = kTime.signal_wait_s(1);
    // The level-1 window is roughly (0.5276, 0.9859).
    CHECK_FALSE(qrep::purifiable(0.51, wait, kDefault));
    CHECK(qrep::purifiable(0.55, wait, kDefault));
    CHECK(qrep::purifiable(0.90, wait, kDefault));
    // Above the attracting fixed point the iteration can only lose fidelity.
    CHECK_FALSE(qrep::purifiable(0.99, wait, kDefault));
}

TEST_CASE("nothing is purifiable once the wait is long enough") {
    const double wait = kTime.signal_wait_s(12);
    for (double f : {0.5, 0.7, 0.9, 0.98}) {
        CHECK_FALSE(qrep::purifiable(f, wait, kDefault));
    }
}

TEST_CASE("per-level regime windows, pinned against the reference run") {
    qrep::RegimeReport l1 = qrep::purification_regime(1, kTime, kDefault);
    CHECK(l1.level == 1);
    CHECK_FALSE(l1.empty);
    CHECK(close(l1.wait_s, 0.333e-4, 1e-18));
    CHECK(close(l1.min_fidelity, 0.52754364, 5e-6));
    CHECK(close(l1.max_fidelity, 0.985870421, 1e-8));
    CHECK(close(l1.max_fidelity_pumping, 0.882761525, 1e-8));

    qrep::RegimeReport l6 = qrep::purification_regime(6, kTime, kDefault);
    CHECK(close(l6.min_fidelity, 0.529184875, 5e-6));
    CHECK(close(l6.max_fidelity, 0.983019522, 1e-8));
    CHECK(close(l6.max_fidelity_pumping, 0.880533639, 1e-8));

    qrep::RegimeReport l11 = qrep::purification_regime(11, kTime, kDefault);
    CHECK(close(l11.min_fidelity, 0.596323547, 5e-6));
    CHECK(close(l11.max_fidelity, 0.880418305, 1e-8));
    CHECK(close(l11.max_fidelity_pumping, 0.812611227, 1e-8));
    CHECK(close(l11.wait_s, 1024 * 0.333e-4, 1e-15));
}

TEST_CASE("the twelfth level is empty under the default parameters") {
    qrep::RegimeReport l12 = qrep::purification_regime(12, kTime, kDefault);
    CHECK(l12.empty);
    CHECK(std::isnan(l12.min_fidelity));
    CHECK(std::isnan(l12.max_fidelity));
    CHECK(std::isnan(l12.max_fidelity_pumping));
}

TEST_CASE("the window shrinks monotonically with the level") {
    double prev_min = 0.0;
    double prev_max = 1.0;
    double prev_pump = 1.0;
    for (int level = 1; level <= 11; ++level) {
        qrep::RegimeReport r = qrep::purification_regime(level, kTime, kDefault);
        REQUIRE_FALSE(r.empty);
        CHECK(r.min_fidelity > prev_min);
        CHECK(r.max_fidelity < prev_max);
        CHECK(r.max_fidelity_pumping < prev_pump);
        CHECK(r.min_fidelity < r.max_fidelity_pumping);
        CHECK(r.max_fidelity_pumping < r.max_fidelity);
        prev_min = r.min_fidelity;
        prev_max = r.max_fidelity;
        prev_pump = r.max_fidelity_pumping;
    }
}

TEST_CASE("fixed_point_level_bound finds the decoherence ceiling") {
    CHECK(qrep::fixed_point_level_bound(kTime, kDefault) == 11);
    CHECK(qrep::fixed_point_level_bound(kTime, kDefault, 5) == 5);
    NoiseModel fast_memory{0.99, 0.99, 10.0};
    CHECK(qrep::fixed_point_level_bound(kTime, fast_memory) == 8);
    CHECK_THROWS_AS(qrep::fixed_point_level_bound(kTime, kDefault, 0),
                    std::invalid_argument);
}

}  // TEST_SUITE("fixed_point")
