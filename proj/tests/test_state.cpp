#include <array>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qrep/state.hpp"

using qrep::GraphDiagonalState;
using qrep::WernerParams;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool close4(const std::array<double, 4>& a, const std::array<double, 4>& b,
            double tol) {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("state") {

TEST_CASE("constructor accepts a normalized vector and stores it") {
    GraphDiagonalState s({0.4, 0.3, 0.2, 0.1}, {1, 0});
    CHECK(close4(s.coeffs(), {0.4, 0.3, 0.2, 0.1}, 1e-15));
    CHECK(s.shift()[0] == 1);
    CHECK(s.shift()[1] == 0);
    double sum = 0.0;
    for (double c : s.coeffs()) sum += c;
    CHECK(close(sum, 1.0, 1e-15));
}

TEST_CASE("constructor renormalizes deviations inside the tolerance") {
    const double eps = 2e-13;  // below norm_tolerance
    GraphDiagonalState s({0.5 + eps, 0.25, 0.15, 0.1});
    double sum = 0.0;
    for (double c : s.coeffs()) sum += c;
    CHECK(close(sum, 1.0, 1e-15));
    // Tiny negative residue is clamped to zero, not preserved.
    GraphDiagonalState t({1.0 + eps, -eps, 0.0, 0.0});
    CHECK(t.coeffs()[1] == 0.0);
    CHECK(t.coeffs()[0] <= 1.0);
}

TEST_CASE("constructor rejects invalid coefficient vectors") {
    CHECK_THROWS_AS(GraphDiagonalState({-0.1, 0.5, 0.3, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(GraphDiagonalState({0.5, 0.3, 0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(GraphDiagonalState({0.5, 0.3, 0.2, 1e-10}), std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(GraphDiagonalState({nan, 0.5, 0.25, 0.25}), std::invalid_argument);
}

TEST_CASE("constructor rejects out-of-range shift bits") {
    CHECK_THROWS_AS(GraphDiagonalState({1.0, 0.0, 0.0, 0.0}, {2, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GraphDiagonalState({1.0, 0.0, 0.0, 0.0}, {0, -1}),
                    std::invalid_argument);
}

TEST_CASE("index packs (k1,k2) as 2*k1+k2 and coeff() follows it") {
    static_assert(GraphDiagonalState::index(0, 0) == 0);
    static_assert(GraphDiagonalState::index(0, 1) == 1);
    static_assert(GraphDiagonalState::index(1, 0) == 2);
    static_assert(GraphDiagonalState::index(1, 1) == 3);
    GraphDiagonalState s({0.4, 0.3, 0.2, 0.1});
    CHECK(s.coeff(0, 0) == s.coeffs()[0]);
    CHECK(s.coeff(0, 1) == s.coeffs()[1]);
    CHECK(s.coeff(1, 0) == s.coeffs()[2]);
    CHECK(s.coeff(1, 1) == s.coeffs()[3]);
}

TEST_CASE("fidelity reads the tracked |00> coefficient regardless of shift") {
    GraphDiagonalState s({0.4, 0.3, 0.2, 0.1}, {1, 1});
    CHECK(qrep::fidelity(s) == s.coeffs()[0]);
    CHECK(close(qrep::fidelity(s), 0.4, 1e-15));
}

TEST_CASE("coeffs_in_unshifted_basis applies the XOR relabeling") {
    const std::array<double, 4> c = {0.4, 0.3, 0.2, 0.1};
    CHECK(close4(GraphDiagonalState(c, {0, 0}).coeffs_in_unshifted_basis(),
                 {0.4, 0.3, 0.2, 0.1}, 1e-15));
    CHECK(close4(GraphDiagonalState(c, {0, 1}).coeffs_in_unshifted_basis(),
                 {0.3, 0.4, 0.1, 0.2}, 1e-15));
    CHECK(close4(GraphDiagonalState(c, {1, 0}).coeffs_in_unshifted_basis(),
                 {0.2, 0.1, 0.4, 0.3}, 1e-15));
    CHECK(close4(GraphDiagonalState(c, {1, 1}).coeffs_in_unshifted_basis(),
                 {0.1, 0.2, 0.3, 0.4}, 1e-15));
}

TEST_CASE("apply_shift XORs frame bits and keeps coefficients") {
    GraphDiagonalState s({0.4, 0.3, 0.2, 0.1}, {1, 0});
    GraphDiagonalState t = qrep::apply_shift(s, {1, 1});
    CHECK(t.shift() == std::array<int, 2>{0, 1});
    CHECK(t.coeffs() == s.coeffs());
    // Applying the same delta twice is the identity on the frame.
    GraphDiagonalState u = qrep::apply_shift(t, {1, 1});
    CHECK(u.shift() == s.shift());
    CHECK_THROWS_AS(qrep::apply_shift(s, {3, 0}), std::invalid_argument);
}

TEST_CASE("make_werner produces (F, (1-F)/3, (1-F)/3, (1-F)/3)") {
    GraphDiagonalState w = qrep::make_werner(0.8);
    CHECK(close(w.coeffs()[0], 0.8, 1e-15));
    CHECK(close(w.coeffs()[1], 1.0 / 15.0, 1e-15));
    CHECK(close(w.coeffs()[2], 1.0 / 15.0, 1e-15));
    CHECK(close(w.coeffs()[3], 1.0 / 15.0, 1e-15));
    CHECK(w.shift() == std::array<int, 2>{0, 0});

    GraphDiagonalState pure = qrep::make_werner(1.0);
    CHECK(close4(pure.coeffs(), {1.0, 0.0, 0.0, 0.0}, 1e-15));
}

TEST_CASE("make_werner rejects fidelities outside (1/4, 1]") {
    CHECK_THROWS_AS(qrep::make_werner(0.25), std::domain_error);
    CHECK_THROWS_AS(qrep::make_werner(0.1), std::domain_error);
    CHECK_THROWS_AS(qrep::make_werner(1.0 + 1e-9), std::domain_error);
    CHECK_THROWS_AS(qrep::make_werner(std::nan("")), std::domain_error);
}

TEST_CASE("WernerParams factories agree with F = (3x+1)/4") {
    CHECK(close(WernerParams::from_x(1.0).f, 1.0, 1e-15));
    CHECK(close(WernerParams::from_x(0.0).f, 0.25, 1e-15));
    CHECK(close(WernerParams::from_x(-1.0 / 3.0).f, 0.0, 1e-15));
    CHECK(close(WernerParams::from_fidelity(0.8).x, 2.2 / 3.0, 1e-15));
    for (double x : {-0.2, 0.0, 0.37, 0.85, 1.0}) {
        WernerParams p = WernerParams::from_x(x);
        WernerParams q = WernerParams::from_fidelity(p.f);
        CHECK(close(q.x, x, 1e-15));
        CHECK(close(q.f, p.f, 1e-15));
    }
}

TEST_CASE("WernerParams factories reject out-of-domain arguments") {
    CHECK_THROWS_AS(WernerParams::from_x(1.0 + 1e-12), std::domain_error);
    CHECK_THROWS_AS(WernerParams::from_x(-0.34), std::domain_error);
    CHECK_THROWS_AS(WernerParams::from_fidelity(-0.01), std::domain_error);
    CHECK_THROWS_AS(WernerParams::from_fidelity(1.01), std::domain_error);
}

}  // TEST_SUITE("state")
