// Graph-diagonal two-qubit states: the four-coefficient representation that the
// whole engine works in, plus the Werner one-parameter family.
#pragma once

#include <array>
#include <stdexcept>

namespace qrep {

// Thrown when an otherwise well-posed computation degenerates numerically
// (zero success probability, no convergence, ...). Maps to a distinct CLI
// exit code from precondition violations, which throw std::invalid_argument
// or std::domain_error.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a purification or connection step is fed states for which the
// map's normalization vanishes (success probability numerically zero).
class degenerate_input_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

// A two-qubit state diagonal in the graph basis {|k1,k2>_G}, where the basis
// vectors are the common eigenvectors of the stabilizers K1 = X(x)Z and
// K2 = Z(x)X with eigenvalues ((-1)^k1, (-1)^k2).  In the computational basis
//
//   |00>_G = (|00>+|01>+|10>-|11>)/2,   |01>_G = (|00>-|01>+|10>+|11>)/2,
//   |10>_G = (|00>+|01>-|10>+|11>)/2,   |11>_G = (|00>-|01>-|10>-|11>)/2.
//
// Coefficients are stored in the fixed order (l00, l01, l10, l11) with
// index(k1,k2) = 2*k1 + k2.  A Z-shift (m1,m2) — the Pauli frame produced by
// probabilistic maps — relabels basis vectors without introducing phases:
// sz^m1 (x) sz^m2 |k1,k2>_G = |k1^m1, k2^m2>_G.  Coefficients are tracked in
// the *shifted* basis, so the fidelity with the nominal target is always the
// first coefficient.
class GraphDiagonalState {
public:
    // Tolerance for accepting a coefficient vector as normalized.  Deviations
    // below it are silently renormalized; anything larger is rejected.
    static constexpr double norm_tolerance = 1e-12;

    // coeffs: probabilities in tracked-basis order (l00, l01, l10, l11).
    // shift:  Z-frame bits (m1, m2), each 0 or 1.
    // Throws std::invalid_argument on negative/oversized coefficients, a sum
    // further than norm_tolerance from 1, or out-of-range shift bits.
    explicit GraphDiagonalState(const std::array<double, 4>& coeffs,
                                const std::array<int, 2>& shift = {0, 0});

    static constexpr int index(int k1, int k2) { return 2 * k1 + k2; }

    // Coefficient of |k1,k2> in the tracked (shifted) basis.
    double coeff(int k1, int k2) const { return coeffs_[index(k1, k2)]; }

    const std::array<double, 4>& coeffs() const { return coeffs_; }
    const std::array<int, 2>& shift() const { return shift_; }

    // The same state expressed in the unshifted graph basis:
    // out[index(k1,k2)] = coeffs[index(k1^m1, k2^m2)].
    std::array<double, 4> coeffs_in_unshifted_basis() const;

private:
    friend GraphDiagonalState apply_shift(const GraphDiagonalState& s,
                                          const std::array<int, 2>& delta);

    std::array<double, 4> coeffs_;
    std::array<int, 2> shift_;
};

// Fidelity with the (shift-tracked) target |00>_G: the first coefficient.
double fidelity(const GraphDiagonalState& s);

// XORs additional Z-frame bits into the state's shift.  Coefficients are
// unchanged because they are tracked relative to the shifted basis.
GraphDiagonalState apply_shift(const GraphDiagonalState& s,
                               const std::array<int, 2>& delta);

// Werner state of fidelity F: coefficients (F, (1-F)/3, (1-F)/3, (1-F)/3).
// Domain: 1/4 < F <= 1 (the purification-relevant branch); throws
// std::domain_error outside it.
GraphDiagonalState make_werner(double f);

// The Werner family parameterized either by the mixing weight x in
// rho = x |00>_G<00| + (1-x)/4 * Identity  or by the fidelity F = (3x+1)/4.
// Both fields are kept consistent by the factories.
struct WernerParams {
    double x;
    double f;

    // x in [-1/3, 1]; F = (3x+1)/4.
    static WernerParams from_x(double x);
    // F in [0, 1]; x = (4F-1)/3.
    static WernerParams from_fidelity(double f);
};

}  // namespace qrep
