// Noise parameterization: gate/measurement error model, Pauli transmission
// channels, and memory dephasing-by-waiting.
#pragma once

#include <array>

#include "qrep/state.hpp"

namespace qrep {

// Error parameters shared by every imperfect operation.
//   p     — two-qubit gate reliability: O(rho) = p*O_ideal(rho) + (1-p)/4 * 1l (x) tr_pair(rho).
//   eta   — single-qubit measurement reliability: POVM elements
//           P0 = eta|0><0| + (1-eta)|1><1|, P1 = eta|1><1| + (1-eta)|0><0|
//           (and their x-basis analogues).
//   kappa — memory decoherence rate; a qubit stored for time t is depolarized
//           with weight q = exp(-kappa*t) (see memory_decohere).
// Single-qubit basis changes are treated as perfect.
struct NoiseModel {
    double p = 0.99;
    double eta = 0.99;
    double kappa = 1.0;

    // Throws std::domain_error unless p, eta lie in [0,1] and kappa >= 0.
    void validate() const;
};

// A Pauli (diagonal) single-pair channel: probabilities (p0, p1, p2, p3) of
// applying (1l, sx, sy, sz) to the transmitted qubit.
struct PauliChannel {
    std::array<double, 4> probabilities{1.0, 0.0, 0.0, 0.0};

    // Throws std::domain_error unless the entries are a probability vector
    // (within the state normalization tolerance).
    void validate() const;
};

// Sends one qubit of a perfect graph-basis pair |00>_G through the channel.
// The result stays graph-diagonal; in tracked order the coefficients are
// (p0, p3, p1, p2): a sz flip toggles k2 only, sx toggles k1 only, and
// sy = i*sx*sz toggles both.
GraphDiagonalState transmit_half(const PauliChannel& channel);

// Storage for time t in imperfect memory.  Per qubit the map is
// D(rho) = q*rho + (1-q)*1l/2, q = exp(-kappa*t).  Applied to both qubits of a
// graph-diagonal pair (the default), the coefficients contract toward the
// maximally mixed point: l -> q^2 l + (1-q^2)/4, because every cross term of a
// maximally entangled state's depolarization is already flat.  With
// both_qubits=false only one qubit is stored imperfectly and the contraction
// weight is q instead of q^2.
GraphDiagonalState memory_decohere(const GraphDiagonalState& s, double t,
                                   const NoiseModel& m, bool both_qubits = true);

}  // namespace qrep
