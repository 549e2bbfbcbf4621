// Entanglement swapping (connection) of adjacent graph-diagonal pairs, with
// perfect and noisy middle-station measurements.
#pragma once

#include <vector>

#include "qrep/noise.hpp"
#include "qrep/state.hpp"

namespace qrep {

struct ConnectResult {
    GraphDiagonalState state;      // the connected long-distance pair
    std::array<int, 2> new_shift;  // == state.shift()
};

// Connects pair a (shift (m1,m2)) with pair b (shift (n1,n2)) at their common
// middle station, conditioned on the announced two-bit outcome.  With perfect
// operations the output coefficients are the index-wise convolution
//
//   c[i1,i2] = sum_{k1,k2} l[k1^i1, k2^i2] * u[k1,k2],
//
// independent of the outcome; the outcome enters only the Z-frame, giving
// output shift (m1^n1^o1, m2^n2^o2).  Every outcome occurs with probability
// 1/4, so the connection is deterministic up to frame tracking.
ConnectResult connect_perfect(const GraphDiagonalState& a,
                              const GraphDiagonalState& b,
                              const std::array<int, 2>& outcome);

// Noisy connection: the middle-station two-qubit gate carries reliability p
// and each announced bit comes from an eta-reliable measurement, which
// convolves the perfect result with the readout-error kernel:
//
//   c[i] = (1-p)/4 + p * sum_{a,b} w(a,b) * c_perfect[i1^a, i2^b]
//   w(0,0) = eta^2,  w(0,1) = w(1,0) = eta*(1-eta),  w(1,1) = (1-eta)^2.
//
// The output is already normalized; shift bookkeeping matches the perfect
// case.  Reduces to connect_perfect at p = eta = 1.
ConnectResult connect_noisy(const GraphDiagonalState& a,
                            const GraphDiagonalState& b,
                            const std::array<int, 2>& outcome,
                            const NoiseModel& m);

// Connects a chain of pairs left to right with noisy operations, taking the
// reference outcome (0,0) at every station.  A single-element chain is
// returned unchanged; an empty chain is invalid.
GraphDiagonalState connect_chain(const std::vector<GraphDiagonalState>& chain,
                                 const NoiseModel& m);

}  // namespace qrep
