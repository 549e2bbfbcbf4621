// Recurrence purification of graph-diagonal pairs: the two-pair protocol with
// perfect and noisy operations, plus the pumping and regular-round drivers.
#pragma once

#include <vector>

#include "qrep/noise.hpp"
#include "qrep/state.hpp"

namespace qrep {

struct PurifyStepResult {
    GraphDiagonalState state;      // normalized post-selected output
    double success_prob;           // probability of the kept outcome class
    std::array<int, 2> new_shift;  // == state.shift(), kept for convenience
};

// One purification step with perfect operations, conditioned on success.
// With input coefficient arrays l (kept pair, shift (m1,m2)) and u (sacrificed
// pair, shift (n1,n2)), the output array is
//
//   c[i1,i2] = (1/N) * sum_k1 l[k1, k1^i2] * u[k1^i1, k1^i1^i2]
//   N        = (l00+l11)(u00+u11) + (l01+l10)(u01+u10)
//
// and the output shift is (m1^n1, m1^m2).  Throws degenerate_input_error when
// N is numerically zero.
PurifyStepResult dejmps_perfect(const GraphDiagonalState& a,
                                const GraphDiagonalState& b);

// Unnormalized output coefficients of the noisy step for one outcome class.
// outcome_parity is the measured parity *relative to the success condition*:
// 0 selects the kept (success) class, 1 the discarded class.  With gate
// reliability p and measurement reliability eta,
//
//   u[i] = (1-p^2)/8
//        + p^2 * sum_a W(a ^ outcome_parity) * sum_k1 l[k1,k1^i2]*u[k1^i1,k1^i1^i2^a]
//
// where W(0) = eta^2 + (1-eta)^2 (both readouts right or both wrong) and
// W(1) = 2*eta*(1-eta) (exactly one wrong).  The two classes together carry
// total weight 1.
std::array<double, 4> dejmps_noisy_unnormalized(const GraphDiagonalState& a,
                                                const GraphDiagonalState& b,
                                                const NoiseModel& m,
                                                int outcome_parity);

// One noisy purification step conditioned on success.  Output shift follows
// the perfect step; success_prob is the total weight of the kept class.
// Reduces to dejmps_perfect at p = eta = 1.
PurifyStepResult dejmps_noisy(const GraphDiagonalState& a,
                              const GraphDiagonalState& b, const NoiseModel& m);

struct PumpResult {
    GraphDiagonalState state;
    std::vector<double> step_success_probs;
};

// Entanglement pumping: repeatedly purify a stored pair with fresh elementary
// pairs.  States are tracked at the moment they are next consumed: each round
// purifies, then the surviving pair decoheres for wait_per_step while the
// outcome signal travels and the next partner is prepared.  With
// elementary_decoheres the partner arrives aged by the same window instead of
// fresh.  steps == 0 returns the stored pair untouched.
PumpResult pump(const GraphDiagonalState& stored,
                const GraphDiagonalState& elementary, int steps,
                double wait_per_step, const NoiseModel& m,
                bool elementary_decoheres = true);

// One regular-recurrence round: purify two identically-prepared copies
// against each other, then let the survivor decohere for `wait` while the
// outcome signal travels.  The returned state is the pair as available for
// its next use.
PurifyStepResult regular_round(const GraphDiagonalState& s, double wait,
                               const NoiseModel& m);

}  // namespace qrep
