// Full repeater protocols: nested purify-and-connect with waiting, the
// memory-banking variant, per-level strategy optimization, and blind
// (measure-forward) operation of the top levels.
#pragma once

#include <optional>
#include <vector>

#include "qrep/noise.hpp"
#include "qrep/state.hpp"
#include "qrep/time_model.hpp"

namespace qrep {

enum class ProtocolKind {
    standard,   // regular recurrence at every level, wait for signals
    innsbruck,  // entanglement pumping with banked pairs
    blind,      // blind top levels stacked on one of the above
};

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::standard;
    int levels = 1;                    // repeater nesting depth n
    std::vector<int> steps_per_level;  // M_l, one entry per level
    double initial_f = 0.8;            // elementary-pair Werner fidelity

    // Blind-mode stacking (kind == blind): the top blind_levels levels run
    // without waiting for outcome signals, on top of `base` for the rest.
    int blind_levels = 0;
    int branching = 2;        // pairs merged per blind connection (L)
    ProtocolKind base = ProtocolKind::standard;
    // When > 0, blind bookkeeping assumes this uniform per-step success
    // probability instead of the simulated ones (analysis knob).
    double forced_blind_step_prob = 0.0;

    // Memory banking: whether fresh pairs decohere alongside the banked pair
    // while signals travel.
    bool fresh_pairs_decohere = true;

    void validate() const;
};

struct LevelReport {
    int level = 0;
    double fidelity = 0.0;
    std::array<double, 4> coeffs{};  // full graph-diagonal output
    double resources = 1.0;          // see the per-protocol conventions below
    double elapsed_s = 0.0;
    std::vector<double> step_success_probs;
};

// Nested standard protocol: level 1 purifies elementary pairs with M_1
// regular rounds (per-round wait t0); level l >= 2 connects two level-(l-1)
// outputs and purifies with M_l rounds at per-round wait 2^(l-1)*t0.
// resources(l) = 2^(sum of M up to l) / product of all step success
// probabilities — the expected elementary-pair count per segment-1 pairing.
// elapsed(l) = (sum_{l'<=l} M_l' * 2^l' + M_1) * t0.  A level whose output
// fidelity falls below 1/4 is recorded and processing stops there.
std::vector<LevelReport> run_standard(const ProtocolSpec& spec,
                                      const TimeModel& tm, const NoiseModel& m);

// Memory-banking protocol: each level pumps a banked pair with fresh ones
// delivered by the levels below.  The per-round decoherence window is
// D(l) = T_fresh(l) + 2^(l-1)*t0, where T_fresh — the mean delivery time of a
// fresh level-l input — follows
//   T_fresh(1)   = t0,
//   T_fresh(l+1) = sum_i [T_fresh(l) + 2^(l-1)*t0] / p_i^{[l]} + 2^(l-1)*t0
// (for M_l = 0 the level passes through: T_fresh(l+1) = T_fresh(l) +
// 2^(l-1)*t0).  elapsed(l) = T_fresh(l+1).  resources(l) estimates the
// expected elementary pairs consumed per finished level-l pair:
// E(1) = 1 + sum_i 1/p_i^{[1]}, E(l) = 2*E(l-1)*(1 + sum_i 1/p_i^{[l]}),
// counting geometric per-step restarts.
std::vector<LevelReport> run_innsbruck(const ProtocolSpec& spec,
                                       const TimeModel& tm,
                                       const NoiseModel& m);

// The best purification strategy under banking, and the highest level worth
// operating.  Searches step vectors with 1 <= M_{l+1} <= M_l <=
// max_steps_per_level; a level is only entered while purification still beats
// plain connection: with X the best strategy at level l, the search advances
// iff some strategy reaches a level-(l+1) fidelity above that of X's
// connect-only continuation.  min_fidelity, when set, additionally requires
// every level of a candidate strategy to end at or above the threshold.
// Returns level 0 (empty steps, fidelity = initial.f) when even level 1
// offers no gain.
struct StrategyResult {
    int max_level = 0;
    std::vector<int> steps;
    double fidelity = 0.0;
};

StrategyResult optimize_strategy(const TimeModel& tm, const NoiseModel& m,
                                 const WernerParams& initial,
                                 std::optional<double> min_fidelity = {},
                                 int level_cap = 12,
                                 int max_steps_per_level = 6);

// Closed-form cost of running the top m levels blind with M purification
// steps per level and branching L: purification consumes A = L^(m-1) * M^m
// probabilistic steps whose outcomes all have to land right for the final
// state to be the nominal one, so p_tot = p_suc^A, overhead = 1/p_tot, and
// the span grows by L^m.
struct BlindOverhead {
    double p_tot = 1.0;
    double overhead = 1.0;
    double distance_gain = 1.0;
};

BlindOverhead blind_overhead(int steps_per_level, int branching,
                             int blind_levels, double p_suc);

// Runs spec.base over the lower levels, then stacks spec.blind_levels blind
// levels: each merges `branching` copies and purifies with zero waiting (no
// signal round-trips).  p_tot generalizes the closed form to non-uniform
// per-step success probabilities by scaling their geometric mean to
// A = L^(m-1) * prod_j M_j attempts.
struct BlindRunResult {
    std::vector<LevelReport> reports;
    double p_tot = 1.0;
    double overhead = 1.0;
};

BlindRunResult run_blind_topped(const ProtocolSpec& spec, const TimeModel& tm,
                                const NoiseModel& m);

}  // namespace qrep
