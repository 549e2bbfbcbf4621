// Fixed points of purify-while-waiting iteration and the per-level
// purification-regime analysis built on them.
#pragma once

#include <optional>

#include "qrep/noise.hpp"
#include "qrep/state.hpp"
#include "qrep/time_model.hpp"

namespace qrep {

// Thrown by the strict fixed-point driver when the iteration cap is reached;
// carries the last iterate so callers can inspect how far it got.
class convergence_error : public numerical_error {
public:
    convergence_error(const std::string& message, GraphDiagonalState last)
        : numerical_error(message), last_(std::move(last)) {}
    const GraphDiagonalState& last_iterate() const { return last_; }

private:
    GraphDiagonalState last_;
};

struct FixedPointOptions {
    double tol = 1e-12;         // max-norm distance between successive iterates
    long max_iterations = 100000;
};

struct FixedPointResult {
    GraphDiagonalState state;
    long iterations = 0;
    bool converged = false;
};

// One purification round with storage noise: the working pair is purified
// against either its own ensemble (regular recurrence, no elementary) or the
// supplied partner as given (pumping with fresh pairs), and the survivor then
// decoheres for `wait` while the outcome signal travels.  States are thus
// tracked at the moment of their next use.
GraphDiagonalState purification_round(
    const GraphDiagonalState& s,
    const std::optional<GraphDiagonalState>& elementary, double wait,
    const NoiseModel& m);

// Iterates purification_round until successive states agree to within
// options.tol in every coefficient, or the iteration cap is reached (reported
// via `converged`; never throws on non-convergence).
FixedPointResult iterate_fixed_point(
    const GraphDiagonalState& initial,
    const std::optional<GraphDiagonalState>& elementary, double wait,
    const NoiseModel& m, const FixedPointOptions& options = {});

// Strict variant: returns the converged state or throws convergence_error.
GraphDiagonalState iterate_to_fixed_point(
    const GraphDiagonalState& initial,
    const std::optional<GraphDiagonalState>& elementary, double wait,
    const NoiseModel& m, const FixedPointOptions& options = {});

// Whether a Werner pair of fidelity f gains from regular purification under
// the given waiting time: its fidelity must rise above f within the first 200
// rounds *and* the iteration must settle above f.
bool purifiable(double f, double wait, const NoiseModel& m);

// Working regime of regular purification at one repeater level (per-round
// wait 2^(level-1)*t0).  min/max bound the fidelity window where purification
// gains; max_fidelity_pumping is the fixed point of pumping a stored pair
// with fresh pairs of fidelity pump_fidelity.  All fidelities are quoted for
// the pair as available at its next use, i.e. after the round's signal wait.
// When no Werner input is purifiable at this level, `empty` is set and the
// three fidelities are NaN.
struct RegimeReport {
    int level = 0;
    double wait_s = 0.0;
    bool empty = false;
    double min_fidelity = 0.0;
    double max_fidelity = 0.0;
    double max_fidelity_pumping = 0.0;
};

RegimeReport purification_regime(int level, const TimeModel& tm,
                                 const NoiseModel& m,
                                 double pump_fidelity = 0.8);

// Largest level (up to level_cap) whose regular-purification regime is
// nonempty; 0 when even level 1 is empty.  This is the decoherence-imposed
// ceiling no amount of purification can beat.
int fixed_point_level_bound(const TimeModel& tm, const NoiseModel& m,
                            int level_cap = 12);

}  // namespace qrep
