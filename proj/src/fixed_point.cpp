#include "qrep/fixed_point.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qrep/purify.hpp"

namespace qrep {

namespace {

double max_coeff_distance(const GraphDiagonalState& a, const GraphDiagonalState& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) {
        d = std::max(d, std::abs(a.coeffs()[i] - b.coeffs()[i]));
    }
    return d;
}

// Lower-edge detection: does regular purification from Werner fidelity f gain,
// and what does it settle to?  Shared by purifiable() and the regime scan.
struct ProbeResult {
    bool improved_early = false;  // fidelity exceeded f within the first 200 rounds
    double final_fidelity = 0.0;  // converged (or last) fidelity
};

constexpr int k_early_rounds = 200;

ProbeResult probe_regular(double f, double wait, const NoiseModel& m,
                          const FixedPointOptions& options = {}) {
    ProbeResult out;
    GraphDiagonalState state = make_werner(f);
    GraphDiagonalState previous = state;
    for (long iter = 1; iter <= options.max_iterations; ++iter) {
        state = purification_round(previous, std::nullopt, wait, m);
        if (iter <= k_early_rounds && fidelity(state) > f) out.improved_early = true;
        const bool settled = max_coeff_distance(state, previous) < options.tol;
        previous = state;
        if (settled) break;
    }
    out.final_fidelity = fidelity(state);
    return out;
}

bool probe_purifiable(double f, double wait, const NoiseModel& m) {
    const ProbeResult probe = probe_regular(f, wait, m);
    return probe.improved_early && probe.final_fidelity > f;
}

}  // namespace

GraphDiagonalState purification_round(
    const GraphDiagonalState& s,
    const std::optional<GraphDiagonalState>& elementary, double wait,
    const NoiseModel& m) {
    const GraphDiagonalState& partner = elementary ? *elementary : s;
    return memory_decohere(dejmps_noisy(s, partner, m).state, wait, m);
}

FixedPointResult iterate_fixed_point(
    const GraphDiagonalState& initial,
    const std::optional<GraphDiagonalState>& elementary, double wait,
    const NoiseModel& m, const FixedPointOptions& options) {
    if (!(options.tol > 0.0) || options.max_iterations < 1) {
        throw std::invalid_argument("fixed-point options must have tol > 0 and at least one iteration");
    }
    FixedPointResult result{initial, 0, false};
    GraphDiagonalState previous = initial;
    for (long iter = 1; iter <= options.max_iterations; ++iter) {
        result.state = purification_round(previous, elementary, wait, m);
        result.iterations = iter;
        if (max_coeff_distance(result.state, previous) < options.tol) {
            result.converged = true;
            return result;
        }
        previous = result.state;
    }
    return result;
}

GraphDiagonalState iterate_to_fixed_point(
    const GraphDiagonalState& initial,
    const std::optional<GraphDiagonalState>& elementary, double wait,
    const NoiseModel& m, const FixedPointOptions& options) {
    FixedPointResult result =
        iterate_fixed_point(initial, elementary, wait, m, options);
    if (!result.converged) {
        throw convergence_error(
            "purification iteration did not settle within " +
                std::to_string(options.max_iterations) + " rounds",
            result.state);
    }
    return result.state;
}

bool purifiable(double f, double wait, const NoiseModel& m) {
    return probe_purifiable(f, wait, m);
}

RegimeReport purification_regime(int level, const TimeModel& tm,
                                 const NoiseModel& m, double pump_fidelity) {
    tm.validate();
    m.validate();
    const double wait = tm.signal_wait_s(level);
    RegimeReport report;
    report.level = level;
    report.wait_s = wait;

    // Coarse ascending scan for the lowest purifiable Werner fidelity.  The
    // gain window, when it exists, is far wider than the grid pitch.
    constexpr double grid_lo = 0.26;
    constexpr double grid_hi = 0.985;
    constexpr double grid_step = 0.02;
    double first_true = std::numeric_limits<double>::quiet_NaN();
    double last_false = grid_lo;
    for (double f = grid_lo; f <= grid_hi; f += grid_step) {
        if (probe_purifiable(f, wait, m)) {
            first_true = f;
            break;
        }
        last_false = f;
    }
    if (std::isnan(first_true)) {
        report.empty = true;
        report.min_fidelity = std::numeric_limits<double>::quiet_NaN();
        report.max_fidelity = std::numeric_limits<double>::quiet_NaN();
        report.max_fidelity_pumping = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    // Bisect the regime's lower edge.
    double lo = last_false;
    double hi = first_true;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (probe_purifiable(mid, wait, m) ? hi : lo) = mid;
    }
    report.min_fidelity = 0.5 * (lo + hi);

    // Upper edge: the attracting fixed point reached from a high-fidelity
    // start (it attracts from above as well, so a start beyond the fixed
    // point still lands on it).
    report.max_fidelity =
        fidelity(iterate_fixed_point(make_werner(0.99), std::nullopt, wait, m).state);

    // Pumping ceiling for the given elementary supply.
    const GraphDiagonalState source = make_werner(pump_fidelity);
    report.max_fidelity_pumping =
        fidelity(iterate_fixed_point(source, source, wait, m).state);
    return report;
}

int fixed_point_level_bound(const TimeModel& tm, const NoiseModel& m,
                            int level_cap) {
    if (level_cap < 1) {
        throw std::invalid_argument("level cap must be >= 1, got " +
                                    std::to_string(level_cap));
    }
    int bound = 0;
    for (int level = 1; level <= level_cap; ++level) {
        const double wait = tm.signal_wait_s(level);
        bool nonempty = false;
        for (double f = 0.26; f <= 0.985; f += 0.02) {
            if (probe_purifiable(f, wait, m)) {
                nonempty = true;
                break;
            }
        }
        if (!nonempty) break;  // longer waits only shrink the window
        bound = level;
    }
    return bound;
}

}  // namespace qrep
