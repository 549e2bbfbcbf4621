#include "qrep/protocols.hpp"

#include <cmath>
#include <string>

#include "qrep/purify.hpp"
#include "qrep/swap.hpp"

namespace qrep {

namespace {

constexpr double k_failure_fidelity = 0.25;

// Protocol runs stay in the reference Z-frame: connections take outcome
// (0,0) and regular rounds map frame (0,m2) to (0,m2); starting from (0,0)
// every intermediate state keeps shift (0,0).
GraphDiagonalState connect_copies(const GraphDiagonalState& s, int copies,
                                  const NoiseModel& m) {
    GraphDiagonalState out = s;
    for (int i = 1; i < copies; ++i) {
        out = connect_noisy(out, s, {0, 0}, m).state;
    }
    return out;
}

struct ProtocolRun {
    std::vector<LevelReport> reports;
    GraphDiagonalState state;
};

ProtocolRun run_standard_levels(const ProtocolSpec& spec, const TimeModel& tm,
                                const NoiseModel& m, int levels) {
    ProtocolRun run{{}, make_werner(spec.initial_f)};
    int pairs_exponent = 0;  // log2 of elementary pairs per segment pairing
    double prob_product = 1.0;
    double elapsed_units = 0.0;  // in units of t0
    for (int level = 1; level <= levels; ++level) {
        if (level >= 2) {
            run.state = connect_noisy(run.state, run.state, {0, 0}, m).state;
        }
        const int steps = spec.steps_per_level[level - 1];
        const double wait = tm.signal_wait_s(level);
        LevelReport report;
        report.level = level;
        for (int i = 0; i < steps; ++i) {
            const PurifyStepResult round = regular_round(run.state, wait, m);
            run.state = round.state;
            report.step_success_probs.push_back(round.success_prob);
            prob_product *= round.success_prob;
        }
        pairs_exponent += steps;
        elapsed_units += static_cast<double>(steps) * std::ldexp(1.0, level);
        if (level == 1) elapsed_units += steps;  // the initial generation round
        report.fidelity = fidelity(run.state);
        report.coeffs = run.state.coeffs();
        report.resources = std::ldexp(1.0, pairs_exponent) / prob_product;
        report.elapsed_s = elapsed_units * tm.t0_s;
        run.reports.push_back(std::move(report));
        if (run.reports.back().fidelity < k_failure_fidelity) break;
    }
    return run;
}

ProtocolRun run_innsbruck_levels(const ProtocolSpec& spec, const TimeModel& tm,
                                 const NoiseModel& m, int levels) {
    ProtocolRun run{{}, make_werner(spec.initial_f)};
    double t_fresh = tm.t0_s;  // delivery time of a fresh input to the current level
    double pair_cost = 1.0;    // elementary pairs per fresh input
    for (int level = 1; level <= levels; ++level) {
        const GraphDiagonalState elementary =
            level == 1 ? make_werner(spec.initial_f)
                       : connect_noisy(run.state, run.state, {0, 0}, m).state;
        const int steps = spec.steps_per_level[level - 1];
        const double signal = tm.signal_wait_s(level);
        if (level >= 2) pair_cost *= 2.0;
        const PumpResult pumped = pump(elementary, elementary, steps,
                                       t_fresh + signal, m,
                                       spec.fresh_pairs_decohere);
        run.state = pumped.state;

        double inverse_prob_sum = 0.0;
        for (double p : pumped.step_success_probs) inverse_prob_sum += 1.0 / p;
        const double t_next = steps == 0
                                  ? t_fresh + signal
                                  : (t_fresh + signal) * inverse_prob_sum + signal;
        const double finished_cost = pair_cost * (1.0 + inverse_prob_sum);

        LevelReport report;
        report.level = level;
        report.fidelity = fidelity(run.state);
        report.coeffs = run.state.coeffs();
        report.resources = finished_cost;
        report.elapsed_s = t_next;
        report.step_success_probs = pumped.step_success_probs;
        run.reports.push_back(std::move(report));

        t_fresh = t_next;
        pair_cost = finished_cost;
        if (run.reports.back().fidelity < k_failure_fidelity) break;
    }
    return run;
}

}  // namespace

void ProtocolSpec::validate() const {
    if (levels < 1) {
        throw std::invalid_argument("protocol must have at least one level, got " +
                                    std::to_string(levels));
    }
    if (steps_per_level.size() != static_cast<std::size_t>(levels)) {
        throw std::invalid_argument(
            "steps_per_level must list one entry per level (" +
            std::to_string(levels) + "), got " +
            std::to_string(steps_per_level.size()));
    }
    for (int s : steps_per_level) {
        if (s < 0 || s > 50) {
            throw std::invalid_argument("per-level step counts must lie in [0, 50], got " +
                                        std::to_string(s));
        }
    }
    if (!(initial_f > 0.25) || initial_f > 1.0) {
        throw std::invalid_argument("initial fidelity must lie in (1/4, 1], got " +
                                    std::to_string(initial_f));
    }
    if (blind_levels < 0 || blind_levels >= levels) {
        throw std::invalid_argument(
            "blind levels must leave at least one base level, got " +
            std::to_string(blind_levels) + " of " + std::to_string(levels));
    }
    if (kind == ProtocolKind::blind && blind_levels == 0) {
        throw std::invalid_argument("blind protocol requires blind_levels >= 1");
    }
    if (branching < 2) {
        throw std::invalid_argument("blind branching must be >= 2, got " +
                                    std::to_string(branching));
    }
    if (base == ProtocolKind::blind) {
        throw std::invalid_argument("the base below blind levels must be a waiting protocol");
    }
    if (forced_blind_step_prob < 0.0 || forced_blind_step_prob > 1.0) {
        throw std::invalid_argument("forced blind step probability must lie in [0, 1], got " +
                                    std::to_string(forced_blind_step_prob));
    }
}

std::vector<LevelReport> run_standard(const ProtocolSpec& spec,
                                      const TimeModel& tm, const NoiseModel& m) {
    spec.validate();
    tm.validate();
    m.validate();
    return run_standard_levels(spec, tm, m, spec.levels).reports;
}

std::vector<LevelReport> run_innsbruck(const ProtocolSpec& spec,
                                       const TimeModel& tm,
                                       const NoiseModel& m) {
    spec.validate();
    tm.validate();
    m.validate();
    return run_innsbruck_levels(spec, tm, m, spec.levels).reports;
}

namespace {

// Shared state of the strategy search: per-level best feasible outcome.
struct BestEntry {
    bool set = false;
    double fidelity = 0.0;
    std::vector<int> steps;
    GraphDiagonalState state = make_werner(0.5);
};

struct StrategySearch {
    const TimeModel* tm = nullptr;
    const NoiseModel* m = nullptr;
    std::optional<double> min_fidelity;
    int level_cap = 12;
    std::vector<BestEntry> best;  // index l-1 for level l
    std::vector<int> path;

    // Fidelity ties resolve toward the earlier (fewer-step) candidate.
    static constexpr double k_tie = 1e-9;

    void descend(int level, const GraphDiagonalState& elementary,
                 double t_fresh, int max_steps) {
        const double signal = tm->signal_wait_s(level);
        for (int steps = 1; steps <= max_steps; ++steps) {
            const PumpResult pumped =
                pump(elementary, elementary, steps, t_fresh + signal, *m, true);
            if (min_fidelity && fidelity(pumped.state) < *min_fidelity) continue;
            path.push_back(steps);
            BestEntry& entry = best[level - 1];
            if (!entry.set || fidelity(pumped.state) > entry.fidelity + k_tie) {
                entry.set = true;
                entry.fidelity = fidelity(pumped.state);
                entry.steps = path;
                entry.state = pumped.state;
            }
            if (level < level_cap) {
                double inverse_prob_sum = 0.0;
                for (double p : pumped.step_success_probs) inverse_prob_sum += 1.0 / p;
                const double t_next = (t_fresh + signal) * inverse_prob_sum + signal;
                const GraphDiagonalState next_elementary =
                    connect_noisy(pumped.state, pumped.state, {0, 0}, *m).state;
                descend(level + 1, next_elementary, t_next, steps);
            }
            path.pop_back();
        }
    }
};

}  // namespace

StrategyResult optimize_strategy(const TimeModel& tm, const NoiseModel& m,
                                 const WernerParams& initial,
                                 std::optional<double> min_fidelity,
                                 int level_cap, int max_steps_per_level) {
    tm.validate();
    m.validate();
    if (level_cap < 1 || max_steps_per_level < 1) {
        throw std::invalid_argument("strategy search needs level_cap >= 1 and max steps >= 1");
    }
    if (!(initial.f > 0.25)) {
        throw std::domain_error("strategy search needs an initial fidelity above 1/4");
    }

    StrategySearch search;
    search.tm = &tm;
    search.m = &m;
    search.min_fidelity = min_fidelity;
    search.level_cap = level_cap;
    search.best.resize(level_cap);
    search.descend(1, make_werner(initial.f), tm.t0_s, max_steps_per_level);

    // Entering level 1 must beat using elementary pairs directly; every
    // further level must beat the connect-only continuation of the current
    // best strategy.
    if (!search.best[0].set || !(search.best[0].fidelity > initial.f)) {
        return StrategyResult{0, {}, initial.f};
    }
    int level = 1;
    while (level < level_cap && search.best[level].set) {
        const GraphDiagonalState& current = search.best[level - 1].state;
        const double connect_only =
            fidelity(connect_noisy(current, current, {0, 0}, m).state);
        if (search.best[level].fidelity > connect_only) {
            ++level;
        } else {
            break;
        }
    }
    return StrategyResult{level, search.best[level - 1].steps,
                          search.best[level - 1].fidelity};
}

BlindOverhead blind_overhead(int steps_per_level, int branching,
                             int blind_levels, double p_suc) {
    if (steps_per_level < 1 || branching < 2 || blind_levels < 1) {
        throw std::invalid_argument(
            "blind overhead needs steps >= 1, branching >= 2, levels >= 1");
    }
    if (!(p_suc > 0.0) || p_suc > 1.0) {
        throw std::domain_error("per-step success probability must lie in (0, 1], got " +
                                std::to_string(p_suc));
    }
    const double attempts = std::pow(branching, blind_levels - 1) *
                            std::pow(steps_per_level, blind_levels);
    BlindOverhead out;
    out.p_tot = std::pow(p_suc, attempts);
    out.overhead = 1.0 / out.p_tot;
    out.distance_gain = std::pow(branching, blind_levels);
    return out;
}

BlindRunResult run_blind_topped(const ProtocolSpec& spec, const TimeModel& tm,
                                const NoiseModel& m) {
    spec.validate();
    tm.validate();
    m.validate();
    if (spec.kind != ProtocolKind::blind) {
        throw std::invalid_argument("run_blind_topped requires a blind protocol spec");
    }

    const int base_levels = spec.levels - spec.blind_levels;
    ProtocolSpec base_spec = spec;
    base_spec.kind = spec.base;
    base_spec.levels = base_levels;
    base_spec.steps_per_level.assign(spec.steps_per_level.begin(),
                                     spec.steps_per_level.begin() + base_levels);
    base_spec.blind_levels = 0;

    BlindRunResult result;
    ProtocolRun base_run = spec.base == ProtocolKind::innsbruck
                               ? run_innsbruck_levels(base_spec, tm, m, base_levels)
                               : run_standard_levels(base_spec, tm, m, base_levels);
    result.reports = std::move(base_run.reports);
    GraphDiagonalState state = base_run.state;
    if (static_cast<int>(result.reports.size()) != base_levels) {
        // The base run failed early; blind levels on top are moot.
        return result;
    }

    double resources = result.reports.empty() ? 1.0 : result.reports.back().resources;
    double elapsed = result.reports.empty() ? 0.0 : result.reports.back().elapsed_s;
    double attempts_product = 1.0;
    double prob_product = 1.0;
    int total_steps = 0;
    for (int j = 1; j <= spec.blind_levels; ++j) {
        const int level = base_levels + j;
        const int steps = spec.steps_per_level[level - 1];
        state = connect_copies(state, spec.branching, m);
        LevelReport report;
        report.level = level;
        double level_prob_product = 1.0;
        for (int i = 0; i < steps; ++i) {
            // Blind rounds send measurement results forward instead of
            // waiting on them, so no storage window opens.
            const PurifyStepResult round = regular_round(state, 0.0, m);
            state = round.state;
            report.step_success_probs.push_back(round.success_prob);
            level_prob_product *= round.success_prob;
        }
        prob_product *= level_prob_product;
        attempts_product *= steps;
        total_steps += steps;
        resources *= std::ldexp(1.0, steps) / level_prob_product;
        report.fidelity = fidelity(state);
        report.coeffs = state.coeffs();
        report.resources = resources;
        report.elapsed_s = elapsed;
        result.reports.push_back(std::move(report));
    }

    const double attempts =
        std::pow(spec.branching, spec.blind_levels - 1) * attempts_product;
    if (total_steps == 0) {
        result.p_tot = 1.0;
    } else if (spec.forced_blind_step_prob > 0.0) {
        result.p_tot = std::pow(spec.forced_blind_step_prob, attempts);
    } else {
        // Scale the geometric mean of the simulated per-step probabilities to
        // the closed-form attempt count.
        result.p_tot = std::pow(prob_product, attempts / total_steps);
    }
    result.overhead = 1.0 / result.p_tot;
    return result;
}

}  // namespace qrep
