#include "qrep/purify.hpp"

#include <cmath>
#include <string>

namespace qrep {

namespace {

constexpr double k_degenerate_norm = 1e-15;

// sum_k1 l[k1, k1^i2] * u[k1^i1, k1^i1^i2^a]
double correlation_sum(const std::array<double, 4>& l,
                       const std::array<double, 4>& u, int i1, int i2, int a) {
    double s = 0.0;
    for (int k1 = 0; k1 < 2; ++k1) {
        const int li = GraphDiagonalState::index(k1, k1 ^ i2);
        const int ui = GraphDiagonalState::index(k1 ^ i1, k1 ^ i1 ^ i2 ^ a);
        s += l[li] * u[ui];
    }
    return s;
}

std::array<int, 2> purify_output_shift(const GraphDiagonalState& a,
                                       const GraphDiagonalState& b) {
    const int m1 = a.shift()[0], m2 = a.shift()[1];
    const int n1 = b.shift()[0];
    return {m1 ^ n1, m1 ^ m2};
}

PurifyStepResult normalize_step(std::array<double, 4> unnormalized,
                                const std::array<int, 2>& shift) {
    double n = 0.0;
    for (double c : unnormalized) n += c;
    if (!(n > k_degenerate_norm)) {
        throw degenerate_input_error(
            "purification step has numerically zero success probability (N = " +
            std::to_string(n) + ")");
    }
    for (double& c : unnormalized) c /= n;
    return PurifyStepResult{GraphDiagonalState(unnormalized, shift), n, shift};
}

}  // namespace

PurifyStepResult dejmps_perfect(const GraphDiagonalState& a,
                                const GraphDiagonalState& b) {
    std::array<double, 4> out{};
    for (int i1 = 0; i1 < 2; ++i1) {
        for (int i2 = 0; i2 < 2; ++i2) {
            out[GraphDiagonalState::index(i1, i2)] =
                correlation_sum(a.coeffs(), b.coeffs(), i1, i2, 0);
        }
    }
    return normalize_step(out, purify_output_shift(a, b));
}

std::array<double, 4> dejmps_noisy_unnormalized(const GraphDiagonalState& a,
                                                const GraphDiagonalState& b,
                                                const NoiseModel& m,
                                                int outcome_parity) {
    m.validate();
    if (outcome_parity != 0 && outcome_parity != 1) {
        throw std::invalid_argument("outcome parity must be 0 or 1, got " +
                                    std::to_string(outcome_parity));
    }
    // Parity-preserving vs parity-flipping readout-error weights.
    const double w_same = m.eta * m.eta + (1.0 - m.eta) * (1.0 - m.eta);
    const double w_flip = 2.0 * m.eta * (1.0 - m.eta);
    const double p2 = m.p * m.p;
    std::array<double, 4> out{};
    for (int i1 = 0; i1 < 2; ++i1) {
        for (int i2 = 0; i2 < 2; ++i2) {
            double v = (1.0 - p2) / 8.0;
            for (int cls = 0; cls < 2; ++cls) {
                const double w = ((cls ^ outcome_parity) == 0) ? w_same : w_flip;
                v += p2 * w * correlation_sum(a.coeffs(), b.coeffs(), i1, i2, cls);
            }
            out[GraphDiagonalState::index(i1, i2)] = v;
        }
    }
    return out;
}

PurifyStepResult dejmps_noisy(const GraphDiagonalState& a,
                              const GraphDiagonalState& b, const NoiseModel& m) {
    return normalize_step(dejmps_noisy_unnormalized(a, b, m, 0),
                          purify_output_shift(a, b));
}

PumpResult pump(const GraphDiagonalState& stored,
                const GraphDiagonalState& elementary, int steps,
                double wait_per_step, const NoiseModel& m,
                bool elementary_decoheres) {
    if (steps < 0) {
        throw std::invalid_argument("pump step count must be >= 0, got " +
                                    std::to_string(steps));
    }
    PumpResult result{stored, {}};
    if (steps == 0) return result;
    const GraphDiagonalState fresh =
        elementary_decoheres ? memory_decohere(elementary, wait_per_step, m)
                             : elementary;
    for (int i = 0; i < steps; ++i) {
        PurifyStepResult step = dejmps_noisy(result.state, fresh, m);
        result.state = memory_decohere(step.state, wait_per_step, m);
        result.step_success_probs.push_back(step.success_prob);
    }
    return result;
}

PurifyStepResult regular_round(const GraphDiagonalState& s, double wait,
                               const NoiseModel& m) {
    PurifyStepResult step = dejmps_noisy(s, s, m);
    step.state = memory_decohere(step.state, wait, m);
    return step;
}

}  // namespace qrep
