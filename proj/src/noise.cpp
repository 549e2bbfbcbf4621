#include "qrep/noise.hpp"

#include <cmath>
#include <string>

namespace qrep {

void NoiseModel::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("gate reliability p must lie in [0, 1], got " +
                                std::to_string(p));
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::domain_error("measurement reliability eta must lie in [0, 1], got " +
                                std::to_string(eta));
    }
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw std::domain_error("decoherence rate kappa must be finite and >= 0, got " +
                                std::to_string(kappa));
    }
}

void PauliChannel::validate() const {
    double sum = 0.0;
    for (double q : probabilities) {
        if (!(q >= -GraphDiagonalState::norm_tolerance) || q > 1.0 + GraphDiagonalState::norm_tolerance) {
            throw std::domain_error("Pauli channel probabilities must lie in [0, 1], got " +
                                    std::to_string(q));
        }
        sum += q;
    }
    if (std::abs(sum - 1.0) > GraphDiagonalState::norm_tolerance) {
        throw std::domain_error("Pauli channel probabilities must sum to 1, got " +
                                std::to_string(sum));
    }
}

GraphDiagonalState transmit_half(const PauliChannel& channel) {
    channel.validate();
    const auto& q = channel.probabilities;
    return GraphDiagonalState({q[0], q[3], q[1], q[2]});
}

GraphDiagonalState memory_decohere(const GraphDiagonalState& s, double t,
                                   const NoiseModel& m, bool both_qubits) {
    m.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("storage time must be finite and >= 0, got " +
                                std::to_string(t));
    }
    const double q_single = std::exp(-m.kappa * t);
    const double q = both_qubits ? q_single * q_single : q_single;
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        out[i] = q * s.coeffs()[i] + (1.0 - q) / 4.0;
    }
    return GraphDiagonalState(out, s.shift());
}

}  // namespace qrep
