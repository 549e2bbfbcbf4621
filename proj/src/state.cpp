#include "qrep/state.hpp"

#include <cmath>
#include <string>

namespace qrep {

GraphDiagonalState::GraphDiagonalState(const std::array<double, 4>& coeffs,
                                       const std::array<int, 2>& shift)
    : coeffs_(coeffs), shift_(shift) {
    for (int bit : shift_) {
        if (bit != 0 && bit != 1) {
            throw std::invalid_argument("graph-basis shift bits must be 0 or 1, got " +
                                        std::to_string(bit));
        }
    }
    double sum = 0.0;
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("graph-basis coefficients must be finite");
        }
        // Tiny negative values are floating-point residue from subtractive maps;
        // anything beyond the normalization tolerance is a real error.
        if (c < -norm_tolerance || c > 1.0 + norm_tolerance) {
            throw std::invalid_argument("graph-basis coefficient out of [0,1]: " +
                                        std::to_string(c));
        }
        sum += c;
    }
    if (std::abs(sum - 1.0) > norm_tolerance) {
        throw std::invalid_argument("graph-basis coefficients must sum to 1, got " +
                                    std::to_string(sum));
    }
    for (double& c : coeffs_) {
        c = std::min(std::max(c, 0.0), 1.0) / sum;
    }
}

std::array<double, 4> GraphDiagonalState::coeffs_in_unshifted_basis() const {
    std::array<double, 4> out{};
    for (int k1 = 0; k1 < 2; ++k1) {
        for (int k2 = 0; k2 < 2; ++k2) {
            out[index(k1, k2)] = coeffs_[index(k1 ^ shift_[0], k2 ^ shift_[1])];
        }
    }
    return out;
}

double fidelity(const GraphDiagonalState& s) { return s.coeff(0, 0); }

GraphDiagonalState apply_shift(const GraphDiagonalState& s,
                               const std::array<int, 2>& delta) {
    for (int bit : delta) {
        if (bit != 0 && bit != 1) {
            throw std::invalid_argument("shift delta bits must be 0 or 1");
        }
    }
    // A frame relabel is pure bookkeeping: copy the state and update the
    // shift directly so the coefficients are preserved bit-exactly instead of
    // drifting by an ulp through renormalization.
    GraphDiagonalState t = s;
    t.shift_ = {s.shift()[0] ^ delta[0], s.shift()[1] ^ delta[1]};
    return t;
}

GraphDiagonalState make_werner(double f) {
    if (!(f > 0.25) || f > 1.0) {
        throw std::domain_error("Werner fidelity must lie in (1/4, 1], got " +
                                std::to_string(f));
    }
    const double rest = (1.0 - f) / 3.0;
    return GraphDiagonalState({f, rest, rest, rest});
}

WernerParams WernerParams::from_x(double x) {
    if (!(x >= -1.0 / 3.0 && x <= 1.0)) {
        throw std::domain_error("Werner weight x must lie in [-1/3, 1], got " +
                                std::to_string(x));
    }
    return WernerParams{x, (3.0 * x + 1.0) / 4.0};
}

WernerParams WernerParams::from_fidelity(double f) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw std::domain_error("Werner fidelity must lie in [0, 1], got " +
                                std::to_string(f));
    }
    return WernerParams{(4.0 * f - 1.0) / 3.0, f};
}

}  // namespace qrep
