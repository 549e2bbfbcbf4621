#include "qrep/swap.hpp"

#include <string>

namespace qrep {

namespace {

void check_outcome(const std::array<int, 2>& outcome) {
    for (int bit : outcome) {
        if (bit != 0 && bit != 1) {
            throw std::invalid_argument("measurement outcome bits must be 0 or 1, got " +
                                        std::to_string(bit));
        }
    }
}

std::array<int, 2> connect_output_shift(const GraphDiagonalState& a,
                                        const GraphDiagonalState& b,
                                        const std::array<int, 2>& outcome) {
    return {a.shift()[0] ^ b.shift()[0] ^ outcome[0],
            a.shift()[1] ^ b.shift()[1] ^ outcome[1]};
}

// c[i1,i2] = sum_{k1,k2} l[k1^i1, k2^i2] * u[k1,k2]
std::array<double, 4> convolve(const std::array<double, 4>& l,
                               const std::array<double, 4>& u) {
    std::array<double, 4> out{};
    for (int i1 = 0; i1 < 2; ++i1) {
        for (int i2 = 0; i2 < 2; ++i2) {
            double s = 0.0;
            for (int k1 = 0; k1 < 2; ++k1) {
                for (int k2 = 0; k2 < 2; ++k2) {
                    s += l[GraphDiagonalState::index(k1 ^ i1, k2 ^ i2)] *
                         u[GraphDiagonalState::index(k1, k2)];
                }
            }
            out[GraphDiagonalState::index(i1, i2)] = s;
        }
    }
    return out;
}

}  // namespace

ConnectResult connect_perfect(const GraphDiagonalState& a,
                              const GraphDiagonalState& b,
                              const std::array<int, 2>& outcome) {
    check_outcome(outcome);
    const std::array<int, 2> shift = connect_output_shift(a, b, outcome);
    return ConnectResult{
        GraphDiagonalState(convolve(a.coeffs(), b.coeffs()), shift), shift};
}

ConnectResult connect_noisy(const GraphDiagonalState& a,
                            const GraphDiagonalState& b,
                            const std::array<int, 2>& outcome,
                            const NoiseModel& m) {
    check_outcome(outcome);
    m.validate();
    const std::array<double, 4> perfect = convolve(a.coeffs(), b.coeffs());
    std::array<double, 4> out{};
    for (int i1 = 0; i1 < 2; ++i1) {
        for (int i2 = 0; i2 < 2; ++i2) {
            double s = 0.0;
            for (int ea = 0; ea < 2; ++ea) {
                for (int eb = 0; eb < 2; ++eb) {
                    const double w = (ea ? (1.0 - m.eta) : m.eta) *
                                     (eb ? (1.0 - m.eta) : m.eta);
                    s += w * perfect[GraphDiagonalState::index(i1 ^ ea, i2 ^ eb)];
                }
            }
            out[GraphDiagonalState::index(i1, i2)] = (1.0 - m.p) / 4.0 + m.p * s;
        }
    }
    const std::array<int, 2> shift = connect_output_shift(a, b, outcome);
    return ConnectResult{GraphDiagonalState(out, shift), shift};
}

GraphDiagonalState connect_chain(const std::vector<GraphDiagonalState>& chain,
                                 const NoiseModel& m) {
    if (chain.empty()) {
        throw std::invalid_argument("cannot connect an empty chain of pairs");
    }
    GraphDiagonalState result = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i) {
        result = connect_noisy(result, chain[i], {0, 0}, m).state;
    }
    return result;
}

}  // namespace qrep
