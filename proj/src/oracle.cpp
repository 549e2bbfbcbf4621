#include "qrep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qrep/purify.hpp"
#include "qrep/swap.hpp"

namespace qrep {

namespace {

using cmat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

const cplx k_i(0.0, 1.0);

// Qubit 0 is the most significant index bit.
int bit_of(int value, int qubit, int n_qubits) {
    return (value >> (n_qubits - 1 - qubit)) & 1;
}

// Packs the bits of `index` at the listed qubit positions (in list order,
// most significant first) into a small integer.
int extract_bits(int index, const std::vector<int>& positions, int n_qubits) {
    int out = 0;
    for (int q : positions) out = (out << 1) | bit_of(index, q, n_qubits);
    return out;
}

cmat kron(const cmat& a, const cmat& b) {
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

cmat single_qubit_op(const Eigen::Matrix2cd& u, int qubit, int n_qubits) {
    cmat out = cmat::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
        out = kron(out, q == qubit ? cmat(u) : cmat(Eigen::Matrix2cd::Identity()));
    }
    return out;
}

cmat cnot(int control, int target, int n_qubits) {
    const int dim = 1 << n_qubits;
    cmat out = cmat::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        int image = j;
        if (bit_of(j, control, n_qubits)) image ^= 1 << (n_qubits - 1 - target);
        out(image, j) = 1.0;
    }
    return out;
}

cmat cz(int q1, int q2, int n_qubits) {
    const int dim = 1 << n_qubits;
    cmat out = cmat::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const bool both = bit_of(j, q1, n_qubits) && bit_of(j, q2, n_qubits);
        out(j, j) = both ? -1.0 : 1.0;
    }
    return out;
}

// Traces out every qubit not listed in `keep` (ascending order preserved).
cmat partial_trace_keep(const cmat& rho, const std::vector<int>& keep,
                        int n_qubits) {
    std::vector<int> rest;
    for (int q = 0; q < n_qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    }
    const int kd = 1 << keep.size();
    const int rd = 1 << rest.size();
    auto assemble = [&](int kept_bits, int rest_bits) {
        int index = 0;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            const int bit = (kept_bits >> (keep.size() - 1 - j)) & 1;
            index |= bit << (n_qubits - 1 - keep[j]);
        }
        for (std::size_t j = 0; j < rest.size(); ++j) {
            const int bit = (rest_bits >> (rest.size() - 1 - j)) & 1;
            index |= bit << (n_qubits - 1 - rest[j]);
        }
        return index;
    };
    cmat out = cmat::Zero(kd, kd);
    for (int r = 0; r < kd; ++r) {
        for (int c = 0; c < kd; ++c) {
            cplx sum = 0.0;
            for (int t = 0; t < rd; ++t) sum += rho(assemble(r, t), assemble(c, t));
            out(r, c) = sum;
        }
    }
    return out;
}

// (1/2^k) * 1l_{listed qubits} (x) tr_{listed}(rho), reassembled in the
// original qubit ordering.
cmat replace_with_identity(const cmat& rho, const std::vector<int>& qubits,
                           int n_qubits) {
    std::vector<int> keep;
    for (int q = 0; q < n_qubits; ++q) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end())
            keep.push_back(q);
    }
    const cmat reduced = partial_trace_keep(rho, keep, n_qubits);
    const int dim = 1 << n_qubits;
    const double weight = 1.0 / static_cast<double>(1 << qubits.size());
    cmat out = cmat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (extract_bits(i, qubits, n_qubits) != extract_bits(j, qubits, n_qubits))
                continue;
            out(i, j) = weight * reduced(extract_bits(i, keep, n_qubits),
                                         extract_bits(j, keep, n_qubits));
        }
    }
    return out;
}

// Two-qubit gate with reliability p: p*U rho U^dag + (1-p)*(flat pair (x) rest).
cmat apply_noisy_gate(const cmat& rho, const cmat& u,
                      const std::vector<int>& pair, double p, int n_qubits) {
    const cmat ideal = u * rho * u.adjoint();
    if (p >= 1.0) return ideal;
    return p * ideal + (1.0 - p) * replace_with_identity(rho, pair, n_qubits);
}

Eigen::Matrix2cd povm_z(int outcome, double eta) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    out(0, 0) = outcome == 0 ? eta : 1.0 - eta;
    out(1, 1) = outcome == 0 ? 1.0 - eta : eta;
    return out;
}

Eigen::Matrix2cd povm_x(int outcome, double eta) {
    Eigen::Matrix2cd h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    return h * povm_z(outcome, eta) * h;
}

// Applies the POVM element on one qubit and discards it; the returned matrix
// is unnormalized with trace equal to the outcome probability.
cmat measure_discard(const cmat& rho, int qubit, const Eigen::Matrix2cd& povm,
                     int n_qubits) {
    const cmat weighted = single_qubit_op(povm, qubit, n_qubits) * rho;
    std::vector<int> keep;
    for (int q = 0; q < n_qubits; ++q) {
        if (q != qubit) keep.push_back(q);
    }
    return partial_trace_keep(weighted, keep, n_qubits);
}

cmat dense_from_coeffs(const std::array<double, 4>& coeffs,
                       const std::array<int, 2>& shift) {
    cmat out = cmat::Zero(4, 4);
    for (int k1 = 0; k1 < 2; ++k1) {
        for (int k2 = 0; k2 < 2; ++k2) {
            const Eigen::Vector4cd g = graph_basis_vector(k1 ^ shift[0], k2 ^ shift[1]);
            out += coeffs[GraphDiagonalState::index(k1, k2)] * (g * g.adjoint());
        }
    }
    return out;
}

double max_abs(const cmat& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::Vector4cd graph_basis_vector(int k1, int k2) {
    if ((k1 & ~1) || (k2 & ~1)) {
        throw std::invalid_argument("graph basis labels must be 0 or 1");
    }
    // Common eigenvectors of K1 = X(x)Z and K2 = Z(x)X with eigenvalues
    // ((-1)^k1, (-1)^k2); amplitudes over |00>,|01>,|10>,|11>.
    static const double table[4][4] = {
        {1.0, 1.0, 1.0, -1.0},   // |00>_G
        {1.0, -1.0, 1.0, 1.0},   // |01>_G
        {1.0, 1.0, -1.0, 1.0},   // |10>_G
        {1.0, -1.0, -1.0, -1.0}, // |11>_G
    };
    Eigen::Vector4cd g;
    for (int j = 0; j < 4; ++j) g(j) = 0.5 * table[GraphDiagonalState::index(k1, k2)][j];
    return g;
}

DenseState make_dense(const GraphDiagonalState& s) {
    return DenseState{dense_from_coeffs(s.coeffs(), s.shift())};
}

std::array<double, 4> graph_diagonal(const DenseState& s,
                                     const std::array<int, 2>& shift) {
    std::array<double, 4> out{};
    for (int k1 = 0; k1 < 2; ++k1) {
        for (int k2 = 0; k2 < 2; ++k2) {
            const Eigen::Vector4cd g = graph_basis_vector(k1 ^ shift[0], k2 ^ shift[1]);
            out[GraphDiagonalState::index(k1, k2)] = (g.adjoint() * s.rho * g)(0, 0).real();
        }
    }
    return out;
}

std::pair<DenseState, double> dm_dejmps_step(const DenseState& a,
                                             const DenseState& b,
                                             const NoiseModel& m,
                                             const std::array<int, 2>& outcome) {
    m.validate();
    // Register order (A1, B1, A2, B2) = qubits (0, 1, 2, 3): pair `a` is kept,
    // pair `b` is sacrificed.
    cmat rho = kron(a.rho, b.rho);

    // Local basis changes (perfect single-qubit operations): on the A side
    // (1l - i*sx)/sqrt(2), on the B side (1l + i*sz)/sqrt(2).
    Eigen::Matrix2cd u_a, u_b;
    u_a << 1.0, -k_i, -k_i, 1.0;
    u_a /= std::sqrt(2.0);
    u_b << 1.0 + k_i, 0.0, 0.0, 1.0 - k_i;
    u_b /= std::sqrt(2.0);
    const cmat basis_change = single_qubit_op(u_a, 0, 4) * single_qubit_op(u_b, 1, 4) *
                              single_qubit_op(u_a, 2, 4) * single_qubit_op(u_b, 3, 4);
    rho = basis_change * rho * basis_change.adjoint();

    // Bilateral entangling gates with the two-qubit error model: A1 -> A2 and
    // B2 -> B1.
    rho = apply_noisy_gate(rho, cnot(0, 2, 4), {0, 2}, m.p, 4);
    rho = apply_noisy_gate(rho, cnot(3, 1, 4), {1, 3}, m.p, 4);

    // Readout of the sacrificed pair: z on A2, x on B2, each eta-reliable.
    const cmat rho3 = measure_discard(rho, 2, povm_z(outcome[0], m.eta), 4);
    const cmat rho2 = measure_discard(rho3, 2, povm_x(outcome[1], m.eta), 3);
    const double prob = rho2.trace().real();
    return {DenseState{rho2}, prob};
}

std::pair<DenseState, double> dm_connect(const DenseState& a,
                                         const DenseState& b,
                                         const NoiseModel& m,
                                         const std::array<int, 2>& outcome) {
    m.validate();
    // Register order (A1, B1, B2, C1) = qubits (0, 1, 2, 3); the middle
    // station holds B1 and B2.
    cmat rho = kron(a.rho, b.rho);
    rho = apply_noisy_gate(rho, cz(1, 2, 4), {1, 2}, m.p, 4);
    // The announced correction bits are cross-wired: outcome[0] is the x
    // readout of B2 and outcome[1] the x readout of B1.
    const cmat rho3 = measure_discard(rho, 1, povm_x(outcome[1], m.eta), 4);
    const cmat rho2 = measure_discard(rho3, 1, povm_x(outcome[0], m.eta), 3);
    const double prob = rho2.trace().real();
    return {DenseState{rho2}, prob};
}

DenseState dm_twirl(const DenseState& s) {
    Eigen::Matrix2cd x, z;
    x << 0.0, 1.0, 1.0, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    const cmat k1 = kron(x, z);
    const cmat k2 = kron(z, x);
    const cmat k12 = k1 * k2;
    cmat out = s.rho;
    out += k1 * s.rho * k1;
    out += k2 * s.rho * k2;
    out += k12 * s.rho * k12.adjoint();
    return DenseState{0.25 * out};
}

DenseState dm_memory(const DenseState& s, double t, const NoiseModel& m,
                     bool both_qubits) {
    m.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("storage time must be finite and >= 0");
    }
    const double q = std::exp(-m.kappa * t);
    cmat rho = q * s.rho + (1.0 - q) * replace_with_identity(s.rho, {0}, 2);
    if (both_qubits) {
        rho = q * rho + (1.0 - q) * replace_with_identity(rho, {1}, 2);
    }
    return DenseState{rho};
}

GraphDiagonalState random_graph_diagonal(std::mt19937_64& rng) {
    std::exponential_distribution<double> exp_dist(1.0);
    std::array<double, 4> coeffs{};
    double sum = 0.0;
    for (double& c : coeffs) {
        c = exp_dist(rng);
        sum += c;
    }
    for (double& c : coeffs) c /= sum;
    std::bernoulli_distribution bit(0.5);
    return GraphDiagonalState(coeffs, {bit(rng) ? 1 : 0, bit(rng) ? 1 : 0});
}

double OracleCheckReport::worst_deviation() const {
    return std::max({max_dev_purify, max_dev_purify_prob, max_dev_class_total,
                     max_dev_connect, max_dev_connect_prob, max_dev_twirl,
                     max_dev_memory});
}

OracleCheckReport run_oracle_check(std::uint64_t seed,
                                   std::size_t trials_per_setting,
                                   bool inject_error) {
    OracleCheckReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> wait_dist(0.0, 2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double settings[] = {1.0, 0.99, 0.9};
    for (double p : settings) {
        for (double eta : settings) {
            const NoiseModel m{p, eta, 1.0};
            // The deliberately broken comparison model offsets the gate
            // reliability, a discrepancy the check must flag.
            NoiseModel m_cmp = m;
            if (inject_error) m_cmp.p += (m.p > 0.9995 ? -5e-4 : 5e-4);
            for (std::size_t trial = 0; trial < trials_per_setting; ++trial) {
                const GraphDiagonalState a = random_graph_diagonal(rng);
                const GraphDiagonalState b = random_graph_diagonal(rng);
                const DenseState da = make_dense(a);
                const DenseState db = make_dense(b);

                // Purification: group the four raw outcomes into the kept and
                // discarded classes.  Success means the measured parity equals
                // the one dictated by the input Z-frames.
                const int frame_parity = a.shift()[0] ^ a.shift()[1] ^
                                         b.shift()[0] ^ b.shift()[1];
                cmat class_rho[2] = {cmat::Zero(4, 4), cmat::Zero(4, 4)};
                double class_prob[2] = {0.0, 0.0};
                for (int z2 = 0; z2 < 2; ++z2) {
                    for (int x2 = 0; x2 < 2; ++x2) {
                        auto [out, pr] = dm_dejmps_step(da, db, m, {z2, x2});
                        const int cls = z2 ^ x2 ^ frame_parity;
                        class_rho[cls] += out.rho;
                        class_prob[cls] += pr;
                    }
                }
                const PurifyStepResult kept = dejmps_noisy(a, b, m_cmp);
                rep.max_dev_purify = std::max(
                    rep.max_dev_purify,
                    max_abs(class_rho[0] -
                            kept.success_prob * make_dense(kept.state).rho));
                rep.max_dev_purify_prob = std::max(
                    rep.max_dev_purify_prob,
                    std::abs(class_prob[0] - kept.success_prob));
                const std::array<double, 4> discarded =
                    dejmps_noisy_unnormalized(a, b, m_cmp, 1);
                rep.max_dev_purify = std::max(
                    rep.max_dev_purify,
                    max_abs(class_rho[1] -
                            dense_from_coeffs(discarded, kept.state.shift())));
                rep.max_dev_class_total =
                    std::max(rep.max_dev_class_total,
                             std::abs(class_prob[0] + class_prob[1] - 1.0));

                // Connection: every outcome, each announced with probability
                // 1/4, must match the analytic map in the outcome's Z-frame.
                for (int o1 = 0; o1 < 2; ++o1) {
                    for (int o2 = 0; o2 < 2; ++o2) {
                        auto [out, pr] = dm_connect(da, db, m, {o1, o2});
                        const ConnectResult c = connect_noisy(a, b, {o1, o2}, m_cmp);
                        rep.max_dev_connect =
                            std::max(rep.max_dev_connect,
                                     max_abs(out.rho - 0.25 * make_dense(c.state).rho));
                        rep.max_dev_connect_prob =
                            std::max(rep.max_dev_connect_prob, std::abs(pr - 0.25));
                    }
                }

                // Twirl: invariant on graph-diagonal inputs; a projection
                // (idempotent, and its image is graph-diagonal) on arbitrary
                // density matrices.
                rep.max_dev_twirl =
                    std::max(rep.max_dev_twirl, max_abs(dm_twirl(da).rho - da.rho));
                cmat g(4, 4);
                for (int i = 0; i < 4; ++i) {
                    for (int j = 0; j < 4; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
                }
                cmat arbitrary = g * g.adjoint();
                arbitrary /= arbitrary.trace().real();
                const DenseState t1 = dm_twirl(DenseState{arbitrary});
                const DenseState t2 = dm_twirl(t1);
                rep.max_dev_twirl = std::max(rep.max_dev_twirl, max_abs(t2.rho - t1.rho));
                rep.max_dev_twirl = std::max(
                    rep.max_dev_twirl,
                    max_abs(t1.rho - dense_from_coeffs(graph_diagonal(t1), {0, 0})));

                // Storage noise.
                const double wait = wait_dist(rng);
                rep.max_dev_memory = std::max(
                    rep.max_dev_memory,
                    max_abs(dm_memory(da, wait, m).rho -
                            make_dense(memory_decohere(a, wait, m_cmp)).rho));

                ++rep.trials;
            }
        }
    }
    return rep;
}

}  // namespace qrep
