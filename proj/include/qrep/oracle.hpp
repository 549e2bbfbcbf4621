// Independent dense density-matrix simulator used to validate the analytic
// four-coefficient maps: full 16x16 circuit simulation of purification and
// connection with the same gate/measurement/memory error model, plus the
// randomized cross-checking driver.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <utility>

#include "qrep/noise.hpp"
#include "qrep/state.hpp"

namespace qrep {

// A dense two-qubit (4x4) or multi-qubit density matrix in the computational
// basis.  Qubit 0 is the most significant index bit.
struct DenseState {
    Eigen::MatrixXcd rho;
};

// Graph-basis vector |k1,k2>_G as computational-basis amplitudes.
Eigen::Vector4cd graph_basis_vector(int k1, int k2);

// Dense 4x4 matrix of a graph-diagonal state (shift folded into the physical
// basis vectors).
DenseState make_dense(const GraphDiagonalState& s);

// Diagonal of a 4x4 density matrix in the graph basis shifted by `shift`:
// out[index(k1,k2)] = <k1^m1,k2^m2|rho|k1^m1,k2^m2>_G.
std::array<double, 4> graph_diagonal(const DenseState& s,
                                     const std::array<int, 2>& shift = {0, 0});

// One purification step simulated on the full four-qubit register, conditioned
// on the raw measurement outcome (zeta2, xi2): local basis changes, the two
// bilateral gates with the two-qubit error model, and eta-reliable z/x POVM
// readout of the sacrificed pair.  Returns the *unnormalized* surviving-pair
// matrix (its trace is the outcome probability) together with that
// probability.
std::pair<DenseState, double> dm_dejmps_step(const DenseState& a,
                                             const DenseState& b,
                                             const NoiseModel& m,
                                             const std::array<int, 2>& outcome);

// Entanglement swapping simulated on the full four-qubit register: the
// middle-station entangling gate (with the two-qubit error model) followed by
// eta-reliable x-basis readout of both middle qubits, for the announced
// correction bits (o1, o2).  Returns the unnormalized end-to-end pair (trace =
// outcome probability) and that probability.
std::pair<DenseState, double> dm_connect(const DenseState& a,
                                         const DenseState& b,
                                         const NoiseModel& m,
                                         const std::array<int, 2>& outcome);

// Projects a 4x4 matrix onto the graph-diagonal subspace by averaging over
// conjugations with {1l, K1, K2, K1*K2}.
DenseState dm_twirl(const DenseState& s);

// Storage noise on a dense pair: per qubit rho -> q*rho + (1-q)*1l/2 (x) tr,
// q = exp(-kappa*t), on both qubits (or only the first when both_qubits is
// false).
DenseState dm_memory(const DenseState& s, double t, const NoiseModel& m,
                     bool both_qubits = true);

// Uniformly random coefficient vector on the probability simplex with random
// Z-frame bits; the workhorse input generator for cross-checks.
GraphDiagonalState random_graph_diagonal(std::mt19937_64& rng);

// Result of the randomized analytic-vs-dense comparison run.  Each field is a
// maximum absolute deviation over all trials of the corresponding check.
struct OracleCheckReport {
    std::size_t trials = 0;                 // total random input pairs compared
    double max_dev_purify = 0.0;            // noisy purification, both outcome classes
    double max_dev_purify_prob = 0.0;       // success-class probability
    double max_dev_class_total = 0.0;       // |P(success) + P(failure) - 1|
    double max_dev_connect = 0.0;           // noisy connection, all four outcomes
    double max_dev_connect_prob = 0.0;      // per-outcome probability vs 1/4
    double max_dev_twirl = 0.0;             // twirl projects and is idempotent
    double max_dev_memory = 0.0;            // storage map
    double worst_deviation() const;
    bool pass(double tol) const { return worst_deviation() < tol; }
};

// Runs trials_per_setting random input pairs for every combination of
// p, eta in {1, 0.99, 0.9} and compares the analytic maps against the dense
// simulation.  inject_error deliberately mis-evaluates the analytic side (a
// small gate-reliability offset) so the harness can prove the check catches
// real discrepancies.
OracleCheckReport run_oracle_check(std::uint64_t seed,
                                   std::size_t trials_per_setting,
                                   bool inject_error = false);

}  // namespace qrep
