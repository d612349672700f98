// SPDX-License-Identifier: Apache-2.0
//
// Quantum counting: phase estimation over the Grover operator G, plus the
// classical enumeration counter that serves as its reference.
//
// Register layout for the counting circuit: data qubits 0..n-1 (low bits),
// counting qubits n..n+t-1 (high bits). Counting qubit n+j controls G^{2^j}.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsep/grover.hpp"
#include "qsep/qsim.hpp"

namespace qsep::qcount {

enum class CountMode { exact, quantum };

struct CountEstimate {
    double m_hat = 0.0;
    unsigned t_qubits = 0;        // 0 in exact mode
    double raw_phase = 0.0;       // measured counting value / 2^t
    std::uint64_t outcome = 0;    // measured counting-register value
    double error_bound = 0.0;
    CountMode mode = CountMode::exact;
};

/// Number of marked indices by full enumeration.
CountEstimate exact_count(const grover::OracleSpec& oracle);

/// n + ceil(log2(2 + 1/(2 eps))). Throws std::invalid_argument unless
/// relative_error lies in (0, 1].
unsigned counting_register_size(unsigned n_qubits, double relative_error);

/// (2 pi sqrt(m (N - m)) + pi^2 N / 2^t) / 2^t.
double counting_error_bound(double m_hat, std::uint64_t index_space, unsigned t_qubits);

/// Runs the phase-estimation circuit up to (not including) measurement and
/// returns the (n+t)-qubit state. Throws ResourceError if n + t exceeds
/// qsim::kMaxQubits.
qsim::StateVector prepare_counting_state(const grover::OracleSpec& oracle, unsigned t_qubits);

/// Measures a prepared counting state and converts the outcome to an estimate.
CountEstimate read_count(const qsim::StateVector& prepared, unsigned data_qubits,
                         unsigned t_qubits, std::uint64_t rng_seed);

/// Single-shot quantum counting.
CountEstimate quantum_count(const grover::OracleSpec& oracle, unsigned t_qubits,
                            std::uint64_t rng_seed);

/// One shot per seed, all reading the same prepared state. Equivalent to
/// calling quantum_count once per seed.
std::vector<CountEstimate> quantum_count_shots(const grover::OracleSpec& oracle, unsigned t_qubits,
                                               std::span<const std::uint64_t> rng_seeds);

/// Controlled-G with `control` on the counting register and G acting on
/// qubits 0..oracle.n_qubits()-1. Gate-level building block; the counting
/// driver uses an equivalent block-wise evaluation.
void apply_controlled_grover(qsim::StateVector& state, const grover::OracleSpec& oracle,
                             unsigned control);

}  // namespace qsep::qcount
