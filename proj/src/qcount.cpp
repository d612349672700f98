// SPDX-License-Identifier: Apache-2.0

#include "qsep/qcount.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsep/errors.hpp"

namespace qsep::qcount {

CountEstimate exact_count(const grover::OracleSpec& oracle) {
    std::uint64_t m = 0;
    for (std::uint64_t x = 0; x < oracle.size(); ++x) m += oracle.marked(x) ? 1 : 0;
    CountEstimate est;
    est.m_hat = static_cast<double>(m);
    est.mode = CountMode::exact;
    return est;
}

unsigned counting_register_size(unsigned n_qubits, double relative_error) {
    if (!(relative_error > 0.0 && relative_error <= 1.0)) {
        throw std::invalid_argument("relative_error must lie in (0, 1]");
    }
    const double extra = std::ceil(std::log2(2.0 + 1.0 / (2.0 * relative_error)));
    return n_qubits + static_cast<unsigned>(extra);
}

double counting_error_bound(double m_hat, std::uint64_t index_space, unsigned t_qubits) {
    const double n = static_cast<double>(index_space);
    const double p = std::ldexp(1.0, static_cast<int>(t_qubits));
    const double spread = std::max(0.0, m_hat * (n - m_hat));
    return (2.0 * std::numbers::pi * std::sqrt(spread) + std::numbers::pi * std::numbers::pi * n / p) /
           p;
}

qsim::StateVector prepare_counting_state(const grover::OracleSpec& oracle, unsigned t_qubits) {
    if (t_qubits == 0) throw std::invalid_argument("counting register needs at least one qubit");
    const unsigned n = oracle.n_qubits();
    if (n + t_qubits > qsim::kMaxQubits) {
        throw ResourceError("counting needs " + std::to_string(n + t_qubits) +
                                " qubits (n=" + std::to_string(n) + ", t=" +
                                std::to_string(t_qubits) + "); the simulator limit is " +
                                std::to_string(qsim::kMaxQubits),
                            qsim::kMaxQubits);
    }
    qsim::StateVector state(n + t_qubits);
    const std::uint64_t block = std::uint64_t{1} << n;
    const std::uint64_t blocks = std::uint64_t{1} << t_qubits;

    // Counting value h switches on G^{2^j} for every set bit j, so the
    // controlled-power cascade applies G^h to data block h. Starting from
    // H on every qubit, block h therefore ends up holding 2^{-t/2} G^h |u>.
    std::vector<qsim::Amplitude> data(block, 1.0 / std::sqrt(static_cast<double>(block)));
    const double scale = 1.0 / std::sqrt(static_cast<double>(blocks));
    auto amps = state.amplitudes();
    for (std::uint64_t h = 0; h < blocks; ++h) {
        auto dst = amps.subspan(h * block, block);
        std::transform(data.begin(), data.end(), dst.begin(),
                       [scale](const qsim::Amplitude& a) { return a * scale; });
        if (h + 1 < blocks) {
            qsim::kernels::phase_flip(data, oracle.mask());
            qsim::kernels::invert_about_mean(data);
        }
    }

    std::vector<unsigned> counting(t_qubits);
    std::iota(counting.begin(), counting.end(), n);
    qsim::inverse_qft(state, counting);
    return state;
}

CountEstimate read_count(const qsim::StateVector& prepared, unsigned data_qubits,
                         unsigned t_qubits, std::uint64_t rng_seed) {
    if (prepared.n_qubits() != data_qubits + t_qubits) {
        throw std::invalid_argument("prepared state does not match the register layout");
    }
    const auto shot = qsim::measure_all(prepared, rng_seed);
    const std::uint64_t index_space = std::uint64_t{1} << data_qubits;

    CountEstimate est;
    est.mode = CountMode::quantum;
    est.t_qubits = t_qubits;
    est.outcome = shot.index >> data_qubits;
    est.raw_phase = std::ldexp(static_cast<double>(est.outcome), -static_cast<int>(t_qubits));
    // p and 1 - p fold onto the same sin^2, so the eigenphase sign is irrelevant
    const double s = std::sin(std::numbers::pi * est.raw_phase);
    est.m_hat = static_cast<double>(index_space) * s * s;
    est.error_bound = counting_error_bound(est.m_hat, index_space, t_qubits);
    return est;
}

CountEstimate quantum_count(const grover::OracleSpec& oracle, unsigned t_qubits,
                            std::uint64_t rng_seed) {
    const auto state = prepare_counting_state(oracle, t_qubits);
    return read_count(state, oracle.n_qubits(), t_qubits, rng_seed);
}

std::vector<CountEstimate> quantum_count_shots(const grover::OracleSpec& oracle, unsigned t_qubits,
                                               std::span<const std::uint64_t> rng_seeds) {
    const auto state = prepare_counting_state(oracle, t_qubits);
    std::vector<CountEstimate> out;
    out.reserve(rng_seeds.size());
    for (std::uint64_t seed : rng_seeds) {
        out.push_back(read_count(state, oracle.n_qubits(), t_qubits, seed));
    }
    return out;
}

void apply_controlled_grover(qsim::StateVector& state, const grover::OracleSpec& oracle,
                             unsigned control) {
    const unsigned n = oracle.n_qubits();
    if (control < n || control >= state.n_qubits()) {
        throw std::invalid_argument("control qubit must lie above the data register");
    }
    const std::uint64_t block = std::uint64_t{1} << n;
    const std::uint64_t ctrl = std::uint64_t{1} << control;
    auto amps = state.amplitudes();
    for (std::uint64_t base = 0; base < amps.size(); base += block) {
        if (!(base & ctrl)) continue;
        auto data = amps.subspan(base, block);
        qsim::kernels::phase_flip(data, oracle.mask());
        qsim::kernels::invert_about_mean(data);
    }
}

}  // namespace qsep::qcount
