// SPDX-License-Identifier: Apache-2.0

#include "qsep/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsep/errors.hpp"

namespace qsep::grover {

namespace {

void check_register(unsigned n_qubits) {
    if (n_qubits == 0) throw std::invalid_argument("oracle needs at least one qubit");
    if (n_qubits > qsim::kMaxQubits) {
        throw ResourceError("oracle over " + std::to_string(n_qubits) +
                                " qubits exceeds the simulator limit of " +
                                std::to_string(qsim::kMaxQubits),
                            qsim::kMaxQubits);
    }
}

void check_dims(const qsim::StateVector& state, const OracleSpec& oracle) {
    if (state.n_qubits() != oracle.n_qubits()) {
        throw std::invalid_argument("state has " + std::to_string(state.n_qubits()) +
                                    " qubits but the oracle expects " +
                                    std::to_string(oracle.n_qubits()));
    }
}

}  // namespace

OracleSpec::OracleSpec(unsigned n_qubits, std::vector<std::uint8_t> mask)
    : n_qubits_(n_qubits), mask_(std::move(mask)) {}

OracleSpec::OracleSpec(unsigned n_qubits, const Predicate& marked) : n_qubits_(n_qubits) {
    check_register(n_qubits);
    const std::uint64_t size = std::uint64_t{1} << n_qubits;
    mask_.resize(size);
    for (std::uint64_t x = 0; x < size; ++x) mask_[x] = marked(x) ? 1 : 0;
}

OracleSpec OracleSpec::from_indices(unsigned n_qubits, std::span<const std::uint64_t> marked) {
    check_register(n_qubits);
    std::vector<std::uint8_t> mask(std::uint64_t{1} << n_qubits, 0);
    for (std::uint64_t x : marked) {
        if (x >= mask.size()) throw std::invalid_argument("marked index out of range");
        mask[x] = 1;
    }
    return OracleSpec(n_qubits, std::move(mask));
}

void OracleSpec::set_exact_m(std::uint64_t m) {
    if (m > size()) throw std::invalid_argument("solution count exceeds the index space");
    exact_m_ = m;
}

OracleSpec OracleSpec::complement() const {
    std::vector<std::uint8_t> flipped(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i) flipped[i] = mask_[i] ? 0 : 1;
    OracleSpec out(n_qubits_, std::move(flipped));
    if (exact_m_) out.exact_m_ = size() - *exact_m_;
    return out;
}

double success_probability(unsigned n_qubits, std::uint64_t m, std::uint64_t iterations) {
    const double n = std::ldexp(1.0, static_cast<int>(n_qubits));
    const double theta = std::asin(std::sqrt(static_cast<double>(m) / n));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
    return s * s;
}

void grover_iteration(qsim::StateVector& state, const OracleSpec& oracle) {
    check_dims(state, oracle);
    qsim::kernels::phase_flip(state.amplitudes(), oracle.mask());
    qsim::kernels::invert_about_mean(state.amplitudes());
}

GroverPlan plan(unsigned n_qubits, std::uint64_t m) {
    if (m == 0) {
        throw std::domain_error("no solutions; search undefined, use counting first");
    }
    const double n = std::ldexp(1.0, static_cast<int>(n_qubits));
    if (static_cast<double>(m) > n) throw std::invalid_argument("more solutions than indices");

    const double theta = std::asin(std::sqrt(static_cast<double>(m) / n));
    const auto k0 = static_cast<std::uint64_t>(std::floor(std::numbers::pi / (4.0 * theta)));

    GroverPlan best{k0 > 0 ? k0 - 1 : k0, theta, 0.0};
    best.predicted_success = success_probability(n_qubits, m, best.iterations);
    for (std::uint64_t k = best.iterations + 1; k <= k0 + 1; ++k) {
        const double p = success_probability(n_qubits, m, k);
        // rounding noise must not break the smallest-k tie rule
        if (p > best.predicted_success + 1e-12) best = {k, theta, p};
    }
    return best;
}

qsim::MeasurementOutcome search(const OracleSpec& oracle, std::uint64_t iterations,
                                std::uint64_t rng_seed) {
    auto state = qsim::init_uniform(oracle.n_qubits());
    for (std::uint64_t k = 0; k < iterations; ++k) grover_iteration(state, oracle);
    return qsim::measure_all(state, rng_seed);
}

double marked_probability(const qsim::StateVector& state, const OracleSpec& oracle) {
    check_dims(state, oracle);
    const auto amps = state.amplitudes();
    const auto mask = oracle.mask();
    double total = 0.0;
    for (std::uint64_t x = 0; x < amps.size(); ++x) {
        if (mask[x]) total += std::norm(amps[x]);
    }
    return total;
}

}  // namespace qsep::grover
