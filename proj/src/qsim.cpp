// SPDX-License-Identifier: Apache-2.0

#include "qsep/qsim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "qsep/errors.hpp"

namespace qsep::qsim {

namespace {

void check_qubit(const StateVector& state, unsigned q) {
    if (q >= state.n_qubits()) {
        throw std::invalid_argument("qubit " + std::to_string(q) + " out of range for a " +
                                    std::to_string(state.n_qubits()) + "-qubit register");
    }
}

void check_targets(const StateVector& state, std::span<const unsigned> targets) {
    if (targets.empty()) throw std::invalid_argument("QFT needs at least one target qubit");
    std::uint64_t seen = 0;
    for (unsigned q : targets) {
        check_qubit(state, q);
        if (seen & (std::uint64_t{1} << q)) {
            throw std::invalid_argument("duplicate QFT target qubit " + std::to_string(q));
        }
        seen |= std::uint64_t{1} << q;
    }
}

}  // namespace

StateVector::StateVector(unsigned n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0) throw std::invalid_argument("register needs at least one qubit");
    if (n_qubits > kMaxQubits) {
        throw ResourceError("register of " + std::to_string(n_qubits) +
                                " qubits exceeds the simulator limit of " +
                                std::to_string(kMaxQubits) + " qubits",
                            kMaxQubits);
    }
    amps_.assign(std::uint64_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(unsigned n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.size()) throw std::invalid_argument("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
    const std::uint64_t len = amps.size();
    if (len < 2 || (len & (len - 1)) != 0) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    unsigned n = 0;
    while ((std::uint64_t{1} << n) < len) ++n;
    StateVector s(n);
    double norm = 0.0;
    for (const auto& a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("non-finite amplitude");
        }
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > 1e-10) throw std::invalid_argument("amplitudes are not normalized");
    s.amps_ = std::move(amps);
    return s;
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

StateVector init_uniform(unsigned n_qubits) {
    StateVector s(n_qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.size()));
    for (auto& amp : s.amplitudes()) amp = a;
    return s;
}

void apply_diffusion(StateVector& state) { kernels::invert_about_mean(state.amplitudes()); }

void apply_hadamard(StateVector& state, unsigned qubit) {
    check_qubit(state, qubit);
    const double h = std::numbers::sqrt2 / 2.0;
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & bit) continue;
        const Amplitude a0 = amps[i];
        const Amplitude a1 = amps[i | bit];
        amps[i] = h * (a0 + a1);
        amps[i | bit] = h * (a0 - a1);
    }
}

void apply_controlled_phase(StateVector& state, unsigned control, unsigned target, double angle) {
    check_qubit(state, control);
    check_qubit(state, target);
    const std::uint64_t both = (std::uint64_t{1} << control) | (std::uint64_t{1} << target);
    const Amplitude phase = std::polar(1.0, angle);
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & both) == both) amps[i] *= phase;
    }
}

void apply_swap(StateVector& state, unsigned a, unsigned b) {
    check_qubit(state, a);
    check_qubit(state, b);
    if (a == b) return;
    const std::uint64_t ba = std::uint64_t{1} << a;
    const std::uint64_t bb = std::uint64_t{1} << b;
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        // visit each (a=1,b=0) / (a=0,b=1) pair once
        if ((i & ba) && !(i & bb)) std::swap(amps[i], amps[(i & ~ba) | bb]);
    }
}

// Textbook circuit: Hadamard on the top qubit, controlled rotations from every
// lower qubit, recurse downwards, then reverse the qubit order.
void qft(StateVector& state, std::span<const unsigned> targets) {
    check_targets(state, targets);
    const std::size_t t = targets.size();
    for (std::size_t j = t; j-- > 0;) {
        apply_hadamard(state, targets[j]);
        for (std::size_t m = j; m-- > 0;) {
            const double angle = std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - m));
            apply_controlled_phase(state, targets[m], targets[j], angle);
        }
    }
    for (std::size_t i = 0; i < t / 2; ++i) apply_swap(state, targets[i], targets[t - 1 - i]);
}

void inverse_qft(StateVector& state, std::span<const unsigned> targets) {
    check_targets(state, targets);
    const std::size_t t = targets.size();
    for (std::size_t i = 0; i < t / 2; ++i) apply_swap(state, targets[i], targets[t - 1 - i]);
    for (std::size_t j = 0; j < t; ++j) {
        for (std::size_t m = 0; m < j; ++m) {
            const double angle = -std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - m));
            apply_controlled_phase(state, targets[m], targets[j], angle);
        }
        apply_hadamard(state, targets[j]);
    }
}

MeasurementOutcome measure_all(const StateVector& state, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    // 53 random bits -> [0, 1); independent of the standard library's
    // distribution implementation.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto amps = state.amplitudes();
    double cumulative = 0.0;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t x = 0; x < amps.size(); ++x) {
        const double p = std::norm(amps[x]);
        if (p == 0.0) continue;
        last_nonzero = x;
        cumulative += p;
        if (u < cumulative) return {x, p};
    }
    // u fell into the rounding gap above the accumulated mass
    return {last_nonzero, std::norm(amps[last_nonzero])};
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> p;
    p.reserve(state.size());
    for (const auto& a : state.amplitudes()) p.push_back(std::norm(a));
    return p;
}

namespace kernels {

void phase_flip(std::span<Amplitude> amps, std::span<const std::uint8_t> mask) {
    for (std::size_t x = 0; x < amps.size(); ++x) {
        if (mask[x]) amps[x] = -amps[x];
    }
}

void invert_about_mean(std::span<Amplitude> amps) {
    Amplitude sum{0.0, 0.0};
    for (const auto& a : amps) sum += a;
    const Amplitude twice_mean = 2.0 * sum / static_cast<double>(amps.size());
    for (auto& a : amps) a = twice_mean - a;
}

}  // namespace kernels

}  // namespace qsep::qsim
