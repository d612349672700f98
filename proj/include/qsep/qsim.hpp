// SPDX-License-Identifier: Apache-2.0
//
// Dense state-vector simulator.
//
// Conventions:
//  - qubit 0 is the least-significant bit of a basis-state index;
//  - operations mutate the state they are given, measurement never does;
//  - global phase is not tracked or normalized away.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qsep::qsim {

using Amplitude = std::complex<double>;

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
inline constexpr unsigned kMaxQubits = 24;

struct MeasurementOutcome {
    std::uint64_t index = 0;
    double probability = 0.0;
};

class StateVector {
public:
    /// |0...0> on n qubits. Throws ResourceError above kMaxQubits.
    explicit StateVector(unsigned n_qubits);

    /// Computational basis state |index>.
    static StateVector basis(unsigned n_qubits, std::uint64_t index);

    /// Takes ownership of explicit amplitudes. The length must be a power of
    /// two and the vector normalized to within 1e-10.
    static StateVector from_amplitudes(std::vector<Amplitude> amps);

    unsigned n_qubits() const noexcept { return n_qubits_; }
    std::uint64_t size() const noexcept { return amps_.size(); }

    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    std::span<Amplitude> amplitudes() noexcept { return amps_; }

    const Amplitude& operator[](std::uint64_t i) const { return amps_[i]; }
    Amplitude& operator[](std::uint64_t i) { return amps_[i]; }

    double norm_squared() const noexcept;

private:
    unsigned n_qubits_;
    std::vector<Amplitude> amps_;
};

/// H^{\otimes n}|0>: every amplitude 2^{-n/2}.
StateVector init_uniform(unsigned n_qubits);

/// Flips the sign of amps[x] for every x with marked(x).
template <typename Predicate>
void apply_phase_oracle(StateVector& state, Predicate&& marked) {
    auto amps = state.amplitudes();
    for (std::uint64_t x = 0; x < amps.size(); ++x) {
        if (marked(x)) amps[x] = -amps[x];
    }
}

/// Inversion about the mean, amps <- 2<amps> - amps.
void apply_diffusion(StateVector& state);

void apply_hadamard(StateVector& state, unsigned qubit);
/// diag(1, 1, 1, e^{i angle}) on (control, target); symmetric in its qubits.
void apply_controlled_phase(StateVector& state, unsigned control, unsigned target, double angle);
void apply_swap(StateVector& state, unsigned a, unsigned b);

/// Discrete Fourier transform on the sub-register formed by `targets`
/// (targets[0] is the sub-register's least-significant bit):
///   |k> -> 2^{-t/2} sum_y exp(+2 pi i k y / 2^t) |y>.
/// Throws std::invalid_argument on duplicate or out-of-range qubits.
void qft(StateVector& state, std::span<const unsigned> targets);
/// Exact inverse of qft() on the same target list.
void inverse_qft(StateVector& state, std::span<const unsigned> targets);

/// Born-rule sample. Deterministic in `rng_seed`; the state is left untouched.
MeasurementOutcome measure_all(const StateVector& state, std::uint64_t rng_seed);

/// |amps_x|^2 for every x.
std::vector<double> probabilities(const StateVector& state);

/// Span-level kernels, shared with modules that operate on sub-blocks of a
/// larger register.
namespace kernels {

void phase_flip(std::span<Amplitude> amps, std::span<const std::uint8_t> mask);
void invert_about_mean(std::span<Amplitude> amps);

}  // namespace kernels

}  // namespace qsep::qsim
