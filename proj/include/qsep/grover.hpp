// SPDX-License-Identifier: Apache-2.0
//
// Grover iteration, closed-form success probability, and a search driver.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qsep/qsim.hpp"

namespace qsep::grover {

/// Marked-index predicate over [0, 2^n), materialized as a mask so repeated
/// oracle applications don't re-evaluate the classical function.
class OracleSpec {
public:
    using Predicate = std::function<bool(std::uint64_t)>;

    /// Evaluates `marked` once on every index. Throws ResourceError above
    /// qsim::kMaxQubits.
    OracleSpec(unsigned n_qubits, const Predicate& marked);

    static OracleSpec from_indices(unsigned n_qubits, std::span<const std::uint64_t> marked);

    unsigned n_qubits() const noexcept { return n_qubits_; }
    std::uint64_t size() const noexcept { return mask_.size(); }
    bool marked(std::uint64_t x) const { return mask_.at(x) != 0; }
    std::span<const std::uint8_t> mask() const noexcept { return mask_; }

    /// Cached solution count; empty until someone counts.
    const std::optional<std::uint64_t>& exact_m() const noexcept { return exact_m_; }
    void set_exact_m(std::uint64_t m);

    /// Oracle marking exactly the indices this one leaves unmarked.
    OracleSpec complement() const;

private:
    OracleSpec(unsigned n_qubits, std::vector<std::uint8_t> mask);

    unsigned n_qubits_;
    std::vector<std::uint8_t> mask_;
    std::optional<std::uint64_t> exact_m_;
};

struct GroverPlan {
    std::uint64_t iterations = 0;
    double theta = 0.0;  // arcsin(sqrt(M/N))
    double predicted_success = 0.0;
};

/// sin^2((2k+1) theta) with theta = arcsin(sqrt(m / 2^n)).
double success_probability(unsigned n_qubits, std::uint64_t m, std::uint64_t iterations);

/// One Grover step, phase oracle then diffusion.
void grover_iteration(qsim::StateVector& state, const OracleSpec& oracle);

/// Iteration count maximizing the success probability among
/// floor(pi / (4 theta)) and its two neighbours; ties go to the smaller count.
/// Throws std::domain_error for m == 0 (count first) and
/// std::invalid_argument for m > 2^n.
GroverPlan plan(unsigned n_qubits, std::uint64_t m);

/// Uniform preparation, `iterations` Grover steps, one measurement.
qsim::MeasurementOutcome search(const OracleSpec& oracle, std::uint64_t iterations,
                                std::uint64_t rng_seed);

/// Total probability on marked indices.
double marked_probability(const qsim::StateVector& state, const OracleSpec& oracle);

}  // namespace qsep::grover
