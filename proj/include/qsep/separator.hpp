// SPDX-License-Identifier: Apache-2.0
//
// Likelihood estimation by counting matches in a virtual database, and the
// maximum-likelihood / maximum-a-posteriori set deciders built on it.
//
// f(r|s) = #{x : g(s, x) = r} / total_points
//
// Padding indices of the power-of-two register never match, and the
// denominator is the number of real grid points.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qsep/qcount.hpp"
#include "qsep/vdb.hpp"

namespace qsep::separator {

using qcount::CountMode;

enum class DecisionRule { ml, map };
enum class TiePolicy { report, lowest_set };
enum class Verdict { assigned, tie, badly_prepared };

std::string_view to_string(CountMode mode);
std::string_view to_string(DecisionRule rule);
std::string_view to_string(Verdict verdict);

struct LikelihoodEstimate {
    std::uint32_t set_id = 0;
    double value = 0.0;          // m_hat / denominator
    double m_hat = 0.0;
    std::uint64_t denominator = 1;
    CountMode mode = CountMode::exact;
    double error_bound = 0.0;    // on value, not on m_hat
    unsigned t_qubits = 0;
    unsigned repeats = 0;
};

class Priors {
public:
    /// Throws std::invalid_argument on negative entries or a sum that is
    /// not 1 within 1e-12.
    explicit Priors(std::map<std::uint32_t, double> p);
    static Priors uniform(std::span<const std::uint32_t> set_ids);

    const std::map<std::uint32_t, double>& values() const noexcept { return p_; }
    double at(std::uint32_t set_id) const { return p_.at(set_id); }

private:
    std::map<std::uint32_t, double> p_;
};

struct Decision {
    Verdict verdict = Verdict::badly_prepared;
    /// Assigned: the one winning set. Tie: every tied set, ascending.
    std::vector<std::uint32_t> sets;
    std::vector<LikelihoodEstimate> likelihoods;
    DecisionRule rule = DecisionRule::ml;
    std::optional<std::map<std::uint32_t, double>> posteriors;
    /// Quantum mode: the winner's margin over the runner-up does not exceed
    /// their combined error bounds.
    bool within_error_bound = false;
    /// A tie was resolved to the lowest set id by TiePolicy::lowest_set.
    bool tie_broken = false;

    std::optional<std::uint32_t> assigned_set() const;
};

struct EstimateOptions {
    CountMode mode = CountMode::exact;
    /// Counting register size; defaults to counting_register_size(n, relative_error).
    std::optional<unsigned> t_qubits;
    double relative_error = 0.125;
    /// Median over this many single-shot counts (quantum mode).
    unsigned repeats = 5;
    std::uint64_t seed = 0;
};

/// SplitMix64 stream: deterministic child seed number `stream` of `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Throws std::invalid_argument for repeats == 0 or an alphabet mismatch and
/// propagates ResourceError from the simulator.
LikelihoodEstimate estimate_likelihood(const vdb::VirtualDb& db, const vdb::Symbol& r,
                                       const EstimateOptions& options);

/// Decision table: all zero -> badly prepared; strict maximum -> assigned;
/// equal maxima -> tie. Exact estimates compare integer counts.
/// Throws std::invalid_argument for fewer than two estimates or repeated set ids.
Decision ml_decide(std::span<const LikelihoodEstimate> estimates,
                   TiePolicy ties = TiePolicy::report);

/// Bayes posterior argmax with the same zero/tie handling as ml_decide.
Decision map_decide(std::span<const LikelihoodEstimate> estimates, const Priors& priors,
                    TiePolicy ties = TiePolicy::report);

struct SeparateOptions {
    EstimateOptions estimate;
    DecisionRule rule = DecisionRule::ml;
    std::optional<Priors> priors;  // uniform when absent
    TiePolicy ties = TiePolicy::report;
};

/// Prepare, evaluate, count, decide. Each database's counting seed is
/// derive_seed(options.estimate.seed, set_id).
Decision separate(std::span<const vdb::VirtualDb> dbs, const vdb::Symbol& r,
                  const SeparateOptions& options);

struct CurvePoint {
    vdb::Symbol symbol;
    LikelihoodEstimate estimate;
};

/// f(r|s) for each requested symbol. Quantum mode seeds symbol r with
/// derive_seed(options.seed, r.code).
std::vector<CurvePoint> pdf_curve(const vdb::VirtualDb& db, std::span<const vdb::Symbol> symbols,
                                  const EstimateOptions& options);

}  // namespace qsep::separator
