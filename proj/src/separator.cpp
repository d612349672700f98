// SPDX-License-Identifier: Apache-2.0

#include "qsep/separator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

namespace qsep::separator {

std::string_view to_string(CountMode mode) {
    return mode == CountMode::exact ? "exact" : "quantum";
}

std::string_view to_string(DecisionRule rule) { return rule == DecisionRule::ml ? "ml" : "map"; }

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::assigned: return "assigned";
        case Verdict::tie: return "tie";
        case Verdict::badly_prepared: return "badly_prepared";
    }
    return "unknown";
}

Priors::Priors(std::map<std::uint32_t, double> p) : p_(std::move(p)) {
    if (p_.empty()) throw std::invalid_argument("priors must cover at least one set");
    double total = 0.0;
    for (const auto& [id, v] : p_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("prior for set " + std::to_string(id) +
                                        " must be a finite nonnegative number");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("priors sum to " + std::to_string(total) + ", not 1");
    }
}

Priors Priors::uniform(std::span<const std::uint32_t> set_ids) {
    std::map<std::uint32_t, double> p;
    for (auto id : set_ids) p[id] = 1.0 / static_cast<double>(set_ids.size());
    return Priors(std::move(p));
}

std::optional<std::uint32_t> Decision::assigned_set() const {
    if (verdict != Verdict::assigned) return std::nullopt;
    return sets.front();
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

LikelihoodEstimate estimate_likelihood(const vdb::VirtualDb& db, const vdb::Symbol& r,
                                       const EstimateOptions& options) {
    if (options.repeats == 0) throw std::invalid_argument("repeats must be at least 1");
    const auto oracle = vdb::match_oracle(db, r);

    LikelihoodEstimate est;
    est.set_id = db.set_id();
    est.denominator = db.grid().total_points();
    est.mode = options.mode;

    if (options.mode == CountMode::exact) {
        est.m_hat = qcount::exact_count(oracle).m_hat;
    } else {
        const unsigned t = options.t_qubits.value_or(
            qcount::counting_register_size(db.n_qubits(), options.relative_error));
        std::vector<std::uint64_t> seeds(options.repeats);
        for (unsigned i = 0; i < options.repeats; ++i) seeds[i] = derive_seed(options.seed, i);
        auto shots = qcount::quantum_count_shots(oracle, t, seeds);

        std::vector<double> counts;
        for (const auto& s : shots) counts.push_back(s.m_hat);
        std::sort(counts.begin(), counts.end());
        const std::size_t mid = counts.size() / 2;
        double median = counts.size() % 2 ? counts[mid] : 0.5 * (counts[mid - 1] + counts[mid]);
        // a count cannot exceed the number of real entries
        median = std::clamp(median, 0.0, static_cast<double>(est.denominator));

        est.m_hat = median;
        est.t_qubits = t;
        est.repeats = options.repeats;
        est.error_bound = qcount::counting_error_bound(median, db.register_size(), t) /
                          static_cast<double>(est.denominator);
    }
    est.value = est.m_hat / static_cast<double>(est.denominator);
    return est;
}

namespace {

// -1, 0, +1 as a < b, a == b, a > b
using Compare = std::function<int(const LikelihoodEstimate&, const LikelihoodEstimate&)>;

int compare_likelihood(const LikelihoodEstimate& a, const LikelihoodEstimate& b) {
    if (a.mode == CountMode::exact && b.mode == CountMode::exact) {
        const auto lhs = static_cast<unsigned __int128>(std::llround(a.m_hat)) * b.denominator;
        const auto rhs = static_cast<unsigned __int128>(std::llround(b.m_hat)) * a.denominator;
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    return a.value < b.value ? -1 : (a.value > b.value ? 1 : 0);
}

bool is_zero(const LikelihoodEstimate& e) {
    return e.mode == CountMode::exact ? std::llround(e.m_hat) == 0 : e.value == 0.0;
}

void check_estimates(std::span<const LikelihoodEstimate> estimates) {
    if (estimates.size() < 2) throw std::invalid_argument("a decision needs at least two sets");
    std::set<std::uint32_t> ids;
    for (const auto& e : estimates) {
        if (!ids.insert(e.set_id).second) {
            throw std::invalid_argument("duplicate set id " + std::to_string(e.set_id));
        }
    }
}

// Shared argmax: `score` orders candidates, `weight` scales each error bound
// for the overlap annotation.
Decision decide(std::span<const LikelihoodEstimate> estimates, const Compare& score,
                const std::function<double(const LikelihoodEstimate&)>& statistic,
                const std::function<double(const LikelihoodEstimate&)>& weight, TiePolicy ties) {
    Decision d;
    d.likelihoods.assign(estimates.begin(), estimates.end());

    std::vector<std::size_t> best;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (best.empty()) {
            best.push_back(i);
            continue;
        }
        const int c = score(estimates[i], estimates[best.front()]);
        if (c > 0) best.assign(1, i);
        else if (c == 0) best.push_back(i);
    }

    for (auto i : best) d.sets.push_back(estimates[i].set_id);
    std::sort(d.sets.begin(), d.sets.end());
    if (d.sets.size() == 1) {
        d.verdict = Verdict::assigned;
    } else if (ties == TiePolicy::lowest_set) {
        d.verdict = Verdict::assigned;
        d.sets.resize(1);
        d.tie_broken = true;
    } else {
        d.verdict = Verdict::tie;
    }

    const bool any_quantum = std::any_of(estimates.begin(), estimates.end(), [](const auto& e) {
        return e.mode == CountMode::quantum;
    });
    if (any_quantum) {
        const auto& winner = estimates[best.front()];
        if (best.size() > 1) {
            d.within_error_bound = true;
        } else {
            for (std::size_t i = 0; i < estimates.size(); ++i) {
                if (i == best.front()) continue;
                const auto& other = estimates[i];
                const double margin = std::abs(statistic(winner) - statistic(other));
                if (margin <= winner.error_bound * weight(winner) + other.error_bound * weight(other)) {
                    d.within_error_bound = true;
                }
            }
        }
    }
    return d;
}

}  // namespace

Decision ml_decide(std::span<const LikelihoodEstimate> estimates, TiePolicy ties) {
    check_estimates(estimates);
    if (std::all_of(estimates.begin(), estimates.end(), is_zero)) {
        Decision d;
        d.likelihoods.assign(estimates.begin(), estimates.end());
        return d;
    }
    auto d = decide(
        estimates, compare_likelihood, [](const LikelihoodEstimate& e) { return e.value; },
        [](const LikelihoodEstimate&) { return 1.0; }, ties);
    d.rule = DecisionRule::ml;
    return d;
}

Decision map_decide(std::span<const LikelihoodEstimate> estimates, const Priors& priors,
                    TiePolicy ties) {
    check_estimates(estimates);
    if (priors.values().size() != estimates.size()) {
        throw std::invalid_argument("priors must cover exactly the sets being decided");
    }
    for (const auto& e : estimates) {
        if (!priors.values().contains(e.set_id)) {
            throw std::invalid_argument("no prior for set " + std::to_string(e.set_id));
        }
    }

    Decision d;
    d.rule = DecisionRule::map;
    d.likelihoods.assign(estimates.begin(), estimates.end());
    if (std::all_of(estimates.begin(), estimates.end(), is_zero)) return d;

    double evidence = 0.0;
    for (const auto& e : estimates) evidence += e.value * priors.at(e.set_id);

    if (evidence == 0.0) {
        // Every set with evidence has prior 0: the posterior is undefined, so
        // report the sets the likelihoods alone cannot separate.
        for (const auto& e : estimates) {
            if (!is_zero(e)) d.sets.push_back(e.set_id);
        }
        d.verdict = d.sets.size() == 1 || ties == TiePolicy::lowest_set ? Verdict::assigned
                                                                        : Verdict::tie;
        if (d.verdict == Verdict::assigned && d.sets.size() > 1) {
            d.sets.resize(1);
            d.tie_broken = true;
        }
        return d;
    }

    std::map<std::uint32_t, double> posteriors;
    for (const auto& e : estimates) posteriors[e.set_id] = e.value * priors.at(e.set_id) / evidence;

    // Equal priors reduce to the likelihood comparison, so uniform priors
    // always agree with ml_decide.
    const Compare by_posterior = [&](const LikelihoodEstimate& a, const LikelihoodEstimate& b) {
        const double pa = priors.at(a.set_id);
        const double pb = priors.at(b.set_id);
        if (pa == pb) return compare_likelihood(a, b);
        const double sa = a.value * pa;
        const double sb = b.value * pb;
        return sa < sb ? -1 : (sa > sb ? 1 : 0);
    };
    auto decided = decide(
        estimates, by_posterior,
        [&](const LikelihoodEstimate& e) { return e.value * priors.at(e.set_id); },
        [&](const LikelihoodEstimate& e) { return priors.at(e.set_id); }, ties);
    decided.rule = DecisionRule::map;
    decided.posteriors = std::move(posteriors);
    return decided;
}

Decision separate(std::span<const vdb::VirtualDb> dbs, const vdb::Symbol& r,
                  const SeparateOptions& options) {
    if (dbs.size() < 2) throw std::invalid_argument("separation needs at least two sets");
    std::vector<LikelihoodEstimate> estimates;
    std::vector<std::uint32_t> ids;
    for (const auto& db : dbs) {
        EstimateOptions per_set = options.estimate;
        per_set.seed = derive_seed(options.estimate.seed, db.set_id());
        estimates.push_back(estimate_likelihood(db, r, per_set));
        ids.push_back(db.set_id());
    }
    check_estimates(estimates);

    if (options.rule == DecisionRule::ml) return ml_decide(estimates, options.ties);
    const Priors priors = options.priors ? *options.priors : Priors::uniform(ids);
    return map_decide(estimates, priors, options.ties);
}

std::vector<CurvePoint> pdf_curve(const vdb::VirtualDb& db, std::span<const vdb::Symbol> symbols,
                                  const EstimateOptions& options) {
    if (symbols.empty()) throw std::invalid_argument("pdf curve needs at least one symbol");
    std::vector<CurvePoint> curve;
    curve.reserve(symbols.size());

    if (options.mode == CountMode::exact) {
        // one pass over the database serves every symbol
        std::vector<std::uint64_t> histogram(db.alphabet_size(), 0);
        for (auto code : db.evaluate_all()) ++histogram[code];
        for (const auto& r : symbols) {
            if (r.alphabet_size != db.alphabet_size() || r.is_padding()) {
                throw std::invalid_argument("curve symbol outside the model alphabet");
            }
            LikelihoodEstimate est;
            est.set_id = db.set_id();
            est.denominator = db.grid().total_points();
            est.m_hat = static_cast<double>(histogram[r.code]);
            est.value = est.m_hat / static_cast<double>(est.denominator);
            curve.push_back({r, est});
        }
        return curve;
    }

    for (const auto& r : symbols) {
        EstimateOptions per_symbol = options;
        per_symbol.seed = derive_seed(options.seed, r.code);
        curve.push_back({r, estimate_likelihood(db, r, per_symbol)});
    }
    return curve;
}

}  // namespace qsep::separator
