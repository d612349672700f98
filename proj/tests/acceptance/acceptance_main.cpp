// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "../test_util.hpp"
#include "qsep/errors.hpp"
#include "qsep/grover.hpp"
#include "qsep/qcount.hpp"
#include "qsep/qsim.hpp"
#include "qsep/scenario.hpp"
#include "qsep/separator.hpp"
#include "qsep/vdb.hpp"

using namespace qsep;
using separator::CountMode;
using separator::LikelihoodEstimate;
using separator::Verdict;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<std::uint64_t> random_subset(std::uint64_t size, std::uint64_t m, std::mt19937_64& rng) {
    std::vector<std::uint64_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(m);
    return idx;
}

Outcome grover_closed_form() {
    const auto start = Clock::now();
    std::mt19937_64 rng(1);
    double worst = 0.0;
    std::uint64_t cases = 0;
    for (unsigned n = 2; n <= 10; ++n) {
        const std::uint64_t size = std::uint64_t{1} << n;
        const auto k_max = static_cast<std::uint64_t>(
            std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(size))));
        for (std::uint64_t m = 1; m <= size; ++m) {
            const auto oracle = grover::OracleSpec::from_indices(n, random_subset(size, m, rng));
            const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(size)));
            auto s = qsim::init_uniform(n);
            for (std::uint64_t k = 0; k <= k_max; ++k) {
                const double expect = std::pow(std::sin((2.0 * k + 1.0) * theta), 2);
                worst = std::max(worst, std::abs(grover::marked_probability(s, oracle) - expect));
                ++cases;
                grover::grover_iteration(s, oracle);
            }
        }
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-10 && elapsed < 120.0,
            fmt("%llu (n,M,k) cases, max deviation %.3g, %.2f s", static_cast<unsigned long long>(cases),
                worst, elapsed)};
}

Outcome counting_correctness() {
    std::mt19937_64 rng(2);
    const int runs = 600;
    int single_hits = 0, median_hits = 0, exact_hits = 0;
    for (int i = 0; i < runs; ++i) {
        const unsigned n = 5 + static_cast<unsigned>(i % 4);
        const std::uint64_t size = std::uint64_t{1} << n;
        const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(0, size)(rng);
        const auto marked = random_subset(size, m, rng);
        const auto oracle = grover::OracleSpec::from_indices(n, marked);
        const unsigned t = qcount::counting_register_size(n, 0.125);
        const double truth = static_cast<double>(m);

        std::uint64_t enumerated = 0;
        for (std::uint64_t x = 0; x < size; ++x) enumerated += oracle.marked(x) ? 1 : 0;
        exact_hits += qcount::exact_count(oracle).m_hat == truth && enumerated == m ? 1 : 0;

        std::vector<std::uint64_t> seeds(6);
        for (auto& s : seeds) s = rng();
        const auto shots = qcount::quantum_count_shots(oracle, t, seeds);
        single_hits += std::abs(shots[0].m_hat - truth) <= shots[0].error_bound ? 1 : 0;

        std::vector<double> five;
        for (std::size_t j = 1; j < 6; ++j) five.push_back(shots[j].m_hat);
        std::nth_element(five.begin(), five.begin() + 2, five.end());
        const double median = five[2];
        median_hits += std::abs(median - truth) <= qcount::counting_error_bound(median, size, t) ? 1 : 0;
    }
    const double single = static_cast<double>(single_hits) / runs;
    const double median = static_cast<double>(median_hits) / runs;
    return {single >= 0.81 && median >= 0.95 && exact_hits == runs,
            fmt("%d oracles, single-shot %.1f%%, median-of-5 %.1f%%, exact %d/%d", runs, 100 * single,
                100 * median, exact_hits, runs)};
}

LikelihoodEstimate exact_estimate(std::uint32_t id, std::uint64_t m, std::uint64_t denom) {
    LikelihoodEstimate e;
    e.set_id = id;
    e.m_hat = static_cast<double>(m);
    e.denominator = denom;
    e.value = e.m_hat / static_cast<double>(denom);
    e.mode = CountMode::exact;
    return e;
}

Outcome decision_table() {
    struct Row {
        std::uint64_t f0, f1;
        Verdict verdict;
        std::vector<std::uint32_t> sets;
    };
    const std::vector<Row> rows{{0, 0, Verdict::badly_prepared, {}}, {0, 3, Verdict::assigned, {1}},
                                {5, 0, Verdict::assigned, {0}},      {5, 3, Verdict::assigned, {0}},
                                {2, 7, Verdict::assigned, {1}},      {4, 4, Verdict::tie, {0, 1}}};
    int ok = 0;
    for (const auto& r : rows) {
        const std::vector<LikelihoodEstimate> est{exact_estimate(0, r.f0, 16), exact_estimate(1, r.f1, 16)};
        const auto d = separator::ml_decide(est);
        ok += d.verdict == r.verdict && d.sets == r.sets ? 1 : 0;
    }
    return {ok == static_cast<int>(rows.size()),
            fmt("%d/%zu rows (five decision rows + tie)", ok, rows.size())};
}

std::shared_ptr<const vdb::DisturbanceModel> random_model(std::mt19937_64& rng, const vdb::ParamGrid& grid,
                                                          std::uint32_t sets, std::uint32_t alphabet) {
    const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
    std::uniform_real_distribution<double> mu(0.0, static_cast<double>(alphabet));
    if (kind == 0 || grid.axes().size() < 2) {
        std::map<std::uint32_t, std::vector<std::int64_t>> tables;
        std::uniform_int_distribution<std::int64_t> sym(0, alphabet - 1);
        for (std::uint32_t s = 0; s < sets; ++s) {
            // narrow the support per set so sets overlap only partly
            const std::int64_t lo = sym(rng);
            std::vector<std::int64_t> t(grid.total_points());
            for (auto& v : t) v = std::min<std::int64_t>(alphabet - 1, lo + sym(rng) % 4);
            tables[s] = std::move(t);
        }
        return std::make_shared<const vdb::TableModel>(std::move(tables), alphabet);
    }
    std::map<std::uint32_t, double> source;
    for (std::uint32_t s = 0; s < sets; ++s) source[s] = mu(rng);
    const vdb::UniformQuantizer q{0.0, std::uniform_real_distribution<double>(0.5, 2.0)(rng), alphabet};
    if (kind == 1) return std::make_shared<const vdb::AdditiveOffsetModel>(std::move(source), q);
    return std::make_shared<const vdb::DelayVelocityModel>(
        std::move(source), vdb::DelayVelocityModel::Config{0, 1, 2.0, 1.5}, q);
}

std::shared_ptr<const vdb::ParamGrid> random_grid(std::mt19937_64& rng, unsigned max_qubits) {
    const std::uint64_t limit = std::uint64_t{1} << max_qubits;
    const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(2, 32)(rng);
    const std::uint64_t b = std::uniform_int_distribution<std::uint64_t>(1, std::max<std::uint64_t>(1, limit / a))(rng);
    std::vector<vdb::Axis> axes{vdb::Axis::logarithmic("delay", "s", 1e-6, 1e-1, a)};
    if (b > 1) axes.push_back(vdb::Axis::linear("velocity", "m/s", -2.0, 3.0, b));
    return std::make_shared<const vdb::ParamGrid>(std::move(axes));
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(4);
    const int scenarios = 60;
    int agree = 0;
    std::uint64_t symbols = 0;
    for (int i = 0; i < scenarios; ++i) {
        const auto grid = random_grid(rng, 10);
        const std::uint32_t sets = std::uniform_int_distribution<std::uint32_t>(2, 4)(rng);
        const std::uint32_t alphabet = std::uniform_int_distribution<std::uint32_t>(4, 24)(rng);
        const auto model = random_model(rng, *grid, sets, alphabet);
        std::vector<vdb::VirtualDb> dbs;
        for (std::uint32_t s = 0; s < sets; ++s) dbs.emplace_back(s, grid, model);
        bool same = true;
        for (std::uint32_t r = 0; r < alphabet; ++r, ++symbols) {
            const auto d = separator::separate(dbs, vdb::Symbol::make(r, alphabet), {});
            const auto ref = oracle::classify_by_enumeration(dbs, r);
            same = same && d.verdict == ref.verdict && d.sets == ref.sets;
        }
        agree += same ? 1 : 0;
    }
    return {agree == scenarios, fmt("%d/%d scenarios identical (%llu symbols)", agree, scenarios,
                                    static_cast<unsigned long long>(symbols))};
}

double curve_sum(const vdb::VirtualDb& db) {
    std::vector<vdb::Symbol> all;
    for (std::uint32_t r = 0; r < db.alphabet_size(); ++r) all.push_back(vdb::Symbol::make(r, db.alphabet_size()));
    double total = 0.0;
    for (const auto& p : separator::pdf_curve(db, all, {})) total += p.estimate.value;
    return total;
}

Outcome normalization(const std::filesystem::path& scenario_dir) {
    double worst = 0.0;
    int bundled = 0;
    for (const auto& entry : std::filesystem::directory_iterator(scenario_dir)) {
        if (entry.path().extension() != ".json") continue;
        auto loaded = scenario::load_scenario_file(entry.path());
        if (!loaded.scenario) return {false, "bundled scenario failed to load: " + entry.path().string()};
        for (const auto& db : loaded.scenario->dbs) worst = std::max(worst, std::abs(curve_sum(db) - 1.0));
        ++bundled;
    }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto grid = random_grid(rng, 10);
        const std::uint32_t alphabet = std::uniform_int_distribution<std::uint32_t>(2, 40)(rng);
        const auto model = random_model(rng, *grid, 2, alphabet);
        for (std::uint32_t s = 0; s < 2; ++s) {
            worst = std::max(worst, std::abs(curve_sum(vdb::VirtualDb(s, grid, model)) - 1.0));
        }
    }
    return {bundled >= 1 && worst <= 1e-12,
            fmt("%d bundled scenarios + 100 random models, max |sum - 1| = %.3g", bundled, worst)};
}

Outcome map_ml_consistency() {
    std::mt19937_64 rng(6);
    const int vectors = 10000;
    int same = 0, with_posteriors = 0, posterior_ok = 0;
    double worst = 0.0;
    for (int i = 0; i < vectors; ++i) {
        const std::uint32_t k = std::uniform_int_distribution<std::uint32_t>(2, 5)(rng);
        const bool quantum = i % 2 == 1;
        std::vector<LikelihoodEstimate> est;
        std::vector<std::uint32_t> ids;
        for (std::uint32_t s = 0; s < k; ++s) {
            const std::uint64_t denom = std::uniform_int_distribution<std::uint64_t>(1, 64)(rng);
            // small counts make ties and all-zero vectors common
            const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(0, std::min<std::uint64_t>(denom, 3))(rng);
            auto e = exact_estimate(s * 3 + 1, m, denom);
            if (quantum) {
                e.mode = CountMode::quantum;
                e.value = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * (m > 0);
                e.m_hat = e.value * static_cast<double>(denom);
                e.error_bound = 0.01;
            }
            est.push_back(e);
            ids.push_back(e.set_id);
        }
        const auto ml = separator::ml_decide(est);
        const auto map = separator::map_decide(est, separator::Priors::uniform(ids));
        same += ml.verdict == map.verdict && ml.sets == map.sets ? 1 : 0;

        const bool any = std::any_of(est.begin(), est.end(), [](const auto& e) { return e.value > 0.0; });
        if (any) {
            ++with_posteriors;
            if (map.posteriors) {
                double sum = 0.0;
                for (const auto& [id, p] : *map.posteriors) sum += p;
                worst = std::max(worst, std::abs(sum - 1.0));
                posterior_ok += std::abs(sum - 1.0) <= 1e-12 ? 1 : 0;
            }
        }
    }
    return {same == vectors && posterior_ok == with_posteriors,
            fmt("%d/%d identical verdicts, %d/%d posterior sums within 1e-12 (max dev %.3g)", same, vectors,
                posterior_ok, with_posteriors, worst)};
}

Outcome simulator_hygiene() {
    std::mt19937_64 rng(7);
    double worst_norm = 0.0;
    for (int seq = 0; seq < 10000; ++seq) {
        const unsigned n = 1 + static_cast<unsigned>(seq % 7);
        auto s = oracle::random_state(n, rng);
        std::uniform_int_distribution<unsigned> qubit(0, n - 1);
        for (int g = 0; g < 12; ++g) {
            const unsigned a = qubit(rng);
            unsigned b = qubit(rng);
            if (n > 1) {
                while (b == a) b = qubit(rng);
            }
            switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
            case 0: qsim::apply_hadamard(s, a); break;
            case 1:
                if (n > 1) qsim::apply_controlled_phase(s, a, b, std::uniform_real_distribution<double>(-7, 7)(rng));
                break;
            case 2:
                if (n > 1) qsim::apply_swap(s, a, b);
                break;
            case 3: {
                const std::uint64_t mark = rng() % s.size();
                qsim::apply_phase_oracle(s, [mark](std::uint64_t x) { return x == mark; });
                break;
            }
            case 4: qsim::apply_diffusion(s); break;
            default: {
                std::vector<unsigned> all(n);
                std::iota(all.begin(), all.end(), 0u);
                std::shuffle(all.begin(), all.end(), rng);
                all.resize(1 + rng() % n);
                if (rng() % 2) qsim::qft(s, all);
                else qsim::inverse_qft(s, all);
            }
            }
        }
        worst_norm = std::max(worst_norm, std::abs(s.norm_squared() - 1.0));
    }

    double worst_round_trip = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned n = 1 + static_cast<unsigned>(trial % 10);
        auto s = oracle::random_state(n, rng);
        const auto orig = s;
        std::vector<unsigned> targets(n);
        std::iota(targets.begin(), targets.end(), 0u);
        std::shuffle(targets.begin(), targets.end(), rng);
        targets.resize(1 + rng() % n);
        qsim::qft(s, targets);
        qsim::inverse_qft(s, targets);
        for (std::uint64_t i = 0; i < s.size(); ++i) {
            worst_round_trip = std::max(worst_round_trip, std::abs(s[i] - orig[i]));
        }
    }

    bool reproducible = true;
    {
        std::mt19937_64 fixed(8);
        const auto s = oracle::random_state(8, fixed);
        const auto oracle = grover::OracleSpec::from_indices(6, random_subset(64, 9, fixed));
        for (std::uint64_t seed : {0ull, 7ull, 0xdeadbeefull}) {
            const auto a = qsim::measure_all(s, seed);
            const auto b = qsim::measure_all(s, seed);
            reproducible = reproducible && a.index == b.index && a.probability == b.probability;
            const auto c1 = qcount::quantum_count(oracle, 9, seed);
            const auto c2 = qcount::quantum_count(oracle, 9, seed);
            reproducible = reproducible && c1.outcome == c2.outcome && c1.m_hat == c2.m_hat;
            const auto g1 = grover::search(oracle, 2, seed);
            const auto g2 = grover::search(oracle, 2, seed);
            reproducible = reproducible && g1.index == g2.index;
        }
        auto dir = std::filesystem::path(QSEP_SCENARIO_DIR);
        auto loaded = scenario::load_scenario_file(dir / "quantum_small.json");
        if (loaded.scenario) {
            const auto r1 = scenario::results_json(scenario::run(*loaded.scenario, true));
            const auto r2 = scenario::results_json(scenario::run(*loaded.scenario, true));
            reproducible = reproducible && r1 == r2;
        } else {
            reproducible = false;
        }
    }
    return {worst_norm <= 1e-12 && worst_round_trip <= 1e-10 && reproducible,
            fmt("10^4 sequences max norm drift %.3g, QFT round trip %.3g, seeded outputs %s", worst_norm,
                worst_round_trip, reproducible ? "bit-identical" : "DIFFER")};
}

long peak_rss_mib() {
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return u.ru_maxrss / 1024;
}

Outcome scale_check(const std::filesystem::path& scenario_dir) {
    auto loaded = scenario::load_scenario_file(scenario_dir / "large_grid.json");
    if (!loaded.scenario) return {false, "large_grid.json failed to load"};
    const auto& sc = *loaded.scenario;
    const auto start = Clock::now();
    const auto report = scenario::run(sc, false);
    const double exact_seconds = seconds_since(start);
    const bool ok = sc.dbs.front().n_qubits() == 15 && report.records.size() == sc.observations.size();

    std::printf("  quantum-mode resource curve (single count, t = min(n + ceil(log2(3)), 24 - n)):\n");
    std::printf("  %3s %3s %6s %12s %10s %10s\n", "n", "t", "qubits", "state MiB", "seconds", "peak MiB");
    std::mt19937_64 rng(9);
    for (unsigned n = 2; n <= 12; ++n) {
        const unsigned t = std::min(qcount::counting_register_size(n, 0.5), qsim::kMaxQubits - n);
        const std::uint64_t size = std::uint64_t{1} << n;
        const auto oracle = grover::OracleSpec::from_indices(n, random_subset(size, 1 + size / 7, rng));
        const auto t0 = Clock::now();
        const auto c = qcount::quantum_count(oracle, t, rng());
        (void)c;
        const double secs = seconds_since(t0);
        const double state_mib = std::ldexp(16.0, static_cast<int>(n + t)) / (1024.0 * 1024.0);
        std::printf("  %3u %3u %6u %12.3f %10.3f %10ld\n", n, t, n + t, state_mib, secs, peak_rss_mib());
    }
    return {ok && exact_seconds < 10.0,
            fmt("N = %llu (15 qubits), %zu observations x %zu sets exact in %.2f s",
                static_cast<unsigned long long>(sc.grid->total_points()), sc.observations.size(), sc.dbs.size(),
                exact_seconds)};
}

}  // namespace

int main() {
    const std::filesystem::path scenarios = QSEP_SCENARIO_DIR;
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"grover closed form", grover_closed_form},
        {"counting correctness", counting_correctness},
        {"decision table", decision_table},
        {"oracle equivalence", oracle_equivalence},
        {"normalization", [&] { return normalization(scenarios); }},
        {"map/ml consistency", map_ml_consistency},
        {"simulator hygiene", simulator_hygiene},
        {"scale check", [&] { return scale_check(scenarios); }},
    };
    int failed = 0;
    int index = 1;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
