// SPDX-License-Identifier: Apache-2.0
//
// Scenario documents (JSON) and the experiment runner behind the `qsep` CLI.
// Field names are documented in docs/formats.md.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsep/separator.hpp"
#include "qsep/vdb.hpp"

namespace qsep::scenario {

struct ValidationIssue {
    std::string path;  // JSON-pointer style, e.g. "/sets/1/params/entries/3"
    std::string message;
};

/// Command-line settings that take precedence over the document.
struct Overrides {
    std::optional<std::string> mode;
    std::optional<std::string> rule;
    std::optional<unsigned> repeats;
    std::optional<unsigned> t_qubits;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> tie_policy;
};

struct Scenario {
    std::string name;
    std::uint32_t alphabet_size = 0;
    std::shared_ptr<const vdb::ParamGrid> grid;
    std::vector<vdb::VirtualDb> dbs;
    std::vector<vdb::Symbol> observations;
    separator::SeparateOptions options;
    /// Symbols to sweep for pdf curves; empty when the document asks for none.
    std::vector<vdb::Symbol> curve_symbols;
};

struct LoadResult {
    std::optional<Scenario> scenario;  // set iff issues is empty
    std::vector<ValidationIssue> issues;
};

/// Parses and fully validates a scenario. Relative table-file paths resolve
/// against `base_dir`. Never throws for document errors; they are returned
/// as issues.
LoadResult load_scenario_text(const std::string& text, const std::filesystem::path& base_dir,
                              const Overrides& overrides = {});
LoadResult load_scenario_file(const std::filesystem::path& path, const Overrides& overrides = {});

struct ObservationRecord {
    vdb::Symbol observation;
    separator::Decision decision;
};

struct SetCurve {
    std::uint32_t set_id = 0;
    std::vector<separator::CurvePoint> points;
};

struct SetInfo {
    std::uint32_t set_id = 0;
    std::string model;
    std::uint64_t total_points = 0;
    unsigned n_qubits = 0;
    std::optional<unsigned> t_qubits;  // quantum mode only
};

struct RunReport {
    std::string scenario;
    separator::SeparateOptions options;
    std::vector<SetInfo> sets;
    std::vector<ObservationRecord> records;  // input order
    std::vector<SetCurve> curves;
    double elapsed_seconds = 0.0;  // written to timing.json only
};

/// Separates every observation; sweeps curves when `with_curves` and the
/// scenario names curve symbols. Throws ResourceError for oversized
/// quantum registers.
RunReport run(const Scenario& scenario, bool with_curves);
/// Curve sweep without separation.
RunReport run_curves(const Scenario& scenario);

/// Deterministic full-fidelity JSON (no timing).
std::string results_json(const RunReport& report);
/// One row per observation.
std::string decisions_csv(const RunReport& report);
/// One row per symbol.
std::string curve_csv(const SetCurve& curve);
std::string timing_json(const RunReport& report);

/// Writes results.json, decisions.csv (if any records), curve_set<id>.csv
/// per curve and timing.json into `out_dir`, creating it if needed.
void write_report(const RunReport& report, const std::filesystem::path& out_dir);

}  // namespace qsep::scenario
