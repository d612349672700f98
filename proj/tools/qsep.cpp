// SPDX-License-Identifier: Apache-2.0
//
// qsep: run set-separation scenarios.
//
//   qsep validate <scenario.json>
//   qsep run <scenario.json> [--out DIR] [--curves] [overrides...]
//   qsep curve <scenario.json> [--out DIR] [overrides...]
//   qsep models
//
// Exit status: 0 success, 1 validation failure, 2 resource limit.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qsep/errors.hpp"
#include "qsep/scenario.hpp"
#include "qsep/vdb.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitResource = 2;

struct Args {
    std::string config;
    std::string out_dir = "qsep_out";
    bool curves = false;
    qsep::scenario::Overrides overrides;
};

void add_overrides(CLI::App* cmd, Args& args) {
    auto& o = args.overrides;
    cmd->add_option("--mode", o.mode, "Counting mode")->check(CLI::IsMember({"exact", "quantum"}));
    cmd->add_option("--rule", o.rule, "Decision rule")->check(CLI::IsMember({"ml", "map"}));
    cmd->add_option("--repeats", o.repeats, "Quantum shots per likelihood (median)");
    cmd->add_option("--t", o.t_qubits, "Counting register size");
    cmd->add_option("--seed", o.seed, "Base RNG seed");
    cmd->add_option("--tie-policy", o.tie_policy, "How equal likelihoods are reported")
        ->check(CLI::IsMember({"report", "lowest_set"}));
    cmd->add_option("--out", args.out_dir, "Output directory");
}

std::optional<qsep::scenario::Scenario> load(const Args& args) {
    auto loaded = qsep::scenario::load_scenario_file(args.config, args.overrides);
    for (const auto& issue : loaded.issues) {
        std::cerr << (issue.path.empty() ? "/" : issue.path) << ": " << issue.message << "\n";
    }
    return std::move(loaded.scenario);
}

int execute(const Args& args, bool curve_only) {
    auto scenario = load(args);
    if (!scenario) return kExitInvalid;
    try {
        const auto report = curve_only ? qsep::scenario::run_curves(*scenario)
                                       : qsep::scenario::run(*scenario, args.curves);
        qsep::scenario::write_report(report, args.out_dir);
        std::cerr << "wrote " << args.out_dir << " (" << report.elapsed_seconds << " s)\n";
    } catch (const qsep::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-counting set separation over virtual databases"};
    app.require_subcommand(1);
    Args args;

    auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
    validate->add_option("config", args.config, "Scenario document")->required();

    auto* run = app.add_subcommand("run", "Separate every observation");
    run->add_option("config", args.config, "Scenario document")->required();
    run->add_flag("--curves", args.curves, "Also sweep the scenario's curve symbols");
    add_overrides(run, args);

    auto* curve = app.add_subcommand("curve", "Sweep f(r|s) only");
    curve->add_option("config", args.config, "Scenario document")->required();
    add_overrides(curve, args);

    app.add_subcommand("models", "List built-in disturbance models");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            const bool ok = load(args).has_value();
            if (ok) std::cout << "ok\n";
            return ok ? kExitOk : kExitInvalid;
        }
        if (*run) return execute(args, false);
        if (*curve) return execute(args, true);
        for (const auto& m : qsep::vdb::builtin_models()) {
            std::cout << m.id << "\t" << m.formula << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
