// SPDX-License-Identifier: Apache-2.0

#include "qsep/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qsep/errors.hpp"

namespace qsep::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string> kTopLevelKeys = {
    "name",  "alphabet_size", "grid",       "sets",           "observations", "mode",
    "rule",  "priors",        "t_qubits",   "relative_error", "repeats",      "seed",
    "tie_policy", "curves"};

class Checker {
public:
    explicit Checker(std::vector<ValidationIssue>& issues) : issues_(issues) {}

    void error(std::string path, std::string message) {
        issues_.push_back({std::move(path), std::move(message)});
    }

    std::optional<std::uint64_t> uint_field(const json& obj, const std::string& key,
                                            const std::string& path, bool required,
                                            std::uint64_t min = 0,
                                            std::uint64_t max = UINT64_MAX) {
        if (!obj.contains(key)) {
            if (required) error(path + "/" + key, "required field is missing");
            return std::nullopt;
        }
        return uint_value(obj.at(key), path + "/" + key, min, max);
    }

    std::optional<std::uint64_t> uint_value(const json& v, const std::string& path,
                                            std::uint64_t min = 0,
                                            std::uint64_t max = UINT64_MAX) {
        if (!v.is_number_unsigned()) {
            error(path, "expected a nonnegative integer");
            return std::nullopt;
        }
        const auto u = v.get<std::uint64_t>();
        if (u < min || u > max) {
            error(path, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
            return std::nullopt;
        }
        return u;
    }

    std::optional<double> number_field(const json& obj, const std::string& key,
                                       const std::string& path, bool required) {
        if (!obj.contains(key)) {
            if (required) error(path + "/" + key, "required field is missing");
            return std::nullopt;
        }
        const auto& v = obj.at(key);
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
            error(path + "/" + key, "expected a finite number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<std::string> string_field(const json& obj, const std::string& key,
                                            const std::string& path, bool required) {
        if (!obj.contains(key)) {
            if (required) error(path + "/" + key, "required field is missing");
            return std::nullopt;
        }
        if (!obj.at(key).is_string()) {
            error(path + "/" + key, "expected a string");
            return std::nullopt;
        }
        return obj.at(key).get<std::string>();
    }

    std::optional<std::string> enum_field(const json& obj, const std::string& key,
                                          const std::string& path,
                                          const std::set<std::string>& allowed,
                                          const std::string& fallback) {
        if (!obj.contains(key)) return fallback;
        auto s = string_field(obj, key, path, true);
        if (!s) return std::nullopt;
        if (!allowed.contains(*s)) {
            std::string names;
            for (const auto& a : allowed) names += (names.empty() ? "" : ", ") + a;
            error(path + "/" + key, "'" + *s + "' is not one of: " + names);
            return std::nullopt;
        }
        return s;
    }

private:
    std::vector<ValidationIssue>& issues_;
};

std::optional<vdb::Axis> parse_axis(Checker& c, const json& node, const std::string& path) {
    if (!node.is_object()) {
        c.error(path, "axis must be an object");
        return std::nullopt;
    }
    auto name = c.string_field(node, "name", path, true);
    auto unit = c.string_field(node, "unit", path, false);
    const int forms = int(node.contains("values")) + int(node.contains("linear")) +
                      int(node.contains("log"));
    if (forms != 1) {
        c.error(path, "axis needs exactly one of 'values', 'linear', 'log'");
        return std::nullopt;
    }
    if (!name) return std::nullopt;

    vdb::Axis axis;
    try {
        if (node.contains("values")) {
            const auto& values = node.at("values");
            if (!values.is_array()) {
                c.error(path + "/values", "expected an array of numbers");
                return std::nullopt;
            }
            axis = {*name, unit.value_or(""), {}};
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (!values[i].is_number()) {
                    c.error(path + "/values/" + std::to_string(i), "expected a number");
                    return std::nullopt;
                }
                axis.values.push_back(values[i].get<double>());
            }
        } else {
            const std::string form = node.contains("linear") ? "linear" : "log";
            const auto& spec = node.at(form);
            const std::string sub = path + "/" + form;
            if (!spec.is_object()) {
                c.error(sub, "expected {start, stop, count}");
                return std::nullopt;
            }
            auto start = c.number_field(spec, "start", sub, true);
            auto stop = c.number_field(spec, "stop", sub, true);
            auto count = c.uint_field(spec, "count", sub, true, 1, std::uint64_t{1} << 30);
            if (!start || !stop || !count) return std::nullopt;
            axis = form == "linear"
                       ? vdb::Axis::linear(*name, unit.value_or(""), *start, *stop, *count)
                       : vdb::Axis::logarithmic(*name, unit.value_or(""), *start, *stop, *count);
        }
        vdb::ParamGrid single({axis});  // checks ordering and finiteness
    } catch (const std::invalid_argument& e) {
        c.error(path, e.what());
        return std::nullopt;
    }
    return axis;
}

vdb::UniformQuantizer parse_quantizer(Checker& c, const json& params, const std::string& path,
                                      std::uint32_t alphabet) {
    vdb::UniformQuantizer q;
    q.levels = alphabet;
    if (auto w = c.number_field(params, "bucket_width", path, false)) {
        if (*w <= 0.0) c.error(path + "/bucket_width", "must be positive");
        else q.bucket_width = *w;
    }
    if (auto o = c.number_field(params, "origin", path, false)) q.origin = *o;
    return q;
}

std::optional<std::vector<std::int64_t>> parse_table(Checker& c, const json& params,
                                                     const std::string& path,
                                                     const std::filesystem::path& base_dir,
                                                     std::uint32_t alphabet) {
    const bool inline_entries = params.contains("entries");
    if (inline_entries == params.contains("file")) {
        c.error(path, "table model needs exactly one of 'entries', 'file'");
        return std::nullopt;
    }
    std::vector<std::int64_t> table;
    std::string where;
    if (inline_entries) {
        const auto& entries = params.at("entries");
        where = path + "/entries";
        if (!entries.is_array()) {
            c.error(where, "expected an array of integers");
            return std::nullopt;
        }
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (!entries[i].is_number_integer()) {
                c.error(where + "/" + std::to_string(i), "expected an integer");
                return std::nullopt;
            }
            table.push_back(entries[i].get<std::int64_t>());
        }
    } else {
        auto file = c.string_field(params, "file", path, true);
        if (!file) return std::nullopt;
        where = path + "/file";
        std::filesystem::path p(*file);
        if (p.is_relative()) p = base_dir / p;
        try {
            table = vdb::load_table_file(p.string());
        } catch (const std::invalid_argument& e) {
            c.error(where, e.what());
            return std::nullopt;
        }
    }
    bool ok = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] < 0 || table[i] >= static_cast<std::int64_t>(alphabet)) {
            c.error(inline_entries ? where + "/" + std::to_string(i)
                                   : where + " (entry " + std::to_string(i) + ")",
                    "symbol " + std::to_string(table[i]) + " outside alphabet of size " +
                        std::to_string(alphabet));
            ok = false;
        }
    }
    if (!ok) return std::nullopt;
    return table;
}

std::shared_ptr<const vdb::DisturbanceModel> parse_model(
    Checker& c, const json& set, const std::string& path, std::uint32_t id,
    std::uint32_t alphabet, const vdb::ParamGrid& grid, const std::filesystem::path& base_dir) {
    auto model = c.string_field(set, "model", path, true);
    if (!model) return nullptr;
    const json empty = json::object();
    const json& params = set.contains("params") ? set.at("params") : empty;
    const std::string ppath = path + "/params";
    if (!params.is_object()) {
        c.error(ppath, "expected an object");
        return nullptr;
    }

    try {
        if (*model == "table") {
            auto table = parse_table(c, params, ppath, base_dir, alphabet);
            if (!table) return nullptr;
            std::map<std::uint32_t, std::vector<std::int64_t>> tables{{id, std::move(*table)}};
            return std::make_shared<vdb::TableModel>(std::move(tables), alphabet);
        }
        auto source = c.number_field(set, "source", path, true);
        const auto quantizer = parse_quantizer(c, params, ppath, alphabet);
        if (!source) return nullptr;
        if (*model == "additive") {
            return std::make_shared<vdb::AdditiveOffsetModel>(
                std::map<std::uint32_t, double>{{id, *source}}, quantizer);
        }
        if (*model == "delay_velocity") {
            vdb::DelayVelocityModel::Config cfg;
            const auto delay_name = c.string_field(params, "delay_axis", ppath, false).value_or("delay");
            const auto velocity_name =
                c.string_field(params, "velocity_axis", ppath, false).value_or("velocity");
            const auto delay_pos = grid.axis_index(delay_name);
            const auto velocity_pos = grid.axis_index(velocity_name);
            if (!delay_pos) c.error(ppath + "/delay_axis", "no grid axis named '" + delay_name + "'");
            if (!velocity_pos) {
                c.error(ppath + "/velocity_axis", "no grid axis named '" + velocity_name + "'");
            }
            if (auto v = c.number_field(params, "reference_velocity", ppath, false)) {
                cfg.reference_velocity = *v;
            }
            if (auto w = c.number_field(params, "delay_weight", ppath, false)) cfg.delay_weight = *w;
            if (!delay_pos || !velocity_pos) return nullptr;
            cfg.delay_axis = *delay_pos;
            cfg.velocity_axis = *velocity_pos;
            return std::make_shared<vdb::DelayVelocityModel>(
                std::map<std::uint32_t, double>{{id, *source}}, cfg, quantizer);
        }
        c.error(path + "/model", "unknown model '" + *model + "'");
    } catch (const std::invalid_argument& e) {
        c.error(ppath, e.what());
    }
    return nullptr;
}

void apply_overrides(json& doc, const Overrides& o) {
    if (o.mode) doc["mode"] = *o.mode;
    if (o.rule) doc["rule"] = *o.rule;
    if (o.repeats) doc["repeats"] = *o.repeats;
    if (o.t_qubits) doc["t_qubits"] = *o.t_qubits;
    if (o.seed) doc["seed"] = *o.seed;
    if (o.tie_policy) doc["tie_policy"] = *o.tie_policy;
}

}  // namespace

LoadResult load_scenario_text(const std::string& text, const std::filesystem::path& base_dir,
                              const Overrides& overrides) {
    LoadResult result;
    Checker c(result.issues);

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        c.error("", std::string("not valid JSON: ") + e.what());
        return result;
    }
    if (!doc.is_object()) {
        c.error("", "scenario must be a JSON object");
        return result;
    }
    apply_overrides(doc, overrides);
    for (const auto& [key, _] : doc.items()) {
        if (!kTopLevelKeys.contains(key)) c.error("/" + key, "unknown field");
    }

    Scenario s;
    s.name = c.string_field(doc, "name", "", false).value_or("scenario");
    const auto alphabet = c.uint_field(doc, "alphabet_size", "", true, 1, std::uint64_t{1} << 31);

    // grid
    std::vector<vdb::Axis> axes;
    bool grid_ok = false;
    if (!doc.contains("grid")) {
        c.error("/grid", "required field is missing");
    } else if (!doc["grid"].is_object() || !doc["grid"].contains("axes") ||
               !doc["grid"]["axes"].is_array() || doc["grid"]["axes"].empty()) {
        c.error("/grid/axes", "expected a non-empty array of axes");
    } else {
        const auto& nodes = doc["grid"]["axes"];
        grid_ok = true;
        std::set<std::string> names;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const std::string path = "/grid/axes/" + std::to_string(i);
            auto axis = parse_axis(c, nodes[i], path);
            if (!axis) {
                grid_ok = false;
                continue;
            }
            if (!names.insert(axis->name).second) {
                c.error(path + "/name", "duplicate axis name '" + axis->name + "'");
                grid_ok = false;
            }
            axes.push_back(std::move(*axis));
        }
        if (grid_ok) {
            try {
                s.grid = std::make_shared<const vdb::ParamGrid>(std::move(axes));
            } catch (const std::invalid_argument& e) {
                c.error("/grid", e.what());
                grid_ok = false;
            }
        }
    }

    // sets
    std::vector<std::uint32_t> set_ids;
    if (!doc.contains("sets") || !doc["sets"].is_array()) {
        c.error("/sets", "expected an array of sets");
    } else {
        const auto& sets = doc["sets"];
        if (sets.size() < 2) c.error("/sets", "at least two sets are needed");
        std::set<std::uint32_t> seen;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const std::string path = "/sets/" + std::to_string(i);
            if (!sets[i].is_object()) {
                c.error(path, "set must be an object");
                continue;
            }
            const auto id = c.uint_field(sets[i], "id", path, true, 0, UINT32_MAX);
            if (id && !seen.insert(static_cast<std::uint32_t>(*id)).second) {
                c.error(path + "/id", "duplicate set id " + std::to_string(*id));
            }
            if (id) set_ids.push_back(static_cast<std::uint32_t>(*id));
            if (!id || !alphabet || !grid_ok) continue;
            const auto sid = static_cast<std::uint32_t>(*id);
            auto model = parse_model(c, sets[i], path, sid, static_cast<std::uint32_t>(*alphabet),
                                     *s.grid, base_dir);
            if (!model) continue;
            try {
                s.dbs.emplace_back(sid, s.grid, std::move(model));
            } catch (const std::invalid_argument& e) {
                c.error(path, e.what());
            }
        }
    }

    // observations
    if (!doc.contains("observations") || !doc["observations"].is_array() ||
        doc["observations"].empty()) {
        c.error("/observations", "expected a non-empty array of symbols");
    } else if (alphabet) {
        const auto& obs = doc["observations"];
        for (std::size_t i = 0; i < obs.size(); ++i) {
            auto code = c.uint_value(obs[i], "/observations/" + std::to_string(i), 0, *alphabet - 1);
            if (code) {
                s.observations.push_back(vdb::Symbol::make(static_cast<std::uint32_t>(*code),
                                                           static_cast<std::uint32_t>(*alphabet)));
            }
        }
    }

    // execution settings
    const auto mode = c.enum_field(doc, "mode", "", {"exact", "quantum"}, "exact");
    const auto rule = c.enum_field(doc, "rule", "", {"ml", "map"}, "ml");
    const auto ties = c.enum_field(doc, "tie_policy", "", {"report", "lowest_set"}, "report");
    auto& est = s.options.estimate;
    if (mode) est.mode = *mode == "exact" ? separator::CountMode::exact : separator::CountMode::quantum;
    if (rule) s.options.rule = *rule == "ml" ? separator::DecisionRule::ml : separator::DecisionRule::map;
    if (ties) {
        s.options.ties = *ties == "report" ? separator::TiePolicy::report
                                           : separator::TiePolicy::lowest_set;
    }
    if (auto r = c.uint_field(doc, "repeats", "", false, 1, 1001)) est.repeats = static_cast<unsigned>(*r);
    if (auto t = c.uint_field(doc, "t_qubits", "", false, 1, 64)) est.t_qubits = static_cast<unsigned>(*t);
    if (auto e = c.number_field(doc, "relative_error", "", false)) {
        if (*e > 0.0 && *e <= 1.0) est.relative_error = *e;
        else c.error("/relative_error", "must lie in (0, 1]");
    }
    const auto seed = c.uint_field(doc, "seed", "", false);
    if (seed) est.seed = *seed;
    if (mode && *mode == "quantum" && !doc.contains("seed")) {
        c.error("/seed", "a seed is mandatory in quantum mode");
    }

    if (doc.contains("priors")) {
        const auto& node = doc["priors"];
        if (!node.is_object()) {
            c.error("/priors", "expected an object mapping set id to probability");
        } else {
            std::map<std::uint32_t, double> p;
            bool ok = true;
            for (const auto& [key, value] : node.items()) {
                const std::string path = "/priors/" + key;
                std::uint32_t id = 0;
                try {
                    std::size_t used = 0;
                    const auto parsed = std::stoul(key, &used);
                    if (used != key.size() || parsed > UINT32_MAX) throw std::invalid_argument(key);
                    id = static_cast<std::uint32_t>(parsed);
                } catch (const std::exception&) {
                    c.error(path, "prior keys must be set ids");
                    ok = false;
                    continue;
                }
                if (!value.is_number()) {
                    c.error(path, "expected a probability");
                    ok = false;
                    continue;
                }
                p[id] = value.get<double>();
            }
            const std::set<std::uint32_t> ids(set_ids.begin(), set_ids.end());
            std::set<std::uint32_t> covered;
            for (const auto& [id, _] : p) covered.insert(id);
            if (ok && covered != ids) {
                c.error("/priors", "priors must name exactly the declared set ids");
                ok = false;
            }
            if (ok) {
                try {
                    s.options.priors = separator::Priors(std::move(p));
                } catch (const std::invalid_argument& e) {
                    c.error("/priors", e.what());
                }
            }
        }
    }

    if (doc.contains("curves") && alphabet) {
        const auto& node = doc["curves"];
        const auto a = static_cast<std::uint32_t>(*alphabet);
        if (node.is_string() && node.get<std::string>() == "all") {
            for (std::uint32_t code = 0; code < a; ++code) s.curve_symbols.push_back({code, a});
        } else if (node.is_array() && !node.empty()) {
            for (std::size_t i = 0; i < node.size(); ++i) {
                if (auto code = c.uint_value(node[i], "/curves/" + std::to_string(i), 0, a - 1)) {
                    s.curve_symbols.push_back({static_cast<std::uint32_t>(*code), a});
                }
            }
        } else {
            c.error("/curves", "expected \"all\" or a non-empty array of symbols");
        }
    }

    if (alphabet) s.alphabet_size = static_cast<std::uint32_t>(*alphabet);
    if (result.issues.empty()) result.scenario = std::move(s);
    return result;
}

LoadResult load_scenario_file(const std::filesystem::path& path, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) {
        LoadResult r;
        r.issues.push_back({"", "cannot open '" + path.string() + "'"});
        return r;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario_text(buf.str(), path.parent_path(), overrides);
}

namespace {

std::vector<SetInfo> describe_sets(const Scenario& s) {
    std::vector<SetInfo> out;
    for (const auto& db : s.dbs) {
        SetInfo info{db.set_id(), std::string(db.model().model_id()), db.grid().total_points(),
                     db.n_qubits(), std::nullopt};
        if (s.options.estimate.mode == separator::CountMode::quantum) {
            info.t_qubits = s.options.estimate.t_qubits.value_or(
                qcount::counting_register_size(db.n_qubits(), s.options.estimate.relative_error));
        }
        out.push_back(info);
    }
    return out;
}

std::vector<SetCurve> sweep(const Scenario& s) {
    std::vector<SetCurve> curves;
    for (const auto& db : s.dbs) {
        separator::EstimateOptions opts = s.options.estimate;
        opts.seed = separator::derive_seed(s.options.estimate.seed, db.set_id());
        curves.push_back({db.set_id(), separator::pdf_curve(db, s.curve_symbols, opts)});
    }
    return curves;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

RunReport run(const Scenario& scenario, bool with_curves) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.scenario = scenario.name;
    report.options = scenario.options;
    report.sets = describe_sets(scenario);
    for (const auto& r : scenario.observations) {
        report.records.push_back({r, separator::separate(scenario.dbs, r, scenario.options)});
    }
    if (with_curves && !scenario.curve_symbols.empty()) report.curves = sweep(scenario);
    report.elapsed_seconds = seconds_since(start);
    return report;
}

RunReport run_curves(const Scenario& scenario) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.scenario = scenario.name;
    report.options = scenario.options;
    report.sets = describe_sets(scenario);
    if (!scenario.curve_symbols.empty()) {
        report.curves = sweep(scenario);
    } else {
        // no explicit list: the whole alphabet
        Scenario all = scenario;
        for (std::uint32_t c = 0; c < scenario.alphabet_size; ++c) {
            all.curve_symbols.push_back({c, scenario.alphabet_size});
        }
        report.curves = sweep(all);
    }
    report.elapsed_seconds = seconds_since(start);
    return report;
}

namespace {

ordered_json likelihood_json(const separator::LikelihoodEstimate& e) {
    ordered_json j;
    j["set"] = e.set_id;
    j["value"] = e.value;
    j["m_hat"] = e.m_hat;
    j["denominator"] = e.denominator;
    j["mode"] = separator::to_string(e.mode);
    j["error_bound"] = e.error_bound;
    j["t_qubits"] = e.t_qubits;
    j["repeats"] = e.repeats;
    return j;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string results_json(const RunReport& report) {
    const auto& o = report.options;
    ordered_json j;
    j["scenario"] = report.scenario;
    j["mode"] = separator::to_string(o.estimate.mode);
    j["rule"] = separator::to_string(o.rule);
    j["tie_policy"] = o.ties == separator::TiePolicy::report ? "report" : "lowest_set";
    j["seed"] = o.estimate.seed;
    j["repeats"] = o.estimate.repeats;

    j["sets"] = ordered_json::array();
    for (const auto& s : report.sets) {
        ordered_json sj;
        sj["id"] = s.set_id;
        sj["model"] = s.model;
        sj["total_points"] = s.total_points;
        sj["n_qubits"] = s.n_qubits;
        sj["t_qubits"] = s.t_qubits ? ordered_json(*s.t_qubits) : ordered_json(nullptr);
        j["sets"].push_back(sj);
    }

    j["decisions"] = ordered_json::array();
    for (const auto& rec : report.records) {
        const auto& d = rec.decision;
        ordered_json dj;
        dj["observation"] = rec.observation.code;
        dj["verdict"] = separator::to_string(d.verdict);
        dj["sets"] = d.sets;
        dj["tie_broken"] = d.tie_broken;
        dj["within_error_bound"] = d.within_error_bound;
        if (d.posteriors) {
            ordered_json pj = ordered_json::object();
            for (const auto& [id, p] : *d.posteriors) pj[std::to_string(id)] = p;
            dj["posteriors"] = pj;
        } else {
            dj["posteriors"] = nullptr;
        }
        dj["likelihoods"] = ordered_json::array();
        for (const auto& e : d.likelihoods) dj["likelihoods"].push_back(likelihood_json(e));
        j["decisions"].push_back(dj);
    }

    j["curves"] = ordered_json::array();
    for (const auto& curve : report.curves) {
        ordered_json cj;
        cj["set"] = curve.set_id;
        cj["points"] = ordered_json::array();
        for (const auto& p : curve.points) {
            ordered_json pj;
            pj["symbol"] = p.symbol.code;
            pj["value"] = p.estimate.value;
            pj["m_hat"] = p.estimate.m_hat;
            pj["error_bound"] = p.estimate.error_bound;
            cj["points"].push_back(pj);
        }
        j["curves"].push_back(cj);
    }
    return j.dump(2) + "\n";
}

std::string decisions_csv(const RunReport& report) {
    std::ostringstream out;
    out << "observation,verdict,sets,within_error_bound";
    for (const auto& s : report.sets) out << ",f_" << s.set_id << ",err_" << s.set_id;
    out << "\n";
    for (const auto& rec : report.records) {
        const auto& d = rec.decision;
        out << rec.observation.code << ',' << separator::to_string(d.verdict) << ',';
        for (std::size_t i = 0; i < d.sets.size(); ++i) out << (i ? ";" : "") << d.sets[i];
        out << ',' << (d.within_error_bound ? 1 : 0);
        for (const auto& e : d.likelihoods) {
            out << ',' << fmt_double(e.value) << ',' << fmt_double(e.error_bound);
        }
        out << "\n";
    }
    return out.str();
}

std::string curve_csv(const SetCurve& curve) {
    std::ostringstream out;
    out << "symbol,value,m_hat,error_bound\n";
    for (const auto& p : curve.points) {
        out << p.symbol.code << ',' << fmt_double(p.estimate.value) << ','
            << fmt_double(p.estimate.m_hat) << ',' << fmt_double(p.estimate.error_bound) << "\n";
    }
    return out.str();
}

std::string timing_json(const RunReport& report) {
    ordered_json j;
    j["scenario"] = report.scenario;
    j["elapsed_seconds"] = report.elapsed_seconds;
    j["observations"] = report.records.size();
    j["sets"] = ordered_json::array();
    for (const auto& s : report.sets) {
        ordered_json sj;
        sj["id"] = s.set_id;
        sj["n_qubits"] = s.n_qubits;
        sj["register_qubits"] = s.n_qubits + s.t_qubits.value_or(0);
        j["sets"].push_back(sj);
    }
    return j.dump(2) + "\n";
}

void write_report(const RunReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream f(out_dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
        f << content;
    };
    write("results.json", results_json(report));
    if (!report.records.empty()) write("decisions.csv", decisions_csv(report));
    for (const auto& c : report.curves) {
        write("curve_set" + std::to_string(c.set_id) + ".csv", curve_csv(c));
    }
    write("timing.json", timing_json(report));
}

}  // namespace qsep::scenario
