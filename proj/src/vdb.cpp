// SPDX-License-Identifier: Apache-2.0

#include "qsep/vdb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qsep/errors.hpp"

namespace qsep::vdb {

Axis Axis::linear(std::string name, std::string unit, double start, double stop,
                  std::size_t count) {
    if (count == 0) throw std::invalid_argument("axis '" + name + "' needs at least one value");
    Axis axis{std::move(name), std::move(unit), {}};
    axis.values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        axis.values.push_back(count == 1 ? start
                                         : start + (stop - start) * static_cast<double>(i) /
                                                       static_cast<double>(count - 1));
    }
    if (count > 1) axis.values.back() = stop;
    return axis;
}

Axis Axis::logarithmic(std::string name, std::string unit, double start, double stop,
                       std::size_t count) {
    if (!(start > 0.0 && stop > 0.0)) {
        throw std::invalid_argument("logarithmic axis '" + name + "' needs positive bounds");
    }
    Axis axis = linear(std::move(name), std::move(unit), std::log10(start), std::log10(stop), count);
    for (auto& v : axis.values) v = std::pow(10.0, v);
    axis.values.front() = start;
    if (count > 1) axis.values.back() = stop;
    return axis;
}

ParamGrid::ParamGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw std::invalid_argument("parameter grid needs at least one axis");
    for (const auto& axis : axes_) {
        if (axis.values.empty()) {
            throw std::invalid_argument("axis '" + axis.name + "' is empty");
        }
        for (std::size_t i = 0; i < axis.values.size(); ++i) {
            if (!std::isfinite(axis.values[i])) {
                throw std::invalid_argument("axis '" + axis.name + "' has a non-finite value");
            }
            if (i > 0 && !(axis.values[i] > axis.values[i - 1])) {
                throw std::invalid_argument("axis '" + axis.name + "' is not strictly increasing");
            }
        }
        if (total_points_ > (std::uint64_t{1} << 40) / axis.values.size()) {
            throw std::invalid_argument("parameter grid exceeds 2^40 points");
        }
        total_points_ *= axis.values.size();
    }
}

std::optional<std::size_t> ParamGrid::axis_index(std::string_view name) const {
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (axes_[i].name == name) return i;
    }
    return std::nullopt;
}

std::vector<std::size_t> ParamGrid::index_to_coords(std::uint64_t x) const {
    if (x >= total_points_) {
        throw std::invalid_argument("index " + std::to_string(x) + " outside a grid of " +
                                    std::to_string(total_points_) + " points");
    }
    std::vector<std::size_t> coords(axes_.size());
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        const std::uint64_t radix = axes_[i].values.size();
        coords[i] = static_cast<std::size_t>(x % radix);
        x /= radix;
    }
    return coords;
}

std::vector<double> ParamGrid::index_to_params(std::uint64_t x) const {
    const auto coords = index_to_coords(x);
    std::vector<double> params(axes_.size());
    for (std::size_t i = 0; i < axes_.size(); ++i) params[i] = axes_[i].values[coords[i]];
    return params;
}

std::uint64_t ParamGrid::params_to_index(std::span<const double> params) const {
    if (params.size() != axes_.size()) {
        throw std::invalid_argument("parameter tuple has the wrong number of entries");
    }
    std::uint64_t x = 0;
    for (std::size_t i = axes_.size(); i-- > 0;) {
        const auto& values = axes_[i].values;
        const auto it = std::lower_bound(values.begin(), values.end(), params[i]);
        if (it == values.end() || *it != params[i]) {
            throw std::invalid_argument("value is not on axis '" + axes_[i].name + "'");
        }
        x = x * values.size() + static_cast<std::uint64_t>(it - values.begin());
    }
    return x;
}

Symbol Symbol::make(std::uint32_t code, std::uint32_t alphabet_size) {
    if (code >= alphabet_size) {
        throw std::invalid_argument("symbol " + std::to_string(code) + " outside alphabet of size " +
                                    std::to_string(alphabet_size));
    }
    return {code, alphabet_size};
}

std::int64_t UniformQuantizer::operator()(double value) const {
    if (!std::isfinite(value)) throw ModelContractError("quantizer received a non-finite value");
    const double bucket = std::floor((value - origin) / bucket_width + 0.5);
    const double top = static_cast<double>(levels) - 1.0;
    return static_cast<std::int64_t>(std::clamp(bucket, 0.0, top));
}

namespace {

void check_quantizer(const UniformQuantizer& q) {
    if (q.levels == 0) throw std::invalid_argument("quantizer needs at least one level");
    if (!(q.bucket_width > 0.0) || !std::isfinite(q.bucket_width)) {
        throw std::invalid_argument("quantizer bucket width must be positive");
    }
    if (!std::isfinite(q.origin)) throw std::invalid_argument("quantizer origin must be finite");
}

}  // namespace

AdditiveOffsetModel::AdditiveOffsetModel(std::map<std::uint32_t, double> source,
                                         UniformQuantizer quantizer)
    : source_(std::move(source)), quantizer_(quantizer) {
    check_quantizer(quantizer_);
}

std::int64_t AdditiveOffsetModel::eval(std::uint32_t set_id, const GridPoint& point) const {
    double v = source_.at(set_id);
    for (double p : point.params) v += p;
    return quantizer_(v);
}

DelayVelocityModel::DelayVelocityModel(std::map<std::uint32_t, double> source, Config config,
                                       UniformQuantizer quantizer)
    : source_(std::move(source)), config_(config), quantizer_(quantizer) {
    check_quantizer(quantizer_);
    if (!(config_.reference_velocity > 0.0)) {
        throw std::invalid_argument("reference velocity must be positive");
    }
    if (config_.delay_axis == config_.velocity_axis) {
        throw std::invalid_argument("delay and velocity must be different axes");
    }
}

std::int64_t DelayVelocityModel::eval(std::uint32_t set_id, const GridPoint& point) const {
    const double delay = point.params[config_.delay_axis];
    const double velocity = point.params[config_.velocity_axis];
    const double v = source_.at(set_id) * velocity / config_.reference_velocity -
                     config_.delay_weight * std::log10(delay);
    return quantizer_(v);
}

void DelayVelocityModel::check_grid(std::uint32_t, const ParamGrid& grid) const {
    const auto& axes = grid.axes();
    if (config_.delay_axis >= axes.size() || config_.velocity_axis >= axes.size()) {
        throw std::invalid_argument("delay/velocity axis position outside the grid");
    }
    if (axes[config_.delay_axis].values.front() <= 0.0) {
        throw std::invalid_argument("delay axis must be strictly positive");
    }
}

TableModel::TableModel(std::map<std::uint32_t, std::vector<std::int64_t>> tables,
                       std::uint32_t alphabet_size)
    : tables_(std::move(tables)), alphabet_size_(alphabet_size) {
    if (alphabet_size_ == 0) throw std::invalid_argument("alphabet must be non-empty");
}

std::int64_t TableModel::eval(std::uint32_t set_id, const GridPoint& point) const {
    return tables_.at(set_id).at(point.index);
}

void TableModel::check_grid(std::uint32_t set_id, const ParamGrid& grid) const {
    const auto& table = tables_.at(set_id);
    if (table.size() != grid.total_points()) {
        throw std::invalid_argument("table for set " + std::to_string(set_id) + " has " +
                                    std::to_string(table.size()) + " entries but the grid has " +
                                    std::to_string(grid.total_points()) + " points");
    }
}

std::vector<ModelInfo> builtin_models() {
    return {
        {"additive", "y = Q(mu_s + sum_i x_i)"},
        {"delay_velocity",
         "y = Q(mu_s * velocity / reference_velocity - delay_weight * log10(delay))"},
        {"table", "y = table_s[x]"},
    };
}

std::vector<std::int64_t> load_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open table file '" + path + "'");
    std::vector<std::int64_t> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        std::istringstream fields(line);
        std::int64_t value = 0;
        if (!(fields >> value)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": not an integer");
        }
        std::string rest;
        if (fields >> rest) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected one integer per line");
        }
        out.push_back(value);
    }
    return out;
}

VirtualDb::VirtualDb(std::uint32_t set_id, std::shared_ptr<const ParamGrid> grid,
                     std::shared_ptr<const DisturbanceModel> model)
    : set_id_(set_id), grid_(std::move(grid)), model_(std::move(model)), n_qubits_(1) {
    if (!grid_ || !model_) throw std::invalid_argument("virtual database needs a grid and a model");
    if (!model_->supports_set(set_id_)) {
        throw std::invalid_argument("model '" + std::string(model_->model_id()) +
                                    "' has no definition for set " + std::to_string(set_id_));
    }
    model_->check_grid(set_id_, *grid_);
    while ((std::uint64_t{1} << n_qubits_) < grid_->total_points()) ++n_qubits_;
}

Symbol VirtualDb::evaluate(std::uint64_t x) const {
    if (x >= register_size()) throw std::invalid_argument("index beyond the register");
    const std::uint32_t alphabet = alphabet_size();
    if (x >= grid_->total_points()) return Symbol::padding(alphabet);
    const auto params = grid_->index_to_params(x);
    const std::int64_t code = model_->eval(set_id_, GridPoint{x, params});
    if (code < 0 || code >= static_cast<std::int64_t>(alphabet)) {
        throw ModelContractError("model '" + std::string(model_->model_id()) + "' produced code " +
                                 std::to_string(code) + " at index " + std::to_string(x) +
                                 ", outside its alphabet of size " + std::to_string(alphabet));
    }
    return {static_cast<std::uint32_t>(code), alphabet};
}

std::vector<std::uint32_t> VirtualDb::evaluate_all() const {
    std::vector<std::uint32_t> codes(grid_->total_points());
    for (std::uint64_t x = 0; x < codes.size(); ++x) codes[x] = evaluate(x).code;
    return codes;
}

grover::OracleSpec match_oracle(const VirtualDb& db, const Symbol& r) {
    if (r.alphabet_size != db.alphabet_size()) {
        throw std::invalid_argument("observation alphabet (" + std::to_string(r.alphabet_size) +
                                    ") does not match the model alphabet (" +
                                    std::to_string(db.alphabet_size()) + ")");
    }
    if (r.is_padding()) throw std::invalid_argument("the padding symbol is not an observation");
    const std::uint64_t real = db.grid().total_points();
    return grover::OracleSpec(db.n_qubits(), [&](std::uint64_t x) {
        return x < real && db.evaluate(x).code == r.code;
    });
}

}  // namespace qsep::vdb
