// SPDX-License-Identifier: Apache-2.0
//
// Virtual databases: a quantized parameter grid, a deterministic disturbance
// model, and the forward map y = g(s, x) from register index to output
// symbol. The table is never stored; it is evaluated on demand.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsep/grover.hpp"

namespace qsep::vdb {

struct Axis {
    std::string name;
    std::string unit;
    std::vector<double> values;  // strictly increasing

    static Axis linear(std::string name, std::string unit, double start, double stop,
                       std::size_t count);
    /// `count` values evenly spaced in log10 between start and stop (both > 0).
    static Axis logarithmic(std::string name, std::string unit, double start, double stop,
                            std::size_t count);
};

/// Cartesian product of axes. Index x decomposes mixed-radix with axis 0 as
/// the least-significant digit: x = c0 + |a0| (c1 + |a1| (c2 + ...)).
class ParamGrid {
public:
    explicit ParamGrid(std::vector<Axis> axes);

    const std::vector<Axis>& axes() const noexcept { return axes_; }
    std::uint64_t total_points() const noexcept { return total_points_; }
    std::optional<std::size_t> axis_index(std::string_view name) const;

    std::vector<std::size_t> index_to_coords(std::uint64_t x) const;
    std::vector<double> index_to_params(std::uint64_t x) const;
    /// Inverse of index_to_params; every value must lie exactly on its axis.
    std::uint64_t params_to_index(std::span<const double> params) const;

private:
    std::vector<Axis> axes_;
    std::uint64_t total_points_ = 1;
};

/// Element of a finite output alphabet. Code == alphabet_size is reserved
/// for padding indices and never equals a valid observation.
struct Symbol {
    std::uint32_t code = 0;
    std::uint32_t alphabet_size = 1;

    /// Throws std::invalid_argument unless code < alphabet_size.
    static Symbol make(std::uint32_t code, std::uint32_t alphabet_size);
    static Symbol padding(std::uint32_t alphabet_size) { return {alphabet_size, alphabet_size}; }

    bool is_padding() const noexcept { return code >= alphabet_size; }
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct GridPoint {
    std::uint64_t index;
    std::span<const double> params;
};

/// Deterministic transfer function standing in for the observed system.
class DisturbanceModel {
public:
    virtual ~DisturbanceModel() = default;

    virtual std::string_view model_id() const = 0;
    virtual std::uint32_t alphabet_size() const = 0;
    virtual bool supports_set(std::uint32_t set_id) const = 0;
    /// Raw output code; callers check it against alphabet_size().
    virtual std::int64_t eval(std::uint32_t set_id, const GridPoint& point) const = 0;
    /// Hook for grid-shape requirements. Throws std::invalid_argument.
    virtual void check_grid(std::uint32_t /*set_id*/, const ParamGrid& /*grid*/) const {}
};

/// Uniform mid-tread quantizer clamped to [0, levels).
struct UniformQuantizer {
    double origin = 0.0;
    double bucket_width = 1.0;
    std::uint32_t levels = 1;

    std::int64_t operator()(double value) const;
};

/// y = Q(mu_s + sum_i params_i).
class AdditiveOffsetModel final : public DisturbanceModel {
public:
    AdditiveOffsetModel(std::map<std::uint32_t, double> source, UniformQuantizer quantizer);

    std::string_view model_id() const override { return "additive"; }
    std::uint32_t alphabet_size() const override { return quantizer_.levels; }
    bool supports_set(std::uint32_t set_id) const override { return source_.contains(set_id); }
    std::int64_t eval(std::uint32_t set_id, const GridPoint& point) const override;

private:
    std::map<std::uint32_t, double> source_;
    UniformQuantizer quantizer_;
};

/// Toy propagation channel over a delay axis [s] and a velocity axis [m/s]:
///   y = Q(mu_s * velocity / reference_velocity + delay_weight * (-log10 delay)).
class DelayVelocityModel final : public DisturbanceModel {
public:
    struct Config {
        std::size_t delay_axis = 0;
        std::size_t velocity_axis = 1;
        double reference_velocity = 1.0;
        double delay_weight = 1.0;
    };

    DelayVelocityModel(std::map<std::uint32_t, double> source, Config config,
                       UniformQuantizer quantizer);

    std::string_view model_id() const override { return "delay_velocity"; }
    std::uint32_t alphabet_size() const override { return quantizer_.levels; }
    bool supports_set(std::uint32_t set_id) const override { return source_.contains(set_id); }
    std::int64_t eval(std::uint32_t set_id, const GridPoint& point) const override;
    void check_grid(std::uint32_t set_id, const ParamGrid& grid) const override;

    const Config& config() const noexcept { return config_; }

private:
    std::map<std::uint32_t, double> source_;
    Config config_;
    UniformQuantizer quantizer_;
};

/// Explicit lookup: y = table_s[x]. Each table must cover the grid exactly.
class TableModel final : public DisturbanceModel {
public:
    TableModel(std::map<std::uint32_t, std::vector<std::int64_t>> tables,
               std::uint32_t alphabet_size);

    std::string_view model_id() const override { return "table"; }
    std::uint32_t alphabet_size() const override { return alphabet_size_; }
    bool supports_set(std::uint32_t set_id) const override { return tables_.contains(set_id); }
    std::int64_t eval(std::uint32_t set_id, const GridPoint& point) const override;
    void check_grid(std::uint32_t set_id, const ParamGrid& grid) const override;

private:
    std::map<std::uint32_t, std::vector<std::int64_t>> tables_;
    std::uint32_t alphabet_size_;
};

struct ModelInfo {
    std::string id;
    std::string formula;
};

/// Catalogue of the built-in model families.
std::vector<ModelInfo> builtin_models();

/// Reads a lookup table: one integer per line, blank lines ignored.
std::vector<std::int64_t> load_table_file(const std::string& path);

class VirtualDb {
public:
    VirtualDb(std::uint32_t set_id, std::shared_ptr<const ParamGrid> grid,
              std::shared_ptr<const DisturbanceModel> model);

    std::uint32_t set_id() const noexcept { return set_id_; }
    const ParamGrid& grid() const noexcept { return *grid_; }
    const DisturbanceModel& model() const noexcept { return *model_; }
    std::uint32_t alphabet_size() const { return model_->alphabet_size(); }
    /// Smallest n with 2^n >= total_points (at least 1).
    unsigned n_qubits() const noexcept { return n_qubits_; }
    std::uint64_t register_size() const noexcept { return std::uint64_t{1} << n_qubits_; }

    /// g(s, x). Indices beyond the grid return Symbol::padding. Throws
    /// ModelContractError if the model leaves its alphabet.
    Symbol evaluate(std::uint64_t x) const;

    /// Codes for every real grid point, in index order.
    std::vector<std::uint32_t> evaluate_all() const;

private:
    std::uint32_t set_id_;
    std::shared_ptr<const ParamGrid> grid_;
    std::shared_ptr<const DisturbanceModel> model_;
    unsigned n_qubits_;
};

/// Oracle marking x with g(s, x) == r. Padding indices are never marked.
grover::OracleSpec match_oracle(const VirtualDb& db, const Symbol& r);

}  // namespace qsep::vdb
