#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mlsc/bellman.hpp"
#include "mlsc/core.hpp"
#include "mlsc/design.hpp"
#include "mlsc/principal.hpp"

namespace mlsc {

/// Schema violation; the message starts with the offending field name.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class FieldType { Real, Integer, Text, RealList };

struct FieldSpec {
    std::string key;         ///< dotted JSON path, e.g. "model.beta"
    std::string name;        ///< name used in messages and as the CLI flag (--name)
    FieldType type;
    std::string constraint;  ///< human-readable, e.g. "in (0,1)"
    std::string fallback;    ///< default when absent, "" when required or derived
    std::string help;
};

/// Every accepted configuration field. Keys not listed here are rejected.
const std::vector<FieldSpec>& config_schema();
const FieldSpec& field_spec(const std::string& key);

using ConfigValue = std::variant<double, std::int64_t, std::string, std::vector<double>>;

/// Validated key/value configuration. Values are checked against the schema
/// when set, so a RunConfig never holds an out-of-range value.
class RunConfig {
public:
    void set(const std::string& key, ConfigValue value);
    /// Parses text according to the field type (lists: "a,b,c" or "lo:hi:step").
    void set_text(const std::string& key, const std::string& text);
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    /// Later values win.
    void merge(const RunConfig& overrides);

    double real(const std::string& key) const;
    double real_or(const std::string& key, double fallback) const;
    std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;
    std::optional<std::string> text(const std::string& key) const;
    std::optional<std::vector<double>> list(const std::string& key) const;

    /// Requires beta, gamma, c_plus, c_minus, r; delta defaults to 0.
    ModelParams model() const;
    /// Explicit x_max, or the default grid for the ladder when absent.
    GridSpec grid_for(const Ladder& ladder, const ModelParams& params, double fallback_dx = 0.05) const;
    Ladder ladder() const;
    PrincipalParams principal() const;
    OptimizeOptions optimize_options() const;
    GreedyOptions greedy_options() const;

    const std::map<std::string, ConfigValue>& values() const { return values_; }

private:
    std::map<std::string, ConfigValue> values_;
};

RunConfig parse_config_text(const std::string& json_text);
/// Strict JSON config file; model.beta, gamma, c_plus, c_minus and r are required.
RunConfig load_config(const std::string& path);

/// "a,b,c" or inclusive "lo:hi:step".
std::vector<double> parse_real_list(const std::string& text);

}  // namespace mlsc
