#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qswitch/errors.hpp"

namespace qswitch {

inline constexpr std::uint64_t kDefaultSeed = 20250614ULL;

enum class ScenarioType {
    switch_map,
    sweep_b,
    monitoring_info,
    fridge_cop,
    fridge_cop_prime,
    refrigeration_region,
    control_heat,
    verify,
};

const char* to_string(ScenarioType type);
ScenarioType scenario_type_from_name(const std::string& name);
std::vector<std::string> scenario_names();

/// One parsed scenario description: the scenario type, its output path and
/// a flat `section.key -> value` map. The file grammar is INI-style
/// sections of `key = value` lines; see the README for the full grammar.
class ScenarioConfig {
  public:
    static ScenarioConfig parse_file(const std::filesystem::path& path);
    static ScenarioConfig parse_text(std::string_view text, const std::string& origin);

    /// Minimal in-memory config for scenarios that need no file (verify).
    static ScenarioConfig make(ScenarioType type, std::filesystem::path output);

    ScenarioType scenario() const { return type_; }
    const std::filesystem::path& output_path() const { return output_; }

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int fallback) const;

    /// Scalar, comma list, or start:step:stop range.
    std::vector<double> get_grid(const std::string& key) const;
    std::vector<double> get_grid_or(const std::string& key, std::vector<double> fallback) const;

    /// Scalar, comma list, or lo..hi inclusive integer range.
    std::vector<int> get_int_list(const std::string& key) const;
    std::vector<int> get_int_list_or(const std::string& key, std::vector<int> fallback) const;

    /// Sorted view of every entry, for the CSV parameter echo.
    const std::map<std::string, std::string>& entries() const { return values_; }

  private:
    ScenarioConfig() = default;
    ScenarioType type_ = ScenarioType::verify;
    std::filesystem::path output_;
    std::map<std::string, std::string> values_;
};

struct RunOptions {
    std::optional<std::filesystem::path> output_override;
    unsigned threads = 1;
    std::uint64_t seed = kDefaultSeed;
    std::ostream* log = nullptr; // warnings and verify progress, when set
};

/// Executes the scenario and writes its CSV file(s). Returns false only
/// when a `verify` run finds a violated bound; configuration problems
/// throw ConfigError, physics violations InvariantError, numerical
/// breakdowns NumericalError.
bool run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

} // namespace qswitch
