#pragma once

// Scenario configuration, time-series runs, figure presets and CSV I/O.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kerrsim/model.hpp"

namespace kerrsim {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Observable { gqd, qfi, purity, atomic_entropy };

std::string_view to_string(Observable o);
/// Throws ConfigError for unknown names.
Observable parse_observable(std::string_view name);
/// Comma-separated list, e.g. "gqd,qfi".
std::vector<Observable> parse_observables(std::string_view list);

struct ScenarioConfig {
    SystemParams system;
    InitialStateParams initial;
    double t_max = 200.0;
    double dt = 0.05;  ///< output sampling step; evolution itself is closed-form
    std::vector<Observable> observables{Observable::gqd, Observable::qfi};
    std::optional<double> qfi_theta_point;  ///< unset: use initial.theta
    std::string label = "custom";
    std::uint64_t seed = 42;  ///< discord optimizer seed

    void validate() const;
    double qfi_theta() const { return qfi_theta_point.value_or(initial.theta); }
    /// t = k * dt for k = 0 .. floor(t_max / dt).
    std::vector<double> time_grid() const;
};

struct TimeSeriesRecord {
    double t = 0.0;
    std::map<Observable, double> values;
};

/// Evaluate every configured observable on the time grid. Grid points are processed in
/// fixed-size blocks (in parallel when OpenMP is available); the discord optimizer is warm
/// started from the previous point inside a block, so output does not depend on thread count.
std::vector<TimeSeriesRecord> run_scenario(const ScenarioConfig& cfg);

/// Grid points per warm-start block in run_scenario.
inline constexpr int kWarmStartBlock = 100;

// --- presets ---------------------------------------------------------------------------

std::vector<std::string> preset_names();
int preset_variant_count(std::string_view name);
/// Variants are 0-based, in the order listed for each figure.
ScenarioConfig preset(std::string_view name, int variant);

// --- configuration files -----------------------------------------------------------------

ScenarioConfig scenario_from_json(const nlohmann::json& j, ScenarioConfig base = {});
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// --- CSV ---------------------------------------------------------------------------------

void write_csv(const std::vector<TimeSeriesRecord>& records, const ScenarioConfig& cfg,
               const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::optional<std::string> meta(std::string_view key) const;
    /// Column values by header name; throws InvalidInput when absent.
    std::vector<double> column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Run every variant of a figure preset and write `<figure>_<variant>.csv` into outdir.
struct ReproduceOptions {
    std::optional<std::uint64_t> seed;
    std::optional<double> t_max;
    std::optional<double> dt;
};

std::vector<std::filesystem::path> reproduce_figure(std::string_view figure, const std::filesystem::path& outdir,
                                                    const ReproduceOptions& opts = {});

}  // namespace kerrsim
