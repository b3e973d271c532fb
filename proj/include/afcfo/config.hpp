#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "afcfo/channel_model.hpp"
#include "afcfo/ofdm_phy.hpp"
#include "afcfo/relay_chain.hpp"
#include "afcfo/snr_analysis.hpp"

namespace afcfo {

class ConfigError : public std::runtime_error {
public:
    enum class Kind { io, parse, unknown_key, invalid_value };

    ConfigError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

enum class SweepAxis { eps1, eps2, both_equal };
enum class RunMode { analytical, simulate, both };

[[nodiscard]] std::string_view to_string(SweepAxis a) noexcept;
[[nodiscard]] std::string_view to_string(RunMode m) noexcept;
[[nodiscard]] RunMode parse_run_mode(std::string_view name);

/// A relay branch as configured. Noise variances are per-subcarrier.
struct RelayConfig {
    PowerDelayProfile hop1;
    PowerDelayProfile hop2;
    double noise_relay = 0.1;
    double noise_dest = 0.1;
};

struct SweepSpec {
    std::vector<SweepAxis> axes{SweepAxis::eps1, SweepAxis::eps2};
    std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4};
    double fixed_eps1 = 0.0;  ///< eps1 while sweeping eps2
    double fixed_eps2 = 0.0;  ///< eps2 while sweeping eps1
};

/// Everything a run needs. Noise variances are per-subcarrier; each entry of
/// noise_scales multiplies all of them for one pass over the grid.
struct ExperimentConfig {
    std::string name = "custom";
    OfdmParams ofdm;
    PowerDelayProfile direct = PowerDelayProfile::flat(1.0);
    double noise_direct = 0.1;
    std::vector<RelayConfig> relays{RelayConfig{PowerDelayProfile::flat(1.0), PowerDelayProfile::flat(4.0)}};
    bool multi_relay = false;  ///< analytical column from the multi-relay sum
    std::vector<double> noise_scales{1.0};
    SweepSpec sweep;
    RelayGainConfig gain{GainMode::upa, 1.0, 2.0, 1.0, 1.0};
    long trials = 2000;
    std::uint64_t master_seed = 1;
    RunMode mode = RunMode::both;
    unsigned workers = 0;  ///< 0: hardware concurrency
    SensitivityVariant sensitivity = SensitivityVariant::chain_rule;

    /// Throws ConfigError(invalid_value) naming the key and value at fault.
    void validate() const;
};

[[nodiscard]] ExperimentConfig parse_config(std::string_view text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form; parse_config(to_json(cfg)) reproduces cfg.
[[nodiscard]] std::string to_json(const ExperimentConfig& cfg);

/// 64-bit FNV-1a of the canonical form, rendered as 16 hex digits.
[[nodiscard]] std::string config_digest(const ExperimentConfig& cfg);

struct Preset {
    std::string_view name;
    std::string_view description;
    std::string_view json;
};

[[nodiscard]] const std::vector<Preset>& presets();
[[nodiscard]] ExperimentConfig load_preset(std::string_view name);

/// A path to an existing file is loaded from disk; otherwise a preset name.
[[nodiscard]] ExperimentConfig resolve_config(const std::string& path_or_preset);

}  // namespace afcfo
