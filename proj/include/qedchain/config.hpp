// config.hpp: declarative JSON run configuration.

#pragma once

#include "qedchain/dynamics.hpp"
#include "qedchain/hamiltonian.hpp"
#include "qedchain/hilbert.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qedchain {

enum class Task { propagate, verify_eom, verify_compact, meanfield, compare, sweep };
std::string to_string(Task t);
std::optional<Task> parse_task(const std::string& name);

struct ChecksConfig {
    double time{0.0};            // evaluation time for operator identities
    int draws{0};                // extra seeded random parameter draws for verify_eom / verify_compact
    double eom_tolerance{1e-11};
    double compact_tolerance{1e-10};
    double control_threshold{1e-3};
    double norm_tolerance{1e-8};
    double energy_tolerance{1e-8};
    double bloch_tolerance{1e-8};
    double compare_tolerance{0.05};
    double compare_window{0.0};  // 0: the whole run
    std::vector<std::string> ehrenfest;
    double ehrenfest_tolerance{1e-5};
};

struct SweepAxis {
    std::string path;  // JSON pointer into the config document
    std::vector<double> values;
};

struct SweepConfig {
    Task task{Task::propagate};
    std::vector<SweepAxis> axes;
};

struct OutputConfig {
    std::string prefix{"trajectory"};
    bool csv{true};
    bool json{true};
};

struct RunConfig {
    nlohmann::json document;
    Task task{Task::propagate};
    std::uint64_t seed{0};
    SpaceSpec space;
    SystemParams system;
    InitialState initial;
    double t0{0.0};
    PropagationSettings propagation;
    ChecksConfig checks;
    std::optional<SweepConfig> sweep;
    OutputConfig output;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

// Throws ConfigError listing every problem found; parse errors carry line and column.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
RunConfig parse_config(const nlohmann::json& document);

// One derived config per point of the Cartesian product of the sweep axes, first axis slowest.
std::vector<RunConfig> expand_sweep(const RunConfig& config);

// 64-bit FNV-1a over the canonical serialization of the document.
std::uint64_t config_hash(const RunConfig& config);

}  // namespace qedchain
