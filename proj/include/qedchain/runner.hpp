// runner.hpp: task dispatch, persistence and report assembly.

#pragma once

#include "qedchain/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace qedchain {

struct RunOptions {
    std::filesystem::path out_dir{"out"};
    unsigned workers{1};
    std::optional<std::uint64_t> seed;  // overrides the config seed
    std::optional<Task> task;           // overrides the config task
    std::function<void(const std::string&)> log;  // verbose progress, may be empty
};

// Report layout: task, config_hash (hex), seed, checks [{name, measured, tolerance, comparison, pass}],
// results (task specific), files (relative to out_dir), timing {wall_seconds}. Everything except
// timing is a pure function of the config and seed.
struct RunReport {
    nlohmann::json body;
    bool passed() const;
    // The report without its timing block, for determinism comparisons.
    nlohmann::json without_timing() const;
};

class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Runs the task, writes trajectories and report.json into out_dir, and returns the report.
RunReport run(const RunConfig& config, const RunOptions& options);

}  // namespace qedchain
