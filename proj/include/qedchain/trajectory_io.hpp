// trajectory_io.hpp: CSV and JSON persistence of trajectories.
//
// CSV: one header row of column names (see Trajectory::column_names), one row per record,
// values printed with 17 significant digits. JSON: nested records mirroring Trajectory plus
// its metadata. Both formats read back bit-for-bit.

#pragma once

#include "qedchain/trajectory.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <stdexcept>

namespace qedchain {

enum class TrajectoryFormat { csv, json };

// Column counts used for the header when a trajectory has no records.
struct TrajectoryLayout {
    std::size_t n_sites{0};
    std::size_t n_field{0};
    std::size_t n_phonon{0};
};

class TrajectoryIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_csv(const Trajectory& traj, const TrajectoryLayout& empty_layout = {});
nlohmann::json to_json(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& text);
Trajectory trajectory_from_json(const nlohmann::json& j);

void export_trajectory(const Trajectory& traj, TrajectoryFormat format, const std::filesystem::path& path,
                       const TrajectoryLayout& empty_layout = {});
Trajectory import_trajectory(TrajectoryFormat format, const std::filesystem::path& path);

}  // namespace qedchain
