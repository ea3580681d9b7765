// trajectory.hpp: recorded observables shared by the exact and mean-field propagators.

#pragma once

#include "qedchain/hilbert.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qedchain {

struct SiteSample {
    cplx minus{0.0};
    cplx plus{0.0};
    double z{0.0};
};

struct ModeSample {
    cplx amplitude{0.0};
    double occupation{0.0};
    double top_population{0.0};
};

struct Sample {
    double time{0.0};
    std::vector<SiteSample> sites;
    std::vector<ModeSample> field;
    std::vector<ModeSample> phonons;
    double norm{1.0};
    double energy{0.0};
};

struct TrajectoryMeta {
    std::string source;  // "exact", "meanfield", "oracle"
    double max_norm_drift{0.0};
    double max_top_population{0.0};
    bool truncation_flagged{false};
    std::size_t accepted_steps{0};
    std::size_t rejected_steps{0};
    std::vector<std::string> warnings;
};

// Top-Fock population above which a run is flagged as truncation-limited.
inline constexpr double kTruncationFlagThreshold = 1e-6;

struct Trajectory {
    std::vector<Sample> samples;
    TrajectoryMeta meta;
    std::vector<Vector> states;  // filled only when the propagator is asked to keep states

    bool empty() const noexcept { return samples.empty(); }
    std::size_t size() const noexcept { return samples.size(); }
    std::vector<double> times() const;

    // Column layout: time; per site s{l}_minus_re, s{l}_minus_im, s{l}_plus_re, s{l}_plus_im, s{l}_z;
    // per field mode a{k}_re, a{k}_im, a{k}_n, a{k}_top; per phonon mode b{q}_re, b{q}_im, b{q}_n, b{q}_top;
    // norm; energy.
    std::vector<std::string> column_names() const;
    std::vector<double> row(std::size_t i) const;
    std::vector<double> series(std::string_view column) const;
};

std::vector<std::string> column_names(std::size_t n_sites, std::size_t n_field, std::size_t n_phonon);

// Uniform output grid t0, t0+dt, ..., ending exactly at t_end.
std::vector<double> uniform_grid(double t0, double t_end, double dt);

}  // namespace qedchain
