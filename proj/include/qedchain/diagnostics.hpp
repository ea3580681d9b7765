// diagnostics.hpp: regime diagnostics for mean-field runs: Lyapunov growth and spectral content.

#pragma once

#include "qedchain/meanfield.hpp"
#include "qedchain/spectrum.hpp"

#include <string>
#include <vector>

namespace qedchain {

enum class Regime { periodic, quasiperiodic, broadband };
std::string to_string(Regime r);

struct DiagnosticsSettings {
    double renorm_interval{1.0};
    double initial_separation{1e-8};
    std::size_t min_intervals{4};
    std::size_t min_samples{16};
    // Columns to analyse; empty selects s{l}_minus_re, a{k}_re and b{q}_re.
    std::vector<std::string> observables;
    AdaptiveSettings integrator{};
    // Positive growth rate required for a broadband verdict, after subtracting two standard errors.
    double lyapunov_threshold{1e-3};
    double flatness_threshold{0.2};
    // Spectral lines below this fraction of the strongest line are ignored for the commensurability test.
    double line_threshold{1e-2};
};

struct ObservableDiagnostics {
    std::string observable;
    double flatness{0.0};
    std::vector<double> line_frequencies;
};

struct DiagnosticsReport {
    double lyapunov{0.0};
    double lyapunov_stderr{0.0};
    std::size_t intervals{0};
    double max_flatness{0.0};
    double fundamental{0.0};
    // Largest distance of a line from the nearest harmonic of the fundamental, in bins.
    double max_harmonic_offset{0.0};
    std::vector<ObservableDiagnostics> observables;
    Regime regime{Regime::periodic};
};

class TrajectoryTooShort : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The Lyapunov estimate restarts the closed flow from the trajectory's first record and follows a
// neighbour renormalized every renorm_interval; the spectral part uses the recorded series.
DiagnosticsReport volterra_diagnostics(const Trajectory& traj, const SystemParams& params,
                                       const DiagnosticsSettings& settings = {});

// Real coordinates of the closed flow: per site (Re s-, Im s-, sz), per mode (Re a, Im a), per phonon (Re b, Im b).
Eigen::VectorXd to_real_coordinates(const MeanFieldState& mf);
MeanFieldState from_real_coordinates(const Eigen::VectorXd& r, std::size_t n_sites, std::size_t n_field,
                                     std::size_t n_phonon, double t);

MeanFieldState mean_field_state_from_sample(const Sample& s);

}  // namespace qedchain
