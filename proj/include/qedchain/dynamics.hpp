// dynamics.hpp: exact Schrödinger-picture propagation and Ehrenfest consistency checks.

#pragma once

#include "qedchain/hamiltonian.hpp"
#include "qedchain/ode.hpp"
#include "qedchain/trajectory.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qedchain {

struct StateVector {
    Vector amplitudes;
    double time{0.0};
};

// Product-state preparation. Site: cos(theta/2)|alpha> + e^{i phi} sin(theta/2)|beta>.
struct SiteState {
    double theta{0.0};
    double phi{0.0};
    static SiteState lower() { return {0.0, 0.0}; }
    static SiteState upper() { return {3.14159265358979323846, 0.0}; }
};

// Fock state |n> or a coherent state truncated to the ladder and renormalized.
struct ModeState {
    enum class Kind { fock, coherent } kind{Kind::fock};
    int fock{0};
    cplx alpha{0.0};
    static ModeState vacuum() { return {}; }
    static ModeState number(int n) { return {Kind::fock, n, 0.0}; }
    static ModeState coherent_state(cplx a) { return {Kind::coherent, 0, a}; }
};

struct InitialState {
    std::vector<SiteState> sites;
    std::vector<ModeState> field;
    std::vector<ModeState> phonons;
};

Vector local_mode_state(const ModeState& m, int cutoff);
StateVector product_state(const SpaceIndex& space, const InitialState& init, double t0 = 0.0);

struct PropagationSettings {
    double t_end{1.0};
    double output_dt{0.1};
    AdaptiveSettings integrator{};
    bool keep_states{false};
    double norm_warning{1e-6};
};

// Integrates d psi/dt = -i H(t) psi and records observables on the uniform output grid.
Trajectory propagate(const SpaceIndex& space, const SystemParams& params, const StateVector& state,
                     const PropagationSettings& settings);

// Observable selector for Ehrenfest checks: "s-_l", "s+_l", "sz_l", "a_k", "a†_k"/"adag_k", "b_q", "bdag_q".
struct ObservableRef {
    enum class Kind { sigma_minus, sigma_plus, sigma_z, field_a, field_a_dag, phonon_b, phonon_b_dag } kind;
    int index{0};
};
ObservableRef parse_observable(std::string_view name);
std::string observable_name(const ObservableRef& ref);

Operator observable_operator(const SpaceIndex& space, const ObservableRef& ref);
Operator observable_rhs(const SpaceIndex& space, const SystemParams& params, const ObservableRef& ref, double t);

struct EhrenfestReport {
    std::string observable;
    double max_deviation{0.0};
    double worst_time{0.0};
    double step{0.0};
    // h^2/6 max|f'''| estimated from fourth-order differences of the recorded series.
    double truncation_bound{0.0};
    std::size_t points_checked{0};
    double tolerance{0.0};
    bool passed{false};
};

// Centered second-order difference of <O>(t) against <psi(t)|RHS_O(t)|psi(t)> on a trajectory
// that kept its states. Throws std::invalid_argument with fewer than 3 points, missing states,
// or a non-uniform grid.
EhrenfestReport ehrenfest_check(const Trajectory& traj, const SpaceIndex& space, const SystemParams& params,
                                const ObservableRef& observable, double tol);

}  // namespace qedchain
