// meanfield.hpp: c-number closure of the operator equations of motion.
//
// Every operator is replaced by its expectation and every anticommutator {A, B} by
// 2<A><B> (through symmetric_product), which turns the site equations into a
// Landau–Lifshitz/Bloch precession about the c-number effective field.

#pragma once

#include "qedchain/dynamics.hpp"
#include "qedchain/hamiltonian.hpp"
#include "qedchain/trajectory.hpp"

#include <vector>

namespace qedchain {

struct MeanFieldState {
    std::vector<cplx> s_minus;
    std::vector<cplx> s_plus;
    std::vector<double> s_z;
    std::vector<cplx> a;
    std::vector<cplx> a_conj;
    std::vector<cplx> b;
    std::vector<cplx> b_conj;
    double time{0.0};

    std::size_t n_sites() const noexcept { return s_z.size(); }
    // (s_z)^2 + 4 s+ s-, conserved by the closed equations.
    double bloch_invariant(std::size_t site) const;
};

MeanFieldState mean_field_state(const InitialState& init, int n_sites, int n_field, int n_phonon, double t0 = 0.0);

// Time derivative of every closure variable; the returned struct's `time` is left at mf.time.
MeanFieldState close_rhs(const MeanFieldState& mf, const SystemParams& params, double t);

// c-number energy functional, the closure image of the total Hamiltonian.
double mean_field_energy(const MeanFieldState& mf, const SystemParams& params, double t);

// Flat complex packing used by the integrator: per site (s-, s+, sz), per mode (a, a*), per phonon (b, b*).
Vector pack(const MeanFieldState& mf);
MeanFieldState unpack(const Vector& y, std::size_t n_sites, std::size_t n_field, std::size_t n_phonon, double t);

Sample mean_field_sample(const MeanFieldState& mf, const SystemParams& params);

struct MeanFieldSettings {
    double t_end{1.0};
    double output_dt{0.1};
    AdaptiveSettings integrator{};
};

Trajectory mf_propagate(const MeanFieldState& mf, const SystemParams& params, const MeanFieldSettings& settings);

// Largest |I_l(t) - I_l(0)| over sites and records, I = (s_z)^2 + 4 s+ s-.
double max_bloch_drift(const Trajectory& traj);

}  // namespace qedchain
