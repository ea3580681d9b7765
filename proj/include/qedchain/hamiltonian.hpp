// hamiltonian.hpp: system parameters and every Hamiltonian term of the chain–field–phonon model.
//
// Units: hbar = 1, all energies are angular frequencies.

#pragma once

#include "qedchain/hilbert.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qedchain {

enum class Boundary { open, periodic };

// literal_time_dependent keeps exp(-i w_k t) inside the coupling q_jk(t); in a Schrödinger-picture
// Hamiltonian that also contains the free field term this double-counts free evolution, so
// static_phase_at_t0 (phase frozen at t = 0) is the default.
enum class CouplingMode { literal_time_dependent, static_phase_at_t0 };

struct LevelPair {
    double lower{0.0};  // E_alpha
    double upper{1.0};  // E_beta
};

struct FieldMode {
    double omega{1.0};
    double wavevector{0.0};
    double amplitude{0.0};                     // field-strength scale of the mode
    std::vector<double> polarization_overlap;  // per site, e_k · e_P_j; empty means 1 everywhere
};

struct PhononMode {
    double nu{1.0};
    double lambda{0.0};
};

// A field mode replaced by a prescribed coherent c-number amplitude alpha·exp(-i w t).
struct ClassicalDrive {
    FieldMode mode;
    cplx coherent_amplitude{0.0};
};

struct SystemParams {
    std::vector<LevelPair> site_energies;
    // Isotropic exchange. The bond term is written J(s+s- + s-s+ + ½ szsz) + H.c., so the
    // coupling that actually appears in the Hamiltonian is 2J.
    double exchange_J{0.0};
    Boundary boundary{Boundary::open};
    std::vector<FieldMode> field_modes;
    std::vector<double> dipole_p;
    double lattice_spacing{1.0};
    std::vector<double> site_positions;  // empty: r_j = j * lattice_spacing, j = 0..n-1
    CouplingMode coupling_mode{CouplingMode::static_phase_at_t0};
    std::vector<PhononMode> phonon_modes;
    std::vector<ClassicalDrive> drives;

    int n_sites() const noexcept { return static_cast<int>(site_energies.size()); }
    double omega(int site) const;
    double position(int site) const;
    double exchange_effective() const noexcept { return 2.0 * exchange_J; }

    // Every violated invariant, including consistency with `space` when given.
    std::vector<std::string> validate(const SpaceIndex* space = nullptr) const;
};

// Uniform chain: every site gets levels (0, omega) and unit dipole.
SystemParams uniform_chain(int n_sites, double omega, double exchange_J);

// Nearest-neighbour bonds (i, j) for the boundary policy; periodic adds (n-1, 0) only for n >= 3.
std::vector<std::pair<int, int>> bonds(const SystemParams& params);
std::vector<int> neighbours(const SystemParams& params, int site);

// q_jk(t) = -p_j (e_k·e_Pj) E_k exp(-i w_k t + i k r_j); in static mode t is frozen at 0.
cplx coupling_q(const SystemParams& params, int site, const FieldMode& mode, double t);
cplx coupling_q(const SystemParams& params, int site, int mode, double t);

// Coherent amplitude of a classical drive at time t.
cplx drive_amplitude(const ClassicalDrive& d, double t);

// c-number field a classical drive exerts on a site: sum_d q_jd(t) alpha_d(t) + c.c.
double drive_field(const SystemParams& params, int site, double t);

Operator build_H0(const SpaceIndex& space, const SystemParams& params);
Operator build_HC(const SpaceIndex& space, const SystemParams& params);
Operator build_HCF(const SpaceIndex& space, const SystemParams& params, double t);
Operator build_HF(const SpaceIndex& space, const SystemParams& params);
Operator build_HP(const SpaceIndex& space, const SystemParams& params);
Operator build_HCP(const SpaceIndex& space, const SystemParams& params);
Operator build_HDrive(const SpaceIndex& space, const SystemParams& params, double t);
Operator build_total(const SpaceIndex& space, const SystemParams& params, double t);

// sum_k b_lk(t) with b_lk = q_lk a_k + a_k† q*_lk, plus the classical drive field as a multiple of I.
Operator field_coupling_operator(const SpaceIndex& space, const SystemParams& params, int site, double t);

// sum_q lambda_q (b_q + b_q†)
Operator phonon_displacement_sum(const SpaceIndex& space, const SystemParams& params);

// H(t) = H_static + sum_i [c_i(t) K_i + conj(c_i(t)) K_i†], assembled once and applied
// without forming the sum. Used by the propagator.
class TimeDependentHamiltonian {
public:
    TimeDependentHamiltonian(const SpaceIndex& space, const SystemParams& params);

    bool time_independent() const noexcept { return terms_.empty(); }
    Operator at(double t) const;
    void apply(double t, const Vector& in, Vector& out) const;
    std::size_t dimension() const noexcept { return static_.dimension(); }

private:
    struct Term {
        Operator k;
        Operator k_dag;
        cplx c0;       // c(t) = c0 exp(-i rate t)
        double rate;
    };
    Operator static_;
    std::vector<Term> terms_;
};

}  // namespace qedchain
