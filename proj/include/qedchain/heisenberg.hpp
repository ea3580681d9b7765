// heisenberg.hpp: operator-valued right-hand sides of the Heisenberg equations of motion,
// the effective-field G-vector, and the compact vector form.
//
// All right-hand sides are written out term by term (anticommutator form), independently of
// the Hamiltonian builders, so that comparing them against i[H, O] is a genuine check.

#pragma once

#include "qedchain/hamiltonian.hpp"
#include "qedchain/transition_ops.hpp"

#include <utility>

namespace qedchain {

// d(sigma_l)/dt as the triple (d s-/dt, d s+/dt, d sz/dt), boundary policy applied.
// With B_l = sum_k (q_lk a_k + a_k† q*_lk) + drive, N^x = sum over neighbours of s^x, X = sum_q lambda_q (b_q + b_q†):
//   d sz/dt = 2i (s- - s+) B_l + 2iJ ({s-, N+} - {s+, N-})
//   d s+/dt = i w s+ - i sz B_l + iJ ({s+, Nz} - {sz, N+}) + 2i X s+
//   d s-/dt = -i w s- + i sz B_l + iJ ({sz, N-} - {s-, Nz}) - 2i X s-
OpVector heisenberg_rhs_sigma(const SpaceIndex& space, const SystemParams& params, int site, double t);

// (da_k/dt, da_k†/dt): da/dt = -i w_k a_k - i sum_j (s+_j + s-_j) q*_jk.
std::pair<Operator, Operator> heisenberg_rhs_field(const SpaceIndex& space, const SystemParams& params, int mode,
                                                   double t);

// (db_q/dt, db_q†/dt): db/dt = -i nu_q b_q - i sum_j lambda_q sz_j.
std::pair<Operator, Operator> heisenberg_rhs_phonon(const SpaceIndex& space, const SystemParams& params, int mode);

// Phonon-coupling part of the s- and s+ equations, instantaneous form: (-2i X s-, +2i X s+).
struct PhononCorrection {
    Operator minus;
    Operator plus;
};
PhononCorrection sigma_phonon_correction(const SpaceIndex& space, const SystemParams& params, int site);

// i[H, O]
Operator commutator_rhs(const Operator& hamiltonian, const Operator& observable);

// G-vector of site l:
//   G- = -B_l - J_eff N-,  G+ = -B_l - J_eff N+,  Gz = -w_l - J_eff Nz - 2X
// with J_eff = 2J, the exchange coupling the Hamiltonian actually carries. The phonon term
// extends the z component so the compact form also holds with phonons.
OpVector build_G_vector(const SpaceIndex& space, const SystemParams& params, int site, double t);

// 2 g [sigma (x) G]
OpVector compact_form_rhs(const SpaceIndex& space, const SystemParams& params, int site, double t,
                          const Metric& metric = kTransitionMetric);

// max over components of ||compact - rhs||_F.
double verify_compact_form(const SpaceIndex& space, const SystemParams& params, int site, double t,
                           const Metric& metric = kTransitionMetric);

// Residuals of every equation against the commutator at time t. Sigma residuals are taken on
// the full space. Field and phonon residuals are taken on states with no bosonic mode at its
// top Fock level (columns of the interior projector), where the truncated ladder still obeys
// [a, a†] = 1.
struct EomResiduals {
    std::vector<std::array<double, 3>> sigma;        // per site (minus, plus, z)
    std::vector<std::array<double, 2>> field;        // per mode (a, a†)
    std::vector<std::array<double, 2>> phonon;       // per mode (b, b†)
    std::vector<std::array<double, 2>> phonon_term;  // per site, direct correction vs i[HCP, s±]
    std::vector<double> conjugation;                 // per site, ||(ds-/dt)† - ds+/dt||_F
    double max_sigma() const;
    double max_bosonic() const;
    double max_phonon_term() const;
    double max() const;
};

EomResiduals verify_eom(const SpaceIndex& space, const SystemParams& params, double t);

}  // namespace qedchain
