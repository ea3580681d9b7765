// phonon_memory.hpp: retarded (memory-kernel) form of the phonon terms in the s± equations.
//
// The phonon equation db/dt = -i nu b - i lambda sum_j sz_j integrates to
//   b(t) = b(0) e^{-i nu t} - i lambda sum_j ∫_0^t sz_j(t') e^{-i nu (t - t')} dt',
// so b + b† = 2 Re[b(0) e^{-i nu t}] - 2 lambda sum_j ∫_0^t sz_j(t') sin[nu (t - t')] dt'.
// Substituting into the instantaneous terms ±2i lambda (b + b†) s± gives the memory form,
// evaluated here on a recorded <sz> history.

#pragma once

#include "qedchain/heisenberg.hpp"
#include "qedchain/trajectory.hpp"

#include <span>
#include <vector>

namespace qedchain {

struct SigmaZHistory {
    std::vector<double> times;
    std::vector<std::vector<double>> sz;  // [site][time index]
    std::vector<cplx> b0;                 // <b_q(0)> per phonon mode

    static SigmaZHistory from_trajectory(const Trajectory& traj);
    static SigmaZHistory constant(std::size_t n_sites, double value, double t_end, std::size_t points,
                                  std::vector<cplx> b0 = {});
};

// ∫_0^t f(t') exp(-i rate (t - t')) dt' with f linear between grid points. Exact for
// piecewise-linear f; t must lie inside the recorded grid.
cplx retarded_integral(std::span<const double> times, std::span<const double> values, double t, double rate);

// ∫_0^t f(t') sin[nu (t - t')] dt'
double sine_kernel_integral(std::span<const double> times, std::span<const double> values, double t, double nu);

// Formally integrated <b_q(t)> from the history.
cplx formal_phonon_amplitude(const SystemParams& params, const SigmaZHistory& history, int mode, double t);

// Memory-path evaluation of the phonon terms: (-2i X_eff s-_l, +2i X_eff s+_l) with
// X_eff = sum_q lambda_q (b_q + b_q†) taken from the formal integral. Throws std::invalid_argument
// when the history is empty or does not cover t.
PhononCorrection phonon_memory_correction(const SpaceIndex& space, const SystemParams& params, int site, double t,
                                          const SigmaZHistory& history);

// c-number coefficient X_eff(t) used above.
double phonon_memory_field(const SystemParams& params, const SigmaZHistory& history, double t);

}  // namespace qedchain
