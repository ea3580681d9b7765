// sampling.hpp: seeded random parameter draws for property checks.
//
// Draws depend only on the seed and the call sequence: mt19937_64 output is fixed by the
// standard and the mapping to [0, 1) uses its top 53 bits, so no library distribution is involved.

#pragma once

#include "qedchain/dynamics.hpp"
#include "qedchain/hamiltonian.hpp"

#include <cstdint>
#include <random>

namespace qedchain {

struct DrawSpec {
    int n_sites{3};
    int n_field{1};
    int n_phonon{1};
    Boundary boundary{Boundary::open};
    CouplingMode coupling_mode{CouplingMode::static_phase_at_t0};
};

class ParameterSampler {
public:
    explicit ParameterSampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    double unit();
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Site splittings in [0.8, 1.5], J in [-0.3, 0.3], field amplitudes in [0.05, 0.3],
    // dipoles in [0.5, 1.5], overlaps in [-1, 1], phonon nu in [0.2, 0.8], lambda in [0.01, 0.2].
    SystemParams system(const DrawSpec& spec);
    // Random site angles, coherent amplitudes with |alpha| <= max_alpha.
    InitialState initial(const DrawSpec& spec, double max_alpha);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qedchain
