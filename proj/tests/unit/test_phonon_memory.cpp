#include "qedchain/dynamics.hpp"
#include "qedchain/phonon_memory.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qedchain;

TEST(PhononMemory, SineKernelOfConstantHistory) {
    const double nu = 0.7;
    const auto h = SigmaZHistory::constant(1, 1.0, 20.0, 41);
    for (double t : {0.0, 0.3, 4.9, 13.25, 20.0})
        EXPECT_NEAR(sine_kernel_integral(h.times, h.sz[0], t, nu), (1.0 - std::cos(nu * t)) / nu, 1e-12) << t;
}

TEST(PhononMemory, RetardedIntegralExactForLinearHistory) {
    // f(t) = 2 - 0.5 t: ∫0^t f(t') e^{-i r (t - t')} dt' in closed form.
    const double r = 1.3, t = 3.7;
    std::vector<double> times{0.0, 1.0, 2.5, 4.0}, values;
    for (double x : times) values.push_back(2.0 - 0.5 * x);
    const cplx ir = kI * r;
    const cplx exact = 2.0 * (1.0 - std::exp(-ir * t)) / ir - 0.5 * (t / ir - (1.0 - std::exp(-ir * t)) / (ir * ir));
    EXPECT_NEAR(std::abs(retarded_integral(times, values, t, r) - exact), 0.0, 1e-13);
}

TEST(PhononMemory, SmallRateUsesSeries) {
    const auto h = SigmaZHistory::constant(1, 1.0, 1.0, 3);
    EXPECT_NEAR(sine_kernel_integral(h.times, h.sz[0], 1.0, 1e-9), 0.5e-9, 1e-18);
}

TEST(PhononMemory, MemoryFieldClosedForm) {
    SystemParams p = uniform_chain(2, 1.0, 0.0);
    p.phonon_modes.push_back({0.6, 0.1});
    const double s = -0.4, t = 7.3;
    const auto h = SigmaZHistory::constant(2, s, 10.0, 11, {0.0});
    const double expect = -2.0 * 0.1 * 0.1 * (2.0 * s) * (1.0 - std::cos(0.6 * t)) / 0.6;
    EXPECT_NEAR(phonon_memory_field(p, h, t), expect, 1e-13);
}

TEST(PhononMemory, ZeroLambdaAndMissingHistory) {
    SpaceSpec sp;
    sp.n_sites = 1;
    sp.phonon_modes.push_back({2});
    const SpaceIndex s(sp);
    SystemParams p = uniform_chain(1, 1.0, 0.0);
    p.phonon_modes.push_back({0.6, 0.0});
    const auto h = SigmaZHistory::constant(1, 1.0, 5.0, 6);
    EXPECT_EQ(frobenius_norm(phonon_memory_correction(s, p, 0, 2.0, h).minus), 0.0);
    EXPECT_THROW(phonon_memory_correction(s, p, 0, 2.0, SigmaZHistory{}), std::invalid_argument);
    EXPECT_THROW(retarded_integral(h.times, h.sz[0], 6.0, 1.0), std::invalid_argument);
}

TEST(PhononMemory, FormalAmplitudeTracksExactPhonon) {
    // Without field coupling sz is conserved, so the formal integral is exact for <b(t)>.
    SpaceSpec sp;
    sp.n_sites = 2;
    sp.phonon_modes.push_back({8});
    const SpaceIndex s(sp);
    SystemParams p = uniform_chain(2, 1.0, 0.05);
    p.phonon_modes.push_back({0.5, 0.07});
    InitialState init;
    init.sites = {{1.0, 0.0}, {2.5, 0.4}};
    init.phonons = {ModeState::coherent_state({0.3, -0.1})};
    PropagationSettings st;
    st.t_end = 12.0;
    st.output_dt = 0.05;
    st.integrator.rtol = 1e-12;
    st.integrator.atol = 1e-14;
    const Trajectory traj = propagate(s, p, product_state(s, init), st);
    const SigmaZHistory h = SigmaZHistory::from_trajectory(traj);
    double worst = 0.0;
    for (const auto& smp : traj.samples)
        worst = std::max(worst, std::abs(formal_phonon_amplitude(p, h, 0, smp.time) - smp.phonons[0].amplitude));
    // Only the truncated coherent amplitude and the integrator tolerance separate the two.
    EXPECT_LT(worst, 1e-6);
}
