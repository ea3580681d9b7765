#include "qedchain/meanfield.hpp"
#include "qedchain/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qedchain;

namespace {

// Two sites, one mode, one phonon, with couplings chosen to match the numpy reference run.
SystemParams reference_params() {
    SystemParams p = uniform_chain(2, 1.0, 0.07);
    p.site_energies[1] = {0.0, 1.2};
    const cplx q[2] = {{-0.08, 0.02}, {-0.05, -0.03}};
    FieldMode m;
    m.omega = 1.1;
    m.amplitude = 1.0;
    m.wavevector = 1.0;
    p.field_modes.push_back(m);
    p.site_positions.clear();
    for (int j = 0; j < 2; ++j) {
        p.dipole_p[j] = std::abs(q[j]);
        p.site_positions.push_back(std::arg(-q[j]));
    }
    p.phonon_modes.push_back({0.5, 0.04});
    return p;
}

MeanFieldState reference_state() {
    InitialState init;
    init.sites = {{0.7, 0.3}, {2.1, -1.0}};
    init.field = {ModeState::coherent_state({0.8, -0.4})};
    init.phonons = {ModeState::coherent_state({0.0, 0.2})};
    return mean_field_state(init, 2, 1, 1);
}

}  // namespace

TEST(MeanField, ReferenceCouplingsAreReproduced) {
    const SystemParams p = reference_params();
    EXPECT_NEAR(std::abs(coupling_q(p, 0, 0, 0.0) - cplx(-0.08, 0.02)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(coupling_q(p, 1, 0, 0.0) - cplx(-0.05, -0.03)), 0.0, 1e-15);
}

TEST(MeanField, MatchesIndependentOdeSolution) {
    // numpy/scipy DOP853 reference at t = 10.
    MeanFieldSettings st;
    st.t_end = 10.0;
    st.output_dt = 10.0;
    st.integrator.rtol = 1e-12;
    st.integrator.atol = 1e-14;
    const Trajectory t = mf_propagate(reference_state(), reference_params(), st);
    const Sample& s = t.samples.back();
    EXPECT_NEAR(std::abs(s.sites[0].minus - cplx(-0.37232864172418, 0.07148216533228)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(s.sites[1].minus - cplx(0.46106612733384, 0.13857040388176)), 0.0, 1e-9);
    EXPECT_NEAR(s.sites[0].z, -0.65195608008886, 1e-9);
    EXPECT_NEAR(s.sites[1].z, 0.26993532109278, 1e-9);
    EXPECT_NEAR(std::abs(s.field[0].amplitude - cplx(0.28285076260488, 0.81069254544141)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(s.phonons[0].amplitude - cplx(-0.17202160228387, 0.02977636279220)), 0.0, 1e-9);
}

TEST(MeanField, FreePrecessionRhs) {
    const SystemParams p = uniform_chain(1, 1.4, 0.0);
    InitialState init;
    init.sites = {{1.2, 0.5}};
    const MeanFieldState mf = mean_field_state(init, 1, 0, 0);
    const MeanFieldState d = close_rhs(mf, p, 0.0);
    EXPECT_NEAR(std::abs(d.s_minus[0] - cplx(0.0, -1.4) * mf.s_minus[0]), 0.0, 1e-15);
    EXPECT_EQ(d.s_z[0], 0.0);
}

TEST(MeanField, ExchangeOnlyConservesTotalInversion) {
    SystemParams p = uniform_chain(3, 1.0, 0.2);
    p.site_energies[2] = {0.0, 1.3};
    InitialState init;
    init.sites = {{0.4, 0.0}, {2.0, 1.0}, {1.1, -2.0}};
    MeanFieldSettings st;
    st.t_end = 50.0;
    st.output_dt = 1.0;
    const Trajectory t = mf_propagate(mean_field_state(init, 3, 0, 0), p, st);
    const auto total = [](const Sample& s) { return s.sites[0].z + s.sites[1].z + s.sites[2].z; };
    for (const auto& s : t.samples) EXPECT_NEAR(total(s), total(t.samples.front()), 1e-9);
}

TEST(MeanField, BlochLengthAndEnergyConserved) {
    ParameterSampler sampler(7);
    const DrawSpec spec{2, 1, 1, Boundary::open, CouplingMode::static_phase_at_t0};
    const SystemParams p = sampler.system(spec);
    const MeanFieldState mf = mean_field_state(sampler.initial(spec, 1.0), 2, 1, 1);
    MeanFieldSettings st;
    st.t_end = 100.0;
    st.output_dt = 0.5;
    const Trajectory t = mf_propagate(mf, p, st);
    EXPECT_LT(max_bloch_drift(t), 1e-8);
    for (const auto& s : t.samples) EXPECT_NEAR(s.energy, t.samples.front().energy, 1e-8);
}

TEST(MeanField, PackRoundTrip) {
    const MeanFieldState mf = reference_state();
    const MeanFieldState back = unpack(pack(mf), 2, 1, 1, 0.0);
    EXPECT_EQ(back.s_minus, mf.s_minus);
    EXPECT_EQ(back.s_z, mf.s_z);
    EXPECT_EQ(back.b_conj, mf.b_conj);
    EXPECT_THROW(unpack(pack(mf), 3, 1, 1, 0.0), std::invalid_argument);
}

TEST(MeanField, ShapeMismatchRejected) {
    EXPECT_THROW(close_rhs(reference_state(), uniform_chain(2, 1.0, 0.0), 0.0), std::invalid_argument);
}

TEST(MeanField, InitialStateFromAngles) {
    InitialState init;
    init.sites = {SiteState::upper()};
    const MeanFieldState mf = mean_field_state(init, 1, 0, 0);
    EXPECT_NEAR(mf.s_z[0], 1.0, 1e-15);
    EXPECT_NEAR(std::abs(mf.s_minus[0]), 0.0, 1e-15);
    EXPECT_NEAR(mf.bloch_invariant(0), 1.0, 1e-15);
}
