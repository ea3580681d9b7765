#include "qedchain/dynamics.hpp"
#include "qedchain/meanfield.hpp"
#include "qedchain/rabi.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qedchain;

namespace {

// Single site (0, w0), drive at w with q = -A and alpha = -1, so Q = A.
SystemParams driven(double w0, double w, double A) {
    SystemParams p = uniform_chain(1, w0, 0.0);
    ClassicalDrive d;
    d.mode.omega = w;
    d.mode.amplitude = A;
    d.coherent_amplitude = -1.0;
    p.drives.push_back(d);
    return p;
}

}  // namespace

TEST(Rabi, ZeroDriveKeepsInversion) {
    const RabiOracle o(driven(1.0, 1.0, 0.0), {0.8, 0.0});
    EXPECT_NEAR(o.at(0.0).s_z, o.at(37.0).s_z, 1e-15);
}

TEST(Rabi, FullInversionAtHalfPeriod) {
    const RabiOracle o(driven(1.0, 1.0, 0.01), SiteState::lower());
    EXPECT_NEAR(o.rabi_frequency(), 0.02, 1e-15);
    EXPECT_NEAR(o.at(M_PI / 0.02).s_z, 1.0, 1e-12);
    EXPECT_NEAR(o.at(0.0).s_z, -1.0, 1e-15);
    EXPECT_NEAR(o.inversion_amplitude(), 1.0, 1e-15);
}

TEST(Rabi, DoublingAmplitudeHalvesPeriod) {
    const RabiOracle a(driven(1.0, 1.0, 0.005), SiteState::lower());
    const RabiOracle b(driven(1.0, 1.0, 0.01), SiteState::lower());
    EXPECT_NEAR(a.inversion_time(), 2.0 * b.inversion_time(), 1e-9);
}

TEST(Rabi, DetunedAmplitude) {
    const RabiOracle o(driven(1.0, 0.98, 0.01), SiteState::lower());
    const double expected = 0.02 * 0.02 / (0.02 * 0.02 + 0.02 * 0.02);
    EXPECT_NEAR(o.inversion_amplitude(), expected, 1e-12);
    EXPECT_NEAR(o.at(o.inversion_time()).s_z, -1.0 + 2.0 * expected, 1e-12);
}

TEST(Rabi, RefusesOutsideWindow) {
    EXPECT_THROW(RabiOracle(driven(1.0, 1.0, 0.2), SiteState::lower()), RabiRefused);
    EXPECT_THROW(RabiOracle(driven(1.0, 0.5, 0.01), SiteState::lower()), RabiRefused);
    SystemParams two = driven(1.0, 1.0, 0.01);
    two.site_energies.push_back({0.0, 1.0});
    two.dipole_p.push_back(1.0);
    try {
        RabiOracle o(two, SiteState::lower());
        FAIL() << "expected refusal";
    } catch (const RabiRefused& e) {
        bool named = false;
        for (const auto& r : e.reasons()) named = named || r.find("one site") != std::string::npos;
        EXPECT_TRUE(named) << e.what();
    }
}

TEST(Rabi, ExactPropagationMatchesIndependentSolver) {
    // scipy solve_ivp without rotating-wave approximation: sz(pi/W_R) = 0.999987499181 for Q = 0.005.
    SpaceSpec sp;
    sp.n_sites = 1;
    const SpaceIndex s(sp);
    const SystemParams p = driven(1.0, 1.0, 0.005);
    InitialState init;
    init.sites = {SiteState::lower()};
    PropagationSettings st;
    st.t_end = M_PI / 0.01;
    st.output_dt = st.t_end / 2.0;
    st.integrator.rtol = 1e-11;
    st.integrator.atol = 1e-13;
    const Trajectory t = propagate(s, p, product_state(s, init), st);
    EXPECT_NEAR(t.samples.back().sites[0].z, 0.999987499181, 1e-8);
    EXPECT_NEAR(t.samples[1].sites[0].z, -0.000011159187, 1e-8);
}

TEST(Rabi, MeanFieldFollowsOracle) {
    const SystemParams p = driven(1.0, 1.0, 0.005);
    const RabiOracle o(p, SiteState::lower());
    InitialState init;
    init.sites = {SiteState::lower()};
    MeanFieldSettings st;
    st.t_end = 2.0 * o.inversion_time();
    st.output_dt = 1.0;
    const Trajectory t = mf_propagate(mean_field_state(init, 1, 0, 0), p, st);
    for (const auto& smp : t.samples) EXPECT_NEAR(smp.sites[0].z, o.at(smp.time).s_z, 0.01);
}

TEST(Rabi, OracleTrajectoryConjugatePairs) {
    const RabiOracle o(driven(1.0, 1.01, 0.01), {1.0, 0.4});
    const std::vector<double> times{0.0, 10.0, 20.0};
    const Trajectory t = o.trajectory(times);
    for (const auto& s : t.samples) {
        EXPECT_EQ(s.sites[0].plus, std::conj(s.sites[0].minus));
        EXPECT_NEAR(s.sites[0].z * s.sites[0].z + 4.0 * std::norm(s.sites[0].minus), 1.0, 1e-12);
    }
}
