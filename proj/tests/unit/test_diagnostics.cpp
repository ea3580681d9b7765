#include "qedchain/diagnostics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qedchain;

namespace {

Trajectory run(const SystemParams& p, const InitialState& init, double t_end, double dt) {
    MeanFieldSettings st;
    st.t_end = t_end;
    st.output_dt = dt;
    return mf_propagate(mean_field_state(init, p.n_sites(), static_cast<int>(p.field_modes.size()),
                                         static_cast<int>(p.phonon_modes.size())),
                        p, st);
}

SystemParams site_and_free_mode(double w_site, double w_mode) {
    SystemParams p = uniform_chain(1, w_site, 0.0);
    p.dipole_p = {0.0};
    FieldMode m;
    m.omega = w_mode;
    m.amplitude = 0.1;
    p.field_modes.push_back(m);
    return p;
}

}  // namespace

TEST(Diagnostics, FreePrecessionIsPeriodic) {
    const SystemParams p = uniform_chain(1, 1.0, 0.0);
    InitialState init;
    init.sites = {{1.0, 0.0}};
    const DiagnosticsReport r = volterra_diagnostics(run(p, init, 200.0, 0.1), p);
    EXPECT_LE(r.lyapunov - 2.0 * r.lyapunov_stderr, 1e-6);
    EXPECT_LT(r.max_flatness, 0.05);
    EXPECT_EQ(r.regime, Regime::periodic);
}

TEST(Diagnostics, CommensurateLinearSystemIsPeriodic) {
    const SystemParams p = site_and_free_mode(1.0, 2.0);
    InitialState init;
    init.sites = {{1.0, 0.0}};
    init.field = {ModeState::coherent_state(0.5)};
    const DiagnosticsReport r = volterra_diagnostics(run(p, init, 300.0, 0.1), p);
    EXPECT_EQ(r.regime, Regime::periodic) << r.max_harmonic_offset;
}

TEST(Diagnostics, IncommensurateLinesAreQuasiperiodic) {
    const SystemParams p = site_and_free_mode(1.0, std::sqrt(2.0));
    InitialState init;
    init.sites = {{1.0, 0.0}};
    init.field = {ModeState::coherent_state(0.5)};
    const DiagnosticsReport r = volterra_diagnostics(run(p, init, 300.0, 0.1), p);
    EXPECT_EQ(r.regime, Regime::quasiperiodic) << r.max_harmonic_offset;
}

TEST(Diagnostics, StronglyDrivenChainEmitsClassification) {
    SystemParams p = uniform_chain(3, 1.0, 0.3);
    p.site_energies[1] = {0.0, 1.3};
    FieldMode m;
    m.omega = 1.1;
    m.amplitude = 0.4;
    p.field_modes.push_back(m);
    InitialState init;
    init.sites = {{1.0, 0.0}, {2.0, 1.0}, {0.3, 2.0}};
    init.field = {ModeState::coherent_state(2.0)};
    const DiagnosticsReport r = volterra_diagnostics(run(p, init, 200.0, 0.1), p);
    EXPECT_TRUE(std::isfinite(r.lyapunov));
    EXPECT_GT(r.intervals, 100u);
    EXPECT_FALSE(to_string(r.regime).empty());
}

TEST(Diagnostics, TooShortTrajectoryRejected) {
    const SystemParams p = uniform_chain(1, 1.0, 0.0);
    InitialState init;
    init.sites = {{1.0, 0.0}};
    EXPECT_THROW(volterra_diagnostics(run(p, init, 1.0, 0.5), p), TrajectoryTooShort);
    DiagnosticsSettings s;
    s.renorm_interval = 10.0;
    EXPECT_THROW(volterra_diagnostics(run(p, init, 20.0, 0.1), p, s), TrajectoryTooShort);
}

TEST(Diagnostics, RealCoordinatesRoundTrip) {
    InitialState init;
    init.sites = {{1.0, 0.5}, {2.0, -1.0}};
    init.field = {ModeState::coherent_state({0.3, 0.2})};
    const MeanFieldState mf = mean_field_state(init, 2, 1, 0);
    const MeanFieldState back = from_real_coordinates(to_real_coordinates(mf), 2, 1, 0, 0.0);
    EXPECT_EQ(back.s_minus, mf.s_minus);
    EXPECT_EQ(back.a_conj, mf.a_conj);
}
