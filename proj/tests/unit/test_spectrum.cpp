#include "qedchain/dynamics.hpp"
#include "qedchain/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qedchain;

namespace {

std::vector<double> grid(std::size_t n, double dt) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = dt * static_cast<double>(i);
    return t;
}

}  // namespace

TEST(Spectrum, SinglePeakAtPrecessionFrequency) {
    const double w = 1.37;
    const auto t = grid(4096, 0.05);
    std::vector<double> x;
    for (double ti : t) x.push_back(std::cos(w * ti + 0.3));
    const SpectrumResult r = power_spectrum(t, x);
    ASSERT_FALSE(r.peaks.empty());
    EXPECT_NEAR(r.peaks[0].frequency, w, r.bin_width);
    EXPECT_LT(r.parseval_mismatch, 0.01);
    EXPECT_GT(r.peaks[0].width, 0.0);
}

TEST(Spectrum, ConstantSeriesAllAtZero) {
    const auto t = grid(256, 0.1);
    const std::vector<double> x(256, 2.5);
    SpectrumOptions opt;
    opt.window = Window::rectangular;
    const SpectrumResult r = power_spectrum(t, x, opt);
    EXPECT_NEAR(r.power[0], 6.25, 1e-12);
    for (std::size_t k = 1; k < r.power.size(); ++k) EXPECT_LT(r.power[k], 1e-25);
    ASSERT_EQ(r.peaks.size(), 1u);
    EXPECT_EQ(r.peaks[0].bin, 0u);
}

TEST(Spectrum, ParsevalWithRectangularWindow) {
    const auto t = grid(1001, 0.01);
    std::vector<double> x;
    for (double ti : t) x.push_back(std::sin(3.0 * ti) + 0.3 * std::cos(17.0 * ti) + 0.1);
    SpectrumOptions opt;
    opt.window = Window::rectangular;
    const SpectrumResult r = power_spectrum(t, x, opt);
    double ms = 0.0;
    for (double v : x) ms += v * v;
    ms /= static_cast<double>(x.size());
    EXPECT_NEAR(r.mean_square, ms, 1e-12);
    EXPECT_LT(r.parseval_mismatch, 1e-12);
}

TEST(Spectrum, ArgmaxInvariantUnderRescaling) {
    const auto t = grid(2048, 0.07);
    std::vector<double> x, y;
    for (double ti : t) {
        x.push_back(std::cos(0.9 * ti));
        y.push_back(-40.0 * std::cos(0.9 * ti));
    }
    EXPECT_EQ(power_spectrum(t, x).peaks[0].bin, power_spectrum(t, y).peaks[0].bin);
}

TEST(Spectrum, NonUniformGridRefusedOrResampled) {
    auto t = grid(64, 0.1);
    t[10] += 0.03;
    const std::vector<double> x(64, 1.0);
    EXPECT_THROW(power_spectrum(t, x), NonUniformGrid);
    SpectrumOptions opt;
    opt.resample_nonuniform = true;
    EXPECT_NO_THROW(power_spectrum(t, x, opt));
}

TEST(Spectrum, ExchangeBeatSplitting) {
    // 4x4 exact diagonalization (numpy): s-_0 lines at 0.8 and 1.0 for w = 1, J = 0.05.
    SpaceSpec sp;
    sp.n_sites = 2;
    const SpaceIndex s(sp);
    const SystemParams p = uniform_chain(2, 1.0, 0.05);
    InitialState init;
    init.sites = {{M_PI / 2, 0.0}, SiteState::lower()};
    PropagationSettings st;
    st.t_end = 800.0;
    st.output_dt = 0.25;
    const Trajectory traj = propagate(s, p, product_state(s, init), st);
    const SpectrumResult r = spectrum(traj, "s0_minus_re");
    ASSERT_GE(r.peaks.size(), 2u);
    std::vector<double> f{r.peaks[0].frequency, r.peaks[1].frequency};
    std::sort(f.begin(), f.end());
    EXPECT_NEAR(f[0], 0.8, r.bin_width);
    EXPECT_NEAR(f[1], 1.0, r.bin_width);
    EXPECT_NEAR(f[1] - f[0], 4.0 * 0.05, r.bin_width);
}

TEST(Spectrum, FlatnessExtremes) {
    std::vector<double> line(100, 1e-20);
    line[10] = 1.0;
    EXPECT_LT(spectral_flatness(line), 1e-6);
    const std::vector<double> white(100, 1.0);
    EXPECT_NEAR(spectral_flatness(white), 1.0, 1e-12);
}
