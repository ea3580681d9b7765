// diagnostics.cpp

#include "qedchain/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qedchain {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::periodic: return "periodic";
        case Regime::quasiperiodic: return "quasiperiodic";
        case Regime::broadband: return "broadband";
    }
    return "unknown";
}

Eigen::VectorXd to_real_coordinates(const MeanFieldState& mf) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(3 * mf.n_sites() + 2 * mf.a.size() + 2 * mf.b.size()));
    Eigen::Index p = 0;
    for (std::size_t l = 0; l < mf.n_sites(); ++l) {
        r[p++] = mf.s_minus[l].real();
        r[p++] = mf.s_minus[l].imag();
        r[p++] = mf.s_z[l];
    }
    for (const auto* v : {&mf.a, &mf.b})
        for (const cplx& z : *v) {
            r[p++] = z.real();
            r[p++] = z.imag();
        }
    return r;
}

MeanFieldState from_real_coordinates(const Eigen::VectorXd& r, std::size_t n_sites, std::size_t n_field,
                                     std::size_t n_phonon, double t) {
    if (static_cast<std::size_t>(r.size()) != 3 * n_sites + 2 * n_field + 2 * n_phonon)
        throw std::invalid_argument("from_real_coordinates: length does not match the layout");
    MeanFieldState mf;
    mf.time = t;
    Eigen::Index p = 0;
    for (std::size_t l = 0; l < n_sites; ++l) {
        const cplx m(r[p], r[p + 1]);
        mf.s_minus.push_back(m);
        mf.s_plus.push_back(std::conj(m));
        mf.s_z.push_back(r[p + 2]);
        p += 3;
    }
    for (std::size_t k = 0; k < n_field; ++k, p += 2) {
        mf.a.emplace_back(r[p], r[p + 1]);
        mf.a_conj.push_back(std::conj(mf.a.back()));
    }
    for (std::size_t q = 0; q < n_phonon; ++q, p += 2) {
        mf.b.emplace_back(r[p], r[p + 1]);
        mf.b_conj.push_back(std::conj(mf.b.back()));
    }
    return mf;
}

MeanFieldState mean_field_state_from_sample(const Sample& s) {
    MeanFieldState mf;
    mf.time = s.time;
    for (const auto& site : s.sites) {
        mf.s_minus.push_back(site.minus);
        mf.s_plus.push_back(std::conj(site.minus));
        mf.s_z.push_back(site.z);
    }
    for (const auto& m : s.field) {
        mf.a.push_back(m.amplitude);
        mf.a_conj.push_back(std::conj(m.amplitude));
    }
    for (const auto& m : s.phonons) {
        mf.b.push_back(m.amplitude);
        mf.b_conj.push_back(std::conj(m.amplitude));
    }
    return mf;
}

namespace {

struct LyapunovEstimate {
    double mean{0.0};
    double stderr_{0.0};
    std::size_t intervals{0};
};

// Reference and neighbour share one integration so both see the same step sequence.
LyapunovEstimate lyapunov(const MeanFieldState& start, const SystemParams& params, double t_end,
                          const DiagnosticsSettings& s) {
    const std::size_t ns = start.n_sites(), nf = start.a.size(), np = start.b.size();
    const double tau = s.renorm_interval;
    const auto intervals = static_cast<std::size_t>(std::floor((t_end - start.time) / tau + 1e-9));
    if (intervals < s.min_intervals)
        throw TrajectoryTooShort("volterra_diagnostics: span covers " + std::to_string(intervals) +
                                 " renormalization intervals, need " + std::to_string(s.min_intervals));

    Eigen::VectorXd ref = to_real_coordinates(start);
    const Eigen::Index m = ref.size();
    Eigen::VectorXd dir = Eigen::VectorXd::Ones(m).normalized();
    const double d0 = s.initial_separation;

    std::vector<double> rates;
    double t = start.time;
    for (std::size_t i = 0; i < intervals; ++i) {
        Vector y(2 * (ns * 3 + 2 * nf + 2 * np));
        const Vector a = pack(from_real_coordinates(ref, ns, nf, np, t));
        const Vector b = pack(from_real_coordinates(ref + d0 * dir, ns, nf, np, t));
        const Eigen::Index half = a.size();
        y << a, b;
        auto rhs = [&](double tt, const Vector& in, Vector& out) {
            out.resize(in.size());
            out.head(half) = pack(close_rhs(unpack(in.head(half), ns, nf, np, tt), params, tt));
            out.tail(half) = pack(close_rhs(unpack(in.tail(half), ns, nf, np, tt), params, tt));
        };
        const double span[2] = {t, t + tau};
        integrate_dopri5(rhs, y, span, s.integrator, [](double, const Vector&) {});
        t += tau;
        ref = to_real_coordinates(unpack(y.head(half), ns, nf, np, t));
        const Eigen::VectorXd sep = to_real_coordinates(unpack(y.tail(half), ns, nf, np, t)) - ref;
        const double d = sep.norm();
        rates.push_back(std::log(d / d0) / tau);
        if (d > 0.0) dir = sep / d;
    }
    LyapunovEstimate e;
    e.intervals = rates.size();
    e.mean = std::accumulate(rates.begin(), rates.end(), 0.0) / static_cast<double>(rates.size());
    double var = 0.0;
    for (double r : rates) var += (r - e.mean) * (r - e.mean);
    var /= static_cast<double>(rates.size() - 1);
    e.stderr_ = std::sqrt(var / static_cast<double>(rates.size()));
    return e;
}

}  // namespace

DiagnosticsReport volterra_diagnostics(const Trajectory& traj, const SystemParams& params, const DiagnosticsSettings& s) {
    if (traj.size() < s.min_samples)
        throw TrajectoryTooShort("volterra_diagnostics: " + std::to_string(traj.size()) + " records, need " +
                                 std::to_string(s.min_samples));
    DiagnosticsReport rep;
    const MeanFieldState start = mean_field_state_from_sample(traj.samples.front());
    const LyapunovEstimate ly = lyapunov(start, params, traj.samples.back().time, s);
    rep.lyapunov = ly.mean;
    rep.lyapunov_stderr = ly.stderr_;
    rep.intervals = ly.intervals;

    std::vector<std::string> cols = s.observables;
    if (cols.empty()) {
        const Sample& f = traj.samples.front();
        for (std::size_t l = 0; l < f.sites.size(); ++l) cols.push_back("s" + std::to_string(l) + "_minus_re");
        for (std::size_t k = 0; k < f.field.size(); ++k) cols.push_back("a" + std::to_string(k) + "_re");
        for (std::size_t q = 0; q < f.phonons.size(); ++q) cols.push_back("b" + std::to_string(q) + "_re");
    }
    SpectrumOptions opt;
    opt.window = Window::hann;
    opt.remove_mean = true;
    opt.relative_threshold = s.line_threshold;
    std::vector<double> lines;
    double bin = 0.0;
    for (const auto& c : cols) {
        ObservableDiagnostics od;
        od.observable = c;
        // A stationary series carries no spectral information; after mean removal only rounding noise is left.
        const auto v = traj.series(c);
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var /= static_cast<double>(v.size());
        if (var <= 1e-20 * (1.0 + mean * mean)) {
            rep.observables.push_back(std::move(od));
            continue;
        }
        const SpectrumResult sp = spectrum(traj, c, opt);
        bin = sp.bin_width;
        od.flatness = spectral_flatness(sp.power);
        for (const auto& pk : sp.peaks)
            if (pk.bin > 0) od.line_frequencies.push_back(pk.frequency);
        lines.insert(lines.end(), od.line_frequencies.begin(), od.line_frequencies.end());
        rep.max_flatness = std::max(rep.max_flatness, od.flatness);
        rep.observables.push_back(std::move(od));
    }

    if (!lines.empty()) {
        rep.fundamental = *std::min_element(lines.begin(), lines.end());
        for (double f : lines) {
            const double harmonic = std::max(1.0, std::round(f / rep.fundamental)) * rep.fundamental;
            rep.max_harmonic_offset = std::max(rep.max_harmonic_offset, std::abs(f - harmonic) / bin);
        }
    }

    if (rep.lyapunov - 2.0 * rep.lyapunov_stderr > s.lyapunov_threshold || rep.max_flatness > s.flatness_threshold)
        rep.regime = Regime::broadband;
    else if (rep.max_harmonic_offset > 1.5)
        rep.regime = Regime::quasiperiodic;
    else
        rep.regime = Regime::periodic;
    return rep;
}

}  // namespace qedchain
